"""Numba batch kernels mirroring the pure-Python samplers bit for bit.

Every kernel takes the packed generator state ``st`` (uint64[5]: generator
state, buffered word, bits left in buffer, bits consumed, PRNG calls) and
mutates it exactly as :class:`loadeddice.bit_source.BitSource` would.
All table arithmetic is int64; callers route instances with m >= 2**62 to
the Python path.
"""

import numpy as np
from numba import njit

GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX1 = np.uint64(0xBF58476D1CE4E5B9)
MIX2 = np.uint64(0x94D049BB133111EB)

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U64 = np.uint64(64)

ST_GEN, ST_BUF, ST_POS, ST_BITS, ST_CALLS = range(5)


@njit(cache=True, nogil=True)
def splitmix64_next(st):
    st[0] += GAMMA
    z = st[0]
    z = (z ^ (z >> np.uint64(30))) * MIX1
    z = (z ^ (z >> np.uint64(27))) * MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True, nogil=True, inline="always")
def _flip(st):
    if st[2] == _U0:
        st[1] = splitmix64_next(st)
        st[2] = _U64
        st[4] += _U1
    st[2] -= _U1
    st[3] += _U1
    return np.int64((st[1] >> st[2]) & _U1)


@njit(cache=True, nogil=True, inline="always")
def _fdr(n, st):
    if n == 1:
        return np.int64(1)
    v = np.int64(1)
    c = np.int64(0)
    while True:
        v = 2 * v
        c = 2 * c + _flip(st)
        if v >= n:
            if c < n:
                return c + 1
            v -= n
            c -= n


@njit(cache=True, nogil=True, inline="always")
def _bernoulli(a, b, st):
    if a == 0:
        return np.int64(0)
    if a == b:
        return np.int64(1)
    while True:
        a = 2 * a
        digit = np.int64(1) if a >= b else np.int64(0)
        a -= b * digit
        f = _flip(st)
        if f < digit:
            return np.int64(1)
        if f > digit:
            return np.int64(0)
        if a == 0:
            return np.int64(0)


@njit(cache=True, nogil=True)
def ddg_sample_many(h, H, n, back_col, st, out):
    # h[c]: leaves in column c; H[d, c]: label of d-th leaf; labels > n restart.
    k = h.shape[0]
    for s in range(out.shape[0]):
        d = np.int64(0)
        c = np.int64(0)
        while True:
            b = _flip(st)
            d = 2 * d + (1 - b)
            if d < h[c]:
                label = np.int64(H[d, c])
                if label <= n:
                    out[s] = label
                    break
                d = 0
                c = 0
            else:
                d -= h[c]
                c += 1
                if c == k:
                    c = back_col


@njit(cache=True, nogil=True)
def rejection_uniform_many(weights, D, st, out):
    n = weights.shape[0]
    for s in range(out.shape[0]):
        while True:
            i = _fdr(n, st)
            if _bernoulli(weights[i - 1], D, st) == 1:
                out[s] = i
                break


@njit(cache=True, nogil=True)
def lookup_many(T, k, st, out):
    m = T.shape[0]
    for s in range(out.shape[0]):
        while True:
            w = np.int64(0)
            for _ in range(k):
                w = 2 * w + _flip(st)
            if w < m:
                out[s] = T[w]
                break


@njit(cache=True, nogil=True)
def binsearch_many(T, k, st, out):
    n = T.shape[0]
    m = T[n - 1]
    for s in range(out.shape[0]):
        while True:
            w = np.int64(0)
            for _ in range(k):
                w = 2 * w + _flip(st)
            if w < m:
                lo = 0
                hi = n - 1
                while lo < hi:
                    mid = (lo + hi) // 2
                    if w < T[mid]:
                        hi = mid
                    else:
                        lo = mid + 1
                out[s] = lo + 1
                break


@njit(cache=True, nogil=True)
def alias_many(keep, alias, m, st, out):
    n = keep.shape[0]
    for s in range(out.shape[0]):
        u = _fdr(n, st)
        if _bernoulli(keep[u - 1], m, st) == 1:
            out[s] = u
        else:
            out[s] = alias[u - 1]


@njit(cache=True, nogil=True)
def flip_many(st, out):
    for s in range(out.shape[0]):
        out[s] = _flip(st)
