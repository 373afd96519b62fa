"""Comparison samplers in the random-bit model.

Uniform-proposal rejection, dyadic-proposal rejection (lookup table and
binary search), and an integer alias table. The uniform and Bernoulli
primitives they rely on are the Fast Dice Roller and a lazy
comparison against the binary expansion of a/b.
"""

import bisect
from dataclasses import dataclass, field

import numpy as np

DEFAULT_MAX_LOOKUP_ENTRIES = 1 << 28


class TableSizeError(MemoryError):
    pass


def fast_dice_roller(n, source):
    """Uniform integer in 1..n from fair flips, entropy-optimal for uniforms."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return 1
    v, c = 1, 0
    while True:
        v = 2 * v
        c = 2 * c + source.flip()
        if v >= n:
            if c < n:
                return c + 1
            v -= n
            c -= n


def bernoulli(a, b, source):
    """1 with probability exactly a/b.

    Flips form a uniform U = 0.f1 f2 ... digit by digit and the result is
    [U < a/b]. Once the flips have matched a terminating expansion of a/b,
    U can only be larger, so the answer is 0 without further flips.
    """
    if not 0 <= a <= b or b < 1:
        raise ValueError(f"need 0 <= a <= b and b >= 1, got a={a}, b={b}")
    if a == 0:
        return 0
    if a == b:
        return 1
    while True:
        a = 2 * a
        digit = 1 if a >= b else 0
        a -= b * digit
        f = source.flip()
        if f < digit:
            return 1
        if f > digit:
            return 0
        if a == 0:
            return 0


def draw_bits(k, source):
    w = 0
    for _ in range(k):
        w = 2 * w + source.flip()
    return w


def rejection_uniform_sample(dist, source, D=None):
    """Propose i uniformly, accept with probability a_i / max(a)."""
    if D is None:
        D = max(dist.weights)
    while True:
        i = fast_dice_roller(dist.n, source)
        if bernoulli(dist.weights[i - 1], D, source):
            return i


@dataclass(frozen=True, eq=False)
class LookupTable:
    k: int
    T: np.ndarray = field(repr=False)

    @property
    def m(self):
        return len(self.T)


def lookup_build(dist, max_entries=DEFAULT_MAX_LOOKUP_ENTRIES):
    if dist.m > max_entries:
        raise TableSizeError(f"lookup table needs {dist.m} entries, cap is {max_entries}")
    T = np.repeat(np.arange(1, dist.n + 1, dtype=np.int32), dist.weights)
    return LookupTable(k=(dist.m - 1).bit_length(), T=T)


def lookup_sample(table, source):
    m = table.m
    while True:
        w = draw_bits(table.k, source)
        if w < m:
            return int(table.T[w])


@dataclass(frozen=True)
class CumulativeTable:
    k: int
    T: tuple

    @property
    def m(self):
        return self.T[-1]


def cumulative_build(dist):
    T = []
    total = 0
    for a in dist.weights:
        total += a
        T.append(total)
    return CumulativeTable(k=(dist.m - 1).bit_length(), T=tuple(T))


def cumulative_sample(table, source):
    m = table.m
    while True:
        w = draw_bits(table.k, source)
        if w < m:
            return bisect.bisect_right(table.T, w) + 1


@dataclass(frozen=True)
class AliasTable:
    """Bucket u keeps outcome u with probability keep[u-1]/m, else yields alias[u-1]."""

    n: int
    m: int
    keep: tuple
    alias: tuple


def alias_build(dist):
    """Integer small/large worklist over scaled weights n*a_i with bucket capacity m."""
    n, m = dist.n, dist.m
    mass = [n * a for a in dist.weights]
    keep = [m] * n
    alias = list(range(1, n + 1))
    small = [i for i in range(n) if mass[i] < m]
    large = [i for i in range(n) if mass[i] >= m]
    while small and large:
        s = small.pop()
        g = large.pop()
        keep[s] = mass[s]
        alias[s] = g + 1
        mass[g] -= m - mass[s]
        if mass[g] < m:
            small.append(g)
        else:
            large.append(g)
    # leftovers hold exactly m each; integer arithmetic leaves no residue
    for i in small + large:
        assert mass[i] == m
        keep[i] = m
    return AliasTable(n=n, m=m, keep=tuple(keep), alias=tuple(alias))


def alias_sample(table, source):
    u = fast_dice_roller(table.n, source)
    if bernoulli(table.keep[u - 1], table.m, source):
        return u
    return table.alias[u - 1]


def alias_reconstruct(table):
    """Total scaled mass n*a_i that the table assigns to each outcome."""
    mass = list(table.keep)
    for u in range(table.n):
        if table.keep[u] < table.m:
            mass[table.alias[u] - 1] += table.m - table.keep[u]
    return mass
