"""Uniform front end over all samplers: build by name, draw one or many.

``sample_many`` runs a numba kernel when the source is a generator-backed
BitSource and every table value fits in int64 arithmetic; otherwise it
falls back to the scalar Python sampler. Both paths consume identical bits.

Memory is reported from the arrays each sampler keeps, in bytes:
  fldr           h: 8k, H: 4(n+1)k
  ky             h: 8k, H: 4*max(h)*k
  rej-uniform    weights: 8n, D: 8
  rej-lookup     T: 4m
  rej-binsearch  T: 8n
  alias          keep: 8n, alias: 4n
"""

import time

import numpy as np

from . import _kernels
from .baselines import (
    DEFAULT_MAX_LOOKUP_ENTRIES,
    alias_build,
    alias_sample,
    cumulative_build,
    cumulative_sample,
    lookup_build,
    lookup_sample,
    rejection_uniform_sample,
)
from .ddg import ky_construct, ky_sample
from .fldr import fldr_preprocess, fldr_sample

SAMPLER_NAMES = ("fldr", "ky", "rej-uniform", "rej-lookup", "rej-binsearch", "alias")

KERNEL_LIMIT = 1 << 62


class Sampler:
    name = None

    def __init__(self, dist, table):
        self.dist = dist
        self.table = table
        self.preprocess_ns = 0

    def sample(self, source):
        raise NotImplementedError

    def memory_bytes(self):
        raise NotImplementedError

    def _kernel(self):
        """(kernel, args) for the batch path, or None to force the Python loop."""
        return None

    def sample_many(self, source, N):
        out = np.empty(N, dtype=np.int64)
        kernel = self._kernel() if source.supports_kernels and self.dist.m < KERNEL_LIMIT else None
        if kernel is None:
            for s in range(N):
                out[s] = self.sample(source)
            return out
        fn, args = kernel
        st = source.export_state()
        fn(*args, st, out)
        source.import_state(st)
        return out

    def __repr__(self):
        return f"<{self.name} sampler n={self.dist.n} m={self.dist.m}>"


class FldrSampler(Sampler):
    name = "fldr"

    @classmethod
    def build(cls, dist):
        return cls(dist, fldr_preprocess(dist))

    def sample(self, source):
        return fldr_sample(self.table, source)

    def memory_bytes(self):
        return 8 * self.table.k + 4 * (self.table.n + 1) * self.table.k

    def _kernel(self):
        t = self.table
        if t.k == 0:
            return None
        return _kernels.ddg_sample_many, (t.h, t.H, t.n, 0)


class KySampler(Sampler):
    name = "ky"

    @classmethod
    def build(cls, dist):
        s = cls(dist, ky_construct(dist))
        s._arrays = s.table.walk_arrays() if s.table.depth else None
        return s

    def sample(self, source):
        return ky_sample(self.table, source)

    def memory_bytes(self):
        if self._arrays is None:
            return 0
        h, H = self._arrays
        return h.nbytes + H.nbytes

    def _kernel(self):
        if self._arrays is None:
            return None
        h, H = self._arrays
        return _kernels.ddg_sample_many, (h, H, self.table.n, self.table.back_level)


class RejectionUniformSampler(Sampler):
    name = "rej-uniform"

    @classmethod
    def build(cls, dist):
        s = cls(dist, max(dist.weights))
        s._weights = np.array(dist.weights, dtype=np.int64) if dist.m < KERNEL_LIMIT else None
        return s

    def sample(self, source):
        return rejection_uniform_sample(self.dist, source, D=self.table)

    def memory_bytes(self):
        return 8 * self.dist.n + 8

    def _kernel(self):
        return _kernels.rejection_uniform_many, (self._weights, self.table)


class LookupSampler(Sampler):
    name = "rej-lookup"

    @classmethod
    def build(cls, dist, max_entries=DEFAULT_MAX_LOOKUP_ENTRIES):
        return cls(dist, lookup_build(dist, max_entries))

    def sample(self, source):
        return lookup_sample(self.table, source)

    def memory_bytes(self):
        return self.table.T.nbytes

    def _kernel(self):
        return _kernels.lookup_many, (self.table.T, self.table.k)


class BinarySearchSampler(Sampler):
    name = "rej-binsearch"

    @classmethod
    def build(cls, dist):
        s = cls(dist, cumulative_build(dist))
        s._T = np.array(s.table.T, dtype=np.int64) if dist.m < KERNEL_LIMIT else None
        return s

    def sample(self, source):
        return cumulative_sample(self.table, source)

    def memory_bytes(self):
        return 8 * self.dist.n

    def _kernel(self):
        return _kernels.binsearch_many, (self._T, self.table.k)


class AliasSampler(Sampler):
    name = "alias"

    @classmethod
    def build(cls, dist):
        s = cls(dist, alias_build(dist))
        if dist.m < KERNEL_LIMIT:
            s._keep = np.array(s.table.keep, dtype=np.int64)
            s._alias = np.array(s.table.alias, dtype=np.int64)
        return s

    def sample(self, source):
        return alias_sample(self.table, source)

    def memory_bytes(self):
        return 12 * self.dist.n

    def _kernel(self):
        return _kernels.alias_many, (self._keep, self._alias, self.table.m)


SAMPLERS = {
    cls.name: cls
    for cls in (
        FldrSampler,
        KySampler,
        RejectionUniformSampler,
        LookupSampler,
        BinarySearchSampler,
        AliasSampler,
    )
}


def build_sampler(name, dist, **options):
    try:
        cls = SAMPLERS[name]
    except KeyError:
        raise ValueError(f"unknown sampler {name!r}; choose from {', '.join(SAMPLER_NAMES)}") from None
    t0 = time.perf_counter_ns()
    sampler = cls.build(dist, **options)
    sampler.preprocess_ns = time.perf_counter_ns() - t0
    return sampler
