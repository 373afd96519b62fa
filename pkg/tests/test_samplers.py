import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loadeddice.baselines import TableSizeError
from loadeddice.bit_source import BitSource, ReplayBitSource
from loadeddice.distribution import WeightedDistribution
from loadeddice.fldr import node_bound
from loadeddice.samplers import SAMPLER_NAMES, SAMPLERS, build_sampler

D = WeightedDistribution

DISTS = [(1, 1), (1, 4), (3, 7), (2, 1, 1), (5, 5, 2), (1, 2, 3, 4, 5, 6, 7, 8, 9), (7,), (1, 10**9)]


def python_source(seed):
    src = BitSource(seed)
    src.supports_kernels = False
    return src


def test_registry():
    assert tuple(SAMPLERS) == SAMPLER_NAMES
    with pytest.raises(ValueError):
        build_sampler("nope", D((1, 1)))


@pytest.mark.parametrize("name", SAMPLER_NAMES)
@pytest.mark.parametrize("w", DISTS)
def test_kernel_matches_python(name, w):
    if name == "rej-lookup" and sum(w) > 10**6:
        pytest.skip("table too large for a unit test")
    s = build_sampler(name, D(w))
    fast, slow = BitSource(17), python_source(17)
    fast.flip()
    slow.flip()
    a = s.sample_many(fast, 3000)
    b = s.sample_many(slow, 3000)
    assert a.tolist() == b.tolist()
    assert (fast.bits_consumed, fast.prng_calls, fast.buffer_pos, fast.buffer) == (
        slow.bits_consumed,
        slow.prng_calls,
        slow.buffer_pos,
        slow.buffer,
    )
    # and the batch continues exactly where scalar draws would
    assert s.sample(fast) == s.sample(slow)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 2**20), min_size=1, max_size=30), st.sampled_from(SAMPLER_NAMES))
def test_kernel_matches_python_random(w, name):
    s = build_sampler(name, D(w))
    assert s.sample_many(BitSource(3), 200).tolist() == s.sample_many(python_source(3), 200).tolist()


def test_replay_source_uses_python_path():
    s = build_sampler("fldr", D((1, 4)))
    assert s.sample_many(ReplayBitSource([1, 1, 0, 0, 1]), 3).tolist() == [2, 2, 1]


def test_memory_formulas():
    d = D((1, 4))
    mem = {name: build_sampler(name, d).memory_bytes() for name in SAMPLER_NAMES}
    assert mem["fldr"] == 8 * 3 + 4 * 3 * 3
    assert mem["rej-uniform"] == 8 * 2 + 8
    assert mem["rej-lookup"] == 4 * 5
    assert mem["rej-binsearch"] == 8 * 2
    assert mem["alias"] == 12 * 2
    ky = build_sampler("ky", d)
    h, H = ky.table.walk_arrays()
    assert mem["ky"] == h.nbytes + H.nbytes
    assert build_sampler("ky", D((3,))).memory_bytes() == 0


def test_lookup_memory_dwarfs_fldr():
    d = D(tuple(range(1, 101)) + (40000 - 5050,))
    fl, lk = build_sampler("fldr", d), build_sampler("rej-lookup", d)
    assert lk.memory_bytes() > 10 * fl.memory_bytes()
    assert 2 * fl.table.leaf_count - 1 <= node_bound(d.n, d.m)


def test_lookup_cap_option():
    with pytest.raises(TableSizeError):
        build_sampler("rej-lookup", D((1, 5000)), max_entries=4096)


def test_preprocess_time_recorded():
    for name in SAMPLER_NAMES:
        s = build_sampler(name, D((3, 7, 11)))
        assert s.preprocess_ns >= 0


def test_single_outcome():
    for name in SAMPLER_NAMES:
        s = build_sampler(name, D((5,)))
        assert np.all(s.sample_many(BitSource(), 50) == 1)
