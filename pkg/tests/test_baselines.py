import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import enumerate_paths

from loadeddice.baselines import (
    TableSizeError,
    alias_build,
    alias_reconstruct,
    alias_sample,
    bernoulli,
    cumulative_build,
    cumulative_sample,
    fast_dice_roller,
    lookup_build,
    lookup_sample,
    rejection_uniform_sample,
)
from loadeddice.bit_source import BitSource, ReplayBitSource
from loadeddice.distribution import WeightedDistribution
from loadeddice.samplers import build_sampler

D = WeightedDistribution
weights = st.lists(st.integers(1, 500), min_size=1, max_size=20)


def replay(fn, bits):
    src = ReplayBitSource(bits)
    return fn(src), src.cursor


def bracket(sample, target, max_bits):
    """Finished masses from exhaustive enumeration must undershoot target by at most the unfinished mass."""
    done, unfinished = enumerate_paths(sample, max_bits)
    out = {}
    for (label, _), w in done.items():
        out[label] = out.get(label, Fraction(0)) + w
    for label, p in target.items():
        got = out.get(label, Fraction(0))
        assert got <= p <= got + unfinished, (label, got, p, unfinished)
    assert set(out) <= set(target)
    return unfinished


def test_fdr_trivial_cases():
    assert replay(lambda s: fast_dice_roller(1, s), []) == (1, 0)
    assert {replay(lambda s: fast_dice_roller(2, s), [b]) for b in (0, 1)} == {(1, 1), (2, 1)}
    with pytest.raises(ValueError):
        fast_dice_roller(0, BitSource())


@pytest.mark.parametrize("n", [2, 3, 5, 6, 7, 10])
def test_fdr_exact_by_enumeration(n):
    unfinished = bracket(lambda s: fast_dice_roller(n, s), {i: Fraction(1, n) for i in range(1, n + 1)}, 24)
    assert unfinished < Fraction(1, 1000)


def test_fdr_frequencies():
    src = BitSource(3)
    counts = np.bincount([fast_dice_roller(3, src) for _ in range(200_000)], minlength=4)[1:]
    # 5 sigma at 2e5 draws
    assert np.all(np.abs(counts / 200_000 - 1 / 3) <= 0.0053)
    assert src.bits_consumed / 200_000 < math.log2(3) + 2


def test_bernoulli_trivial_cases():
    assert replay(lambda s: bernoulli(0, 7, s), []) == (0, 0)
    assert replay(lambda s: bernoulli(7, 7, s), []) == (1, 0)
    assert {replay(lambda s: bernoulli(1, 2, s), [b]) for b in (0, 1)} == {(1, 1), (0, 1)}
    for a, b in [(-1, 2), (3, 2), (0, 0)]:
        with pytest.raises(ValueError):
            bernoulli(a, b, BitSource())


@pytest.mark.parametrize("a, b", [(1, 3), (3, 10), (5, 8), (2, 7), (99, 100)])
def test_bernoulli_exact_by_enumeration(a, b):
    unfinished = bracket(lambda s: bernoulli(a, b, s), {1: Fraction(a, b), 0: 1 - Fraction(a, b)}, 30)
    assert unfinished < Fraction(1, 10**6)


def test_bernoulli_frequency_and_cost():
    src = BitSource(4)
    ones = sum(bernoulli(3, 10, src) for _ in range(200_000))
    assert abs(ones / 200_000 - 0.3) <= 0.0052
    assert src.bits_consumed / 200_000 <= 2.02


def test_rejection_uniform_exact():
    for w in [(1, 4), (3, 7), (2, 1, 1), (5, 1, 3)]:
        d = D(w)
        target = {i: p for i, p in enumerate(d.probabilities(), 1)}
        bracket(lambda s: rejection_uniform_sample(d, s), target, 18)


def test_rejection_uniform_fair_coin_is_one_flip():
    assert replay(lambda s: rejection_uniform_sample(D((1, 1)), s), [1]) == (2, 1)
    assert replay(lambda s: rejection_uniform_sample(D((1, 1)), s), [0]) == (1, 1)


def test_rejection_uniform_trials(monkeypatch):
    import loadeddice.baselines as baselines

    calls = []
    real = baselines.fast_dice_roller
    monkeypatch.setattr(baselines, "fast_dice_roller", lambda n, s: calls.append(n) or real(n, s))
    src = BitSource(9)
    for _ in range(100_000):
        rejection_uniform_sample(D((1, 4)), src)
    # one uniform proposal per trial, nD/m = 1.6 trials expected
    assert len(calls) / 100_000 == pytest.approx(1.6, abs=0.02)


def test_lookup_table_layout():
    t = lookup_build(D((3, 7)))
    assert t.k == 4 and t.T.tolist() == [1, 1, 1, 2, 2, 2, 2, 2, 2, 2]
    # W = 3 is 0011 MSB-first
    assert replay(lambda s: lookup_sample(t, s), [0, 0, 1, 1]) == (2, 4)
    assert replay(lambda s: lookup_sample(t, s), [0, 0, 1, 0]) == (1, 4)
    # W = 12 retries, then W = 0
    assert replay(lambda s: lookup_sample(t, s), [1, 1, 0, 0, 0, 0, 0, 0]) == (1, 8)


def test_lookup_fair_coin_never_retries():
    t = lookup_build(D((1, 1)))
    assert t.k == 1
    assert replay(lambda s: lookup_sample(t, s), [0]) == (1, 1)
    assert replay(lambda s: lookup_sample(t, s), [1]) == (2, 1)


def test_lookup_cap():
    with pytest.raises(TableSizeError):
        lookup_build(D((1000, 25)), max_entries=1024)
    lookup_build(D((1000, 24)), max_entries=1024)


def test_cumulative_layout():
    t = cumulative_build(D((3, 7)))
    assert t.T == (3, 10) and t.k == 4
    assert replay(lambda s: cumulative_sample(t, s), [0, 0, 1, 0])[0] == 1
    assert replay(lambda s: cumulative_sample(t, s), [0, 0, 1, 1])[0] == 2
    assert cumulative_build(D((1, 1))).T == (1, 2)
    t = cumulative_build(D((1, 4)))
    for w in range(5):
        bits = [int(c) for c in format(w, "03b")]
        assert replay(lambda s: cumulative_sample(t, s), bits)[0] == (1 if w == 0 else 2)


def test_alias_examples():
    t = alias_build(D((1, 4)))
    assert t.keep == (2, 5) and t.alias[0] == 2
    assert alias_reconstruct(t) == [2, 8]
    u = alias_build(D((1, 1, 1)))
    assert u.keep == (3, 3, 3)


@given(weights)
def test_table_reconstruction(w):
    d = D(w)
    lt = lookup_build(d)
    assert np.bincount(lt.T, minlength=d.n + 1)[1:].tolist() == list(w)
    assert np.all(np.diff(lt.T) >= 0)
    ct = cumulative_build(d)
    assert [b - a for a, b in zip((0,) + ct.T, ct.T)] == list(w)
    at = alias_build(d)
    assert alias_reconstruct(at) == [d.n * a for a in w]
    assert all(0 <= x <= d.m for x in at.keep)


@pytest.mark.parametrize("w", [(1, 4), (3, 7), (2, 3, 5), (1, 1, 1, 1, 6)])
def test_dyadic_and_alias_exact_by_enumeration(w):
    d = D(w)
    target = {i: p for i, p in enumerate(d.probabilities(), 1)}
    lt, ct, at = lookup_build(d), cumulative_build(d), alias_build(d)
    bracket(lambda s: lookup_sample(lt, s), target, 4 * lt.k)
    bracket(lambda s: cumulative_sample(ct, s), target, 4 * ct.k)
    bracket(lambda s: alias_sample(at, s), target, 20)


@pytest.mark.parametrize("name", ["rej-lookup", "rej-binsearch"])
@pytest.mark.parametrize("w", [(1, 4), (3, 7), (5, 6, 7, 100)])
def test_dyadic_bits_per_sample(name, w):
    d = D(w)
    src = BitSource(11)
    build_sampler(name, d).sample_many(src, 10**6)
    k = (d.m - 1).bit_length()
    assert src.bits_consumed / 10**6 == pytest.approx(k * 2**k / d.m, rel=0.02)


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 2000))
def test_alias_bits_on_uniform(n):
    src = BitSource(n)
    build_sampler("alias", D((1,) * n)).sample_many(src, 20_000)
    assert src.bits_consumed / 20_000 <= math.log2(n) + 3
