"""Measurement: sample reports, chi-square goodness of fit, entropy-gap rows."""

import math
import time
from dataclasses import dataclass

import mpmath
import numpy as np

from .ddg import expected_bits, ky_construct
from .distribution import entropy, entropy_hp
from .fldr import entropy_gap

CSV_HEADER = "sampler,n,m,H,entropy_bits_per_sample,prng_calls,elapsed_ns,chi2,p_value"

_EPS = 1e-15
_MAX_ITER = 100_000


@dataclass
class SampleReport:
    counts: list
    total: int
    bits_consumed: int
    prng_calls: int
    elapsed_ns: int

    @property
    def bits_per_sample(self):
        return self.bits_consumed / self.total


@dataclass(frozen=True)
class GofResult:
    statistic: float
    df: int
    p_value: float


def run_sampler(sampler, dist, N, source):
    """Draw N samples and tally them; counters are read as deltas around the run.

    ``sampler`` is either a built Sampler (batch path) or any callable
    taking a source and returning an outcome in 1..n.
    """
    if N < 1:
        raise ValueError("need at least one sample")
    bits0, calls0 = source.bits_consumed, source.prng_calls
    t0 = time.perf_counter_ns()
    if hasattr(sampler, "sample_many"):
        out = sampler.sample_many(source, N)
    else:
        out = np.fromiter((sampler(source) for _ in range(N)), dtype=np.int64, count=N)
    elapsed = time.perf_counter_ns() - t0
    counts = np.bincount(out, minlength=dist.n + 1)
    if len(counts) > dist.n + 1 or counts[0]:
        raise RuntimeError("sampler returned an outcome outside 1..n")
    return SampleReport(
        counts=[int(c) for c in counts[1:]],
        total=N,
        bits_consumed=source.bits_consumed - bits0,
        prng_calls=source.prng_calls - calls0,
        elapsed_ns=elapsed,
    )


def regularized_gamma_q(a, x):
    """Q(a, x) = Gamma(a, x) / Gamma(a): power series below a+1, Lentz continued fraction above."""
    if a <= 0:
        raise ValueError("shape must be positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 1.0
    log_prefactor = -x + a * math.log(x) - math.lgamma(a)
    if x < a + 1:
        term = total = 1.0 / a
        ap = a
        for _ in range(_MAX_ITER):
            ap += 1
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        return max(0.0, 1.0 - total * math.exp(log_prefactor))
    tiny = 1e-300
    b = x + 1 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < _EPS:
            break
    return min(1.0, math.exp(log_prefactor) * h)


def chi2_sf(statistic, df):
    return regularized_gamma_q(df / 2, statistic / 2)


def chi_square_gof(report, dist):
    N = report.total
    expected = [N * a / dist.m for a in dist.weights]
    low = min(expected)
    if low < 5:
        raise ValueError(f"expected count {low:.3g} < 5; draw more samples")
    if dist.n < 2:
        raise ValueError("goodness of fit needs at least two outcomes")
    stat = sum((o - e) ** 2 / e for o, e in zip(report.counts, expected))
    df = dist.n - 1
    return GofResult(statistic=stat, df=df, p_value=chi2_sf(stat, df))


@dataclass(frozen=True)
class GapRow:
    H: float
    ky_gap: float
    fldr_gap: float
    term1: float
    term2: float
    term3: float


def entropy_gap_report(dist, prec=80):
    if dist.n < 2:
        raise ValueError("entropy gap needs at least two outcomes")
    gap = entropy_gap(dist, prec)
    e_ky = expected_bits(ky_construct(dist))
    with mpmath.workprec(prec):
        ky_gap = float(mpmath.mpf(e_ky.numerator) / e_ky.denominator - entropy_hp(dist, prec))
    return GapRow(
        H=entropy(dist),
        ky_gap=ky_gap,
        fldr_gap=gap.exact_gap,
        term1=gap.term1,
        term2=gap.term2,
        term3=gap.term3,
    )


def report_row(name, dist, report, gof=None):
    """One CSV line in CSV_HEADER order; chi2 and p_value blank without a GOF result."""
    chi2 = f"{gof.statistic:.6g}" if gof else ""
    p = f"{gof.p_value:.6g}" if gof else ""
    return (
        f"{name},{dist.n},{dist.m},{entropy(dist):.6f},{report.bits_per_sample:.6f},"
        f"{report.prng_calls},{report.elapsed_ns},{chi2},{p}"
    )
