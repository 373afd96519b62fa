"""Integer-weighted discrete distributions: the common input of every sampler."""

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import mpmath

MAX_TOTAL = 1 << 63


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedDistribution:
    """Positive integer weights a_1..a_n; outcome i (1-based) has probability a_i/m."""

    weights: tuple
    m: int = field(init=False)

    def __post_init__(self):
        weights = tuple(int(a) for a in self.weights)
        if not weights:
            raise WeightError("distribution needs at least one weight")
        for i, a in enumerate(weights, 1):
            if a < 1:
                raise WeightError(f"nonpositive weight {a} at position {i}")
        m = sum(weights)
        if m > MAX_TOTAL:
            raise WeightError(f"weight sum {m} exceeds 2**63")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "m", m)

    @property
    def n(self):
        return len(self.weights)

    def probabilities(self):
        return [Fraction(a, self.m) for a in self.weights]

    def __str__(self):
        return " ".join(map(str, self.weights))


def entropy(dist):
    """Shannon entropy in bits, double precision."""
    m = dist.m
    return sum(a / m * math.log2(m / a) for a in dist.weights)


def entropy_hp(dist, prec=80):
    """Shannon entropy in bits as an mpmath float with ``prec`` bits of precision."""
    with mpmath.workprec(prec):
        m = mpmath.mpf(dist.m)
        h = mpmath.fsum(a / m * mpmath.log(m / a, 2) for a in dist.weights)
        return +h


def reduced_modulus(dist):
    """Smallest M such that every a_i/m is a multiple of 1/Z exactly when M | Z."""
    m = dist.m
    return reduce(math.lcm, (m // math.gcd(a, m) for a in dist.weights), 1)


_SEPARATORS = re.compile(r"[\s,]+")


def parse_weights(text):
    tokens = [t for t in _SEPARATORS.split(text.strip()) if t]
    if not tokens:
        raise WeightError("empty weight list")
    weights = []
    for t in tokens:
        try:
            weights.append(int(t))
        except ValueError:
            raise WeightError(f"not an integer weight: {t!r}") from None
    return WeightedDistribution(tuple(weights))


def read_weight_file(path):
    """One distribution per line; blank lines and '#' comment lines are skipped."""
    dists = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            dists.append(parse_weights(line))
    return dists


def write_weight_file(path, dists, header=None):
    with open(path, "w") as f:
        if header:
            for line in header.splitlines():
                f.write(f"# {line}\n")
        for d in dists:
            f.write(f"{d}\n")
