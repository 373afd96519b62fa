"""Distribution generators for tests and benchmarks.

``random_distribution`` draws a uniformly random composition of m into n
positive parts. ``entropy_targeted`` shapes weights by a power law over
ranks, w_i ~ i**-s, bisects s to approach a target entropy, then repairs
locally by moving single units between outcomes.
"""

import math
import random

from .distribution import WeightedDistribution, entropy


def random_distribution(rng, n, m):
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got n={n}, m={m}")
    cuts = sorted(rng.sample(range(1, m), n - 1))
    bounds = [0] + cuts + [m]
    return WeightedDistribution(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def random_corpus(count, n_max, m_max, seed=0, n_min=2):
    """``count`` random distributions with n in [n_min, n_max] and n <= m <= m_max."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        m = rng.randint(n, m_max)
        out.append(random_distribution(rng, n, m))
    return out


def _power_law(n, m, s):
    # largest-remainder rounding of (m - n) extra units over ranks, plus 1 each
    logs = [-s * math.log(i + 1) for i in range(n)]
    top = max(logs)
    raw = [math.exp(x - top) for x in logs]
    total = sum(raw)
    extra = m - n
    shares = [extra * r / total for r in raw]
    base = [int(x) for x in shares]
    short = extra - sum(base)
    order = sorted(range(n), key=lambda i: shares[i] - base[i], reverse=True)
    for i in order[:short]:
        base[i] += 1
    return [b + 1 for b in base]


def entropy_floor(n, m):
    """Lowest entropy reachable with n positive weights summing to m."""
    return entropy(WeightedDistribution((m - n + 1,) + (1,) * (n - 1)))


def _repair(weights, target, tol, max_moves):
    m = sum(weights)
    h = entropy(WeightedDistribution(tuple(weights)))
    for _ in range(max_moves):
        if abs(h - target) <= tol:
            break
        order = sorted(range(len(weights)), key=weights.__getitem__)
        if h > target:
            # concentrate: smallest weight above 1 gives a unit to the largest
            donor = next((i for i in order if weights[i] > 1), None)
            taker = order[-1]
        else:
            donor, taker = order[-1], order[0]
        if donor is None or donor == taker or weights[donor] <= 1:
            break
        weights[donor] -= 1
        weights[taker] += 1
        h = entropy(WeightedDistribution(tuple(weights)))
    assert sum(weights) == m
    return weights, h


def entropy_targeted(n, m, target, tol=0.1, rng=None):
    """Weights over n outcomes summing to m with entropy within ``tol`` of target."""
    if n < 2 or m < n:
        raise ValueError(f"need n >= 2 and m >= n, got n={n}, m={m}")
    floor = entropy_floor(n, m)
    if target < floor - tol or target > math.log2(n) + tol:
        raise ValueError(
            f"target {target:.4f} bits infeasible for n={n}, m={m}: "
            f"reachable range is [{floor:.4f}, {math.log2(n):.4f}]"
        )
    lo, hi = 0.0, 1.0
    while entropy(WeightedDistribution(tuple(_power_law(n, m, hi)))) > target and hi < 1e4:
        hi *= 2
    best, best_err = None, math.inf
    for _ in range(60):
        s = (lo + hi) / 2
        w = _power_law(n, m, s)
        h = entropy(WeightedDistribution(tuple(w)))
        if abs(h - target) < best_err:
            best, best_err = w, abs(h - target)
        if h > target:
            lo = s
        else:
            hi = s
    weights, h = _repair(list(best), target, tol, max_moves=10 * m)
    if abs(h - target) > tol:
        raise ValueError(f"could not reach entropy {target:.4f} (got {h:.4f})")
    if rng is not None:
        rng.shuffle(weights)
    return WeightedDistribution(tuple(weights))


def gen_dists(n, m, count, targets=None, seed=0, tol=0.1):
    """``count`` distributions with entropies equally spaced over the reachable range."""
    if targets is None:
        lo, hi = entropy_floor(n, m), math.log2(n)
        targets = [lo + (hi - lo) * i / max(1, count - 1) for i in range(count)]
    if len(targets) != count:
        raise ValueError("need one entropy target per distribution")
    rng = random.Random(seed)
    return [entropy_targeted(n, m, t, tol=tol, rng=rng) for t in targets]
