"""Fast Loaded Dice Roller.

The weights are padded with a reject weight 2**k - m so they sum to 2**k,
the dyadic proposal (a_1, ..., a_n, 2**k - m) / 2**k is sampled with its
entropy-optimal tree, and draws of the reject outcome n+1 restart at the
root. The tree is stored as per-level leaf counts ``h`` and a dense label
matrix ``H``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .ddg import DdgTree, expected_bits
from .distribution import entropy_hp

MAX_TOTAL = 1 << 62


@dataclass(frozen=True, eq=False)
class FldrTable:
    n: int
    m: int
    k: int
    reject_weight: int
    h: np.ndarray = field(repr=False)
    H: np.ndarray = field(repr=False)

    @property
    def leaf_count(self):
        return int(self.h.sum())

    def column(self, j):
        return [int(x) for x in self.H[: self.h[j], j]]


def fldr_preprocess(dist):
    m = dist.m
    if m > MAX_TOTAL:
        raise OverflowError(f"weight sum {m} exceeds 2**62")
    n = dist.n
    k = (m - 1).bit_length()
    a = np.array(dist.weights + ((1 << k) - m,), dtype=np.int64)
    # bits[i, j] = (a_i >> (k-1-j)) & 1, column j is tree level j+1
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    bits = (a[:, None] >> shifts[None, :]) & 1
    h = bits.sum(axis=0).astype(np.int64)
    H = np.zeros((n + 1, k), dtype=np.int32)
    for j in range(k):
        labels = np.flatnonzero(bits[:, j]) + 1
        H[: len(labels), j] = labels
    return FldrTable(n=n, m=m, k=k, reject_weight=(1 << k) - m, h=h, H=H)


def fldr_sample(table, source):
    if table.k == 0:
        return 1
    n, h, H = table.n, table.h, table.H
    d = c = 0
    while True:
        b = source.flip()
        d = 2 * d + (1 - b)
        if d < h[c]:
            label = int(H[d, c])
            if label <= n:
                return label
            d = c = 0
        else:
            d -= int(h[c])
            c += 1


def fldr_node_count(table):
    return 2 * table.leaf_count - 1


def node_bound(n, m):
    """Upper bound 2(n+1)ceil(log2 m) on the size of the FLDR tree."""
    return 2 * (n + 1) * (m - 1).bit_length()


def fldr_as_ddg(table):
    if table.k == 0:
        return DdgTree(n=1, depth=0, back_level=0, leaves=())
    leaves = tuple(tuple(table.column(j)) for j in range(table.k))
    return DdgTree(
        n=table.n,
        depth=table.k,
        back_level=table.k,
        leaves=leaves,
        reject_label=table.n + 1 if table.reject_weight else None,
    )


@dataclass(frozen=True)
class GapDecomposition:
    """Entropy gap E[L] - H(p) of FLDR split into its three analytic terms.

    term1 = log2(2**k/m), term2 = (2**k-m)/m * log2(2**k/(2**k-m)), and the
    third term is term3_coeff * proposal_gap, where proposal_gap is the gap
    of the optimal tree for the padded proposal.
    """

    term1: float
    term2: float
    term3_coeff: float
    proposal_gap: float
    expected_bits: Fraction
    exact_gap: float

    @property
    def term3(self):
        return self.term3_coeff * self.proposal_gap


def _entropy_of_weights_hp(weights, total, prec):
    with mpmath.workprec(prec):
        t = mpmath.mpf(total)
        return +mpmath.fsum(w / t * mpmath.log(t / w, 2) for w in weights if w)


def entropy_gap(dist, prec=80):
    if dist.n < 2:
        raise ValueError("entropy gap needs at least two outcomes")
    table = fldr_preprocess(dist)
    k, m = table.k, dist.m
    scale = (1 << k) / m
    term1 = math.log2(scale)
    r = (1 << k) - m
    term2 = r / m * math.log2((1 << k) / r) if r else 0.0
    e_total = expected_bits(fldr_as_ddg(table))
    e_proposal = e_total * m / (1 << k)
    with mpmath.workprec(prec):
        proposal_gap = float(mpmath.mpf(e_proposal.numerator) / e_proposal.denominator
                             - _entropy_of_weights_hp(dist.weights + (r,), 1 << k, prec))
        exact_gap = float(mpmath.mpf(e_total.numerator) / e_total.denominator
                          - entropy_hp(dist, prec))
    return GapDecomposition(
        term1=term1,
        term2=term2,
        term3_coeff=scale,
        proposal_gap=proposal_gap,
        expected_bits=e_total,
        exact_gap=exact_gap,
    )


def dump_table(table):
    lines = [f"{table.k} {table.reject_weight}", "h: " + " ".join(str(int(x)) for x in table.h)]
    for j in range(table.k):
        lines.append(f"col {j}: " + " ".join(map(str, table.column(j))))
    return "\n".join(lines)
