"""Level-encoded DDG trees, the entropy-optimal (Knuth-Yao) construction, and
exact rational analysis of any such tree.

A tree is stored level by level. Within a level, leaves take the lowest
node positions in ascending label order and the remaining positions are
internal nodes. The walk keeps the position ``d`` of the current node
among its level and moves with ``d <- 2d + (1 - b)`` on bit ``b``, so bit 1
reaches the low (leaf) positions first. Internal nodes surviving the last
level re-enter the internal nodes of ``back_level`` at the same position;
leaves labeled ``reject_label`` restart the walk at the root.
"""

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

import numpy as np

from .distribution import reduced_modulus
from .number_theory import minimal_depth

RationalProb = Fraction


@dataclass(frozen=True)
class DdgTree:
    n: int
    depth: int
    back_level: int
    leaves: tuple
    reject_label: int | None = None

    def __post_init__(self):
        leaves = tuple(tuple(int(x) for x in level) for level in self.leaves)
        object.__setattr__(self, "leaves", leaves)
        if len(leaves) != self.depth:
            raise ValueError(f"expected {self.depth} levels, got {len(leaves)}")
        if not 0 <= self.back_level <= self.depth:
            raise ValueError(f"back level {self.back_level} outside 0..{self.depth}")
        if self.depth == 0:
            if self.n != 1:
                raise ValueError("a depth-0 tree must have exactly one outcome")
            return
        max_label = self.n if self.reject_label is None else self.reject_label
        for j, level in enumerate(leaves, 1):
            if list(level) != sorted(set(level)):
                raise ValueError(f"level {j} labels must be strictly ascending: {level}")
            if level and not 1 <= level[0] <= level[-1] <= max_label:
                raise ValueError(f"level {j} has a label outside 1..{max_label}")
        internal = self.internal_counts()
        if min(internal) < 0:
            raise ValueError("more leaves than nodes at some level")
        if self.has_back_edge:
            if internal[-1] != internal[self.back_level] or internal[-1] == 0:
                raise ValueError("back-edge level does not match the surviving internal nodes")
        elif internal[-1] != 0:
            raise ValueError("internal nodes survive the last level with no back-edge")

    @property
    def has_back_edge(self):
        return self.back_level < self.depth

    @cached_property
    def level_counts(self):
        return tuple(len(level) for level in self.leaves)

    def internal_counts(self):
        """Internal nodes per level 0..depth (before any back-edge)."""
        counts = [1]
        for h in self.level_counts:
            counts.append(2 * counts[-1] - h)
        return counts

    def walk_arrays(self):
        """(h, H) arrays for the batch kernel: H[d, c] is the d-th leaf at level c+1."""
        h = np.array(self.level_counts, dtype=np.int64)
        rows = max(1, int(h.max())) if len(h) else 1
        H = np.zeros((rows, self.depth), dtype=np.int32)
        for c, level in enumerate(self.leaves):
            H[: len(level), c] = level
        return h, H


def ky_construct(dist):
    """Entropy-optimal DDG tree: leaf i at level j iff digit j of a_i/m is 1."""
    if dist.n == 1:
        return DdgTree(n=1, depth=0, back_level=0, leaves=())
    w = minimal_depth(reduced_modulus(dist))
    k, l = w.k, w.l
    Z = w.Z
    levels = [[] for _ in range(k)]
    for i, a in enumerate(dist.weights, 1):
        c = a * Z // dist.m
        if l < k:
            prefix, suffix = divmod(c, (1 << (k - l)) - 1)
        else:
            prefix, suffix = c, 0
        digits = format(prefix, f"0{l}b") if l else ""
        if l < k:
            digits += format(suffix, f"0{k - l}b")
        for j, digit in enumerate(digits):
            if digit == "1":
                levels[j].append(i)
    return DdgTree(n=dist.n, depth=k, back_level=l, leaves=tuple(map(tuple, levels)))


def walk(h, columns, n, back_col, source):
    """Sample by walking a level-encoded tree; labels above n restart at the root."""
    k = len(h)
    d = c = 0
    while True:
        b = source.flip()
        d = 2 * d + (1 - b)
        if d < h[c]:
            label = columns[c][d]
            if label <= n:
                return label
            d = c = 0
        else:
            d -= h[c]
            c += 1
            if c == k:
                c = back_col


def ky_sample(tree, source):
    if tree.depth == 0:
        return 1
    return walk(tree.level_counts, tree.leaves, tree.n, tree.back_level, source)


def _pass_statistics(tree):
    """Per pass from the root: exact mass per leaf label and expected flips.

    Mass reaching the back-edge re-enters level ``l`` scaled by
    x = 2**-(k-l) relative to the first visit, so the loop contributes one
    linear equation, V = first + x * V, per quantity.
    """
    k, l = tree.depth, tree.back_level
    mass = {}
    flips = Fraction(0)
    loop_mass = {}
    loop_flips = Fraction(0)
    for j, level in enumerate(tree.leaves, 1):
        w = Fraction(1, 1 << j)
        for label in level:
            mass[label] = mass.get(label, 0) + w
            flips += j * w
            if j > l:
                loop_mass[label] = loop_mass.get(label, 0) + w
                loop_flips += (j - l) * w
    if tree.has_back_edge:
        x = Fraction(1, 1 << (k - l))
        back = tree.internal_counts()[-1] * Fraction(1, 1 << k)
        # flips spent below level l on one visit of level l, normalised by its mass
        visit = tree.internal_counts()[l] * Fraction(1, 1 << l)
        loop_total = (loop_flips + back * (k - l)) / (1 - x)
        flips += back * k + loop_total * back / visit
        for label, w in loop_mass.items():
            mass[label] += x * w / (1 - x)
    return mass, flips


def output_distribution(tree):
    """Exact probability of each outcome 1..n."""
    if tree.depth == 0:
        return [Fraction(1)]
    mass, _ = _pass_statistics(tree)
    accept = 1 - mass.get(tree.reject_label, 0) if tree.reject_label else Fraction(1)
    return [mass.get(i, Fraction(0)) / accept for i in range(1, tree.n + 1)]


def expected_bits(tree):
    """Exact expected number of flips per returned sample."""
    if tree.depth == 0:
        return Fraction(0)
    mass, flips = _pass_statistics(tree)
    accept = 1 - mass.get(tree.reject_label, 0) if tree.reject_label else Fraction(1)
    return flips / accept


def node_count(tree):
    """Nodes in the finite encoding; back-edge stubs count as leaves."""
    if tree.depth == 0:
        return 1
    stubs = tree.internal_counts()[-1] if tree.has_back_edge else 0
    return 2 * (sum(tree.level_counts) + stubs) - 1


def dump_tree(tree):
    lines = [f"level {j}: [{', '.join(map(str, level))}]" for j, level in enumerate(tree.leaves, 1)]
    lines.append(f"back-edge -> {tree.back_level}" if tree.has_back_edge else "back-edge -> none")
    if tree.reject_label is not None:
        lines.append(f"reject {tree.reject_label} -> 0")
    return "\n".join(lines)
