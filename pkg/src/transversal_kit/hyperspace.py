"""Hausdorff distance and Wijsman distance profiles on finite subsets of R^d.

Coordinates may be ``Fraction``s. In one dimension every distance is then
exact, which is how the {±1/k} sequence is checked without rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Sequence

from .errors import InputError, NotCauchyError, VerificationError

DEDUP_TOL = 1e-12
CLUSTER_FACTOR = 3


def _point(p) -> tuple:
    if isinstance(p, Real):
        return (p,)
    t = tuple(p)
    if not t:
        raise InputError("points need at least one coordinate")
    return t


def distance(p: Sequence, q: Sequence):
    if len(p) != len(q):
        raise InputError(f"dimension mismatch: {len(p)} vs {len(q)}")
    if len(p) == 1:
        return abs(p[0] - q[0])
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))


class PointSet:
    """Nonempty finite point set; points closer than 1e-12 to an earlier one are dropped."""

    __slots__ = ("points",)

    def __init__(self, points: Iterable):
        pts: list[tuple] = []
        for p in points:
            p = _point(p)
            if pts and len(p) != len(pts[0]):
                raise InputError("all points must share one dimension")
            if not any(distance(p, q) <= DEDUP_TOL for q in pts):
                pts.append(p)
        if not pts:
            raise InputError("point sets must be nonempty")
        self.points = tuple(pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __repr__(self) -> str:
        return f"PointSet({list(self.points)})"

    def distance_to(self, x):
        """d(x, A) = min over a in A of |x - a|."""
        x = _point(x)
        return min(distance(x, a) for a in self.points)


def hausdorff(A: PointSet, B: PointSet):
    """max(max_{a∈A} d(a, B), max_{b∈B} d(b, A))."""
    if A.dim != B.dim:
        raise InputError(f"dimension mismatch: {A.dim} vs {B.dim}")
    return max(max(B.distance_to(a) for a in A), max(A.distance_to(b) for b in B))


def wijsman_profile(A: PointSet, samples: Sequence) -> list:
    if not samples:
        raise InputError("need at least one sample point")
    return [A.distance_to(x) for x in samples]


@dataclass(frozen=True)
class CardinalityLimitReport:
    limit: PointSet
    cluster_count: int
    bound: int
    tail_start: int  # index into the sequence where the Cauchy tail begins
    tail_cardinality: int  # size of the last set

    @property
    def within_bound(self) -> bool:
        return self.cluster_count <= self.bound

    @property
    def cardinality_drop(self) -> bool:
        return self.cluster_count < self.tail_cardinality


def _cauchy_tail_start(seq: Sequence[PointSet], tol) -> int:
    last = len(seq) - 1
    if last >= 1 and hausdorff(seq[last - 1], seq[last]) > tol:
        raise NotCauchyError(
            f"last two sets are {float(hausdorff(seq[last - 1], seq[last])):.3g} apart, above tol {float(tol):.3g}"
        )
    start = last
    while start > 0 and all(hausdorff(seq[start - 1], seq[m]) <= tol for m in range(start, last + 1)):
        start -= 1
    return start


def _single_linkage(points: list[tuple], radius) -> list[list[int]]:
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if distance(points[i], points[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(points)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def check_card_bound_limit(sequence: Sequence[PointSet], n: int, tol) -> CardinalityLimitReport:
    """Extract the limit of a Hausdorff-Cauchy sequence of sets with at most ``n`` points.

    The tail is the longest suffix whose pairwise Hausdorff distances are
    all <= tol. Its points are grouped by single linkage at radius 3·tol.
    Each cluster contributes the mean of its points from the last set to
    the limit. Every cluster holds at least one point of the last set, so
    there can never be more than ``n`` clusters.
    """
    seq = list(sequence)
    if not seq:
        raise InputError("empty sequence")
    for i, F in enumerate(seq):
        if len(F) > n:
            raise InputError(f"sequence[{i}] has {len(F)} points, more than n = {n}")
    start = _cauchy_tail_start(seq, tol)
    tail = seq[start:]
    pts = [p for F in tail for p in F]
    n_last = len(tail[-1])
    last_offset = len(pts) - n_last
    limit_pts = []
    clusters = _single_linkage(pts, CLUSTER_FACTOR * tol)
    for members in clusters:
        own = [pts[i] for i in members if i >= last_offset]
        if not own:
            raise VerificationError("cluster without a point of the last set")
        limit_pts.append(tuple(sum(c) / len(own) for c in zip(*own)))
    limit_pts.sort()
    report = CardinalityLimitReport(PointSet(limit_pts), len(clusters), n, start, n_last)
    if not report.within_bound:
        raise VerificationError(f"{report.cluster_count} clusters exceed the bound {n}")
    return report


@dataclass(frozen=True)
class AgreementRow:
    hausdorff: object
    max_deviation: object

    @property
    def lipschitz_ok(self) -> bool:
        return self.max_deviation <= self.hausdorff + DEDUP_TOL


@dataclass(frozen=True)
class AgreementReport:
    rows: tuple[AgreementRow, ...]
    tol: object

    @property
    def converged(self) -> bool:
        return self.rows[-1].hausdorff <= self.tol

    @property
    def lipschitz_ok(self) -> bool:
        return all(r.lipschitz_ok for r in self.rows)


def hausdorff_wijsman_agreement(sequence: Sequence[PointSet], target: PointSet, samples: Sequence, tol) -> AgreementReport:
    """Check sup_x |d(x, A_k) - d(x, target)| <= δ(A_k, target) on the samples, for every k."""
    if not sequence:
        raise InputError("empty sequence")
    base = wijsman_profile(target, samples)
    rows = []
    for A in sequence:
        prof = wijsman_profile(A, samples)
        dev = max(abs(a - b) for a, b in zip(prof, base))
        rows.append(AgreementRow(hausdorff(A, target), dev))
    return AgreementReport(tuple(rows), tol)


def grid_samples(lo, hi, mesh) -> list:
    """Evenly spaced 1-D samples from lo to hi with spacing at most ``mesh``."""
    if hi < lo or mesh <= 0:
        raise InputError("need lo <= hi and mesh > 0")
    steps = max(1, math.ceil((hi - lo) / mesh))
    if isinstance(lo, Fraction) or isinstance(hi, Fraction) or isinstance(mesh, Fraction):
        return [Fraction(lo) + (Fraction(hi) - Fraction(lo)) * i / steps for i in range(steps + 1)]
    return [lo + (hi - lo) * i / steps for i in range(steps + 1)]


def plus_minus_sequence(k: int) -> list[PointSet]:
    """F_j = {-1/j, +1/j} for j = 1..k, in exact rationals."""
    return [PointSet([Fraction(-1, j), Fraction(1, j)]) for j in range(1, k + 1)]
