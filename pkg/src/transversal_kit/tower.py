"""Finite towers G_1 <- G_2 <- ... <- G_k of permutation groups.

A tower truncates an inverse limit. Images of a top-level pair K <= H are
pushed down every level and the indices c_i = [pi_i(H) : pi_i(K)] are
counted there. They must be nondecreasing and bounded by the top-level
index. A run of equal values at the end is evidence of the limit, not a
proof of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cosets import left_cosets
from .errors import InputError, VerificationError
from .groups import (
    FiniteGroup,
    Perm,
    SubgroupHandle,
    compose,
    cyclic_group,
    subgroup_from_elements,
    whole_group,
)

INFINITE = math.inf


@dataclass(frozen=True)
class Tower:
    """``maps[i][j]`` is the index in ``levels[i]`` of the image of ``levels[i+1].elements[j]``."""

    levels: tuple[FiniteGroup, ...]
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.levels:
            raise InputError("a tower needs at least one level")
        if len(self.maps) != len(self.levels) - 1:
            raise InputError(f"{len(self.levels)} levels need {len(self.levels) - 1} maps, got {len(self.maps)}")
        for i, m in enumerate(self.maps):
            _check_homomorphism(self.levels[i + 1], self.levels[i], m, where=f"maps[{i}]")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def top(self) -> FiniteGroup:
        return self.levels[-1]

    def project(self, elements: Sequence[Perm], level: int) -> list[Perm]:
        """Images at ``level`` (0-based) of top-level ``elements``, sorted and deduplicated."""
        idx = {self.top.index_of(g) for g in elements}
        for i in range(self.depth - 2, level - 1, -1):
            idx = {self.maps[i][j] for j in idx}
        return sorted(self.levels[level].elements[j] for j in idx)

    def truncated(self, n_levels: int) -> Tower:
        """Keep only the bottom ``n_levels`` levels."""
        if not 1 <= n_levels <= self.depth:
            raise InputError(f"max level must be in 1..{self.depth}")
        return Tower(self.levels[:n_levels], self.maps[: n_levels - 1])


def _check_homomorphism(upper: FiniteGroup, lower: FiniteGroup, m: Sequence[int], where: str) -> None:
    if len(m) != len(upper):
        raise InputError(f"{where}: expected {len(upper)} images, got {len(m)}")
    if any(not 0 <= j < len(lower) for j in m):
        raise InputError(f"{where}: image index out of range")
    if set(m) != set(range(len(lower))):
        raise InputError(f"{where}: map is not surjective")
    up, lo = upper.elements, lower.elements
    # all pairs for small groups; otherwise multiplicativity against generators, which implies it everywhere
    checks = up if len(upper) <= 48 else upper.generators
    for a_i, a in enumerate(up):
        for b in checks:
            b_i = upper.index_of(b)
            ab = upper.index_of(compose(a, b))
            if lo[m[ab]] != compose(lo[m[a_i]], lo[m[b_i]]):
                raise InputError(f"{where}: not a homomorphism at ({a}, {b})")


def map_from_generator_images(upper: FiniteGroup, lower: FiniteGroup, images: Sequence) -> tuple[int, ...]:
    """Expand generator images into a full element map, rejecting inconsistent data."""
    if len(images) != len(upper.generators):
        raise InputError(f"need {len(upper.generators)} generator images, got {len(images)}")
    gen_img = []
    for im in images:
        p = im if isinstance(im, Perm) else Perm(tuple(im))
        lower.require(p)
        gen_img.append(p)
    f = {upper.identity: lower.identity}
    frontier = [upper.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s, fs in zip(upper.generators, gen_img):
                h, fh = compose(s, g), compose(fs, f[g])
                if h in f:
                    if f[h] != fh:
                        raise InputError(f"generator images do not define a homomorphism (conflict at {h})")
                else:
                    f[h] = fh
                    nxt.append(h)
        frontier = nxt
    return tuple(lower.index_of(f[g]) for g in upper.elements)


@dataclass(frozen=True)
class TowerSubgroupPair:
    H: SubgroupHandle
    K: SubgroupHandle

    def __post_init__(self):
        if not self.K.element_set <= self.H.element_set:
            raise InputError("K must be a subgroup of H")


def level_index(tower: Tower, pair: TowerSubgroupPair, level: int) -> int:
    """[pi(H) : pi(K)] at a 0-based level, by counting left cosets."""
    h_img = tower.project(pair.H.elements, level)
    k_img = tower.project(pair.K.elements, level)
    Hg = FiniteGroup(tower.levels[level].degree, tuple(h_img), tuple(h_img))
    try:
        K = subgroup_from_elements(Hg, k_img)
    except InputError as exc:
        raise VerificationError(f"projection at level {level + 1} is not a subgroup pair: {exc}") from exc
    return len(left_cosets(Hg, K))


def project_pair(tower: Tower, pair: TowerSubgroupPair) -> list[tuple[int, int]]:
    """Index sequence ``[(level, c_level), ...]`` with levels numbered from 1."""
    if pair.H.parent != tower.top:
        raise InputError("pair must live in the top level of the tower")
    seq = [(i + 1, level_index(tower, pair, i)) for i in range(tower.depth)]
    values = [c for _, c in seq]
    if any(a > b for a, b in zip(values, values[1:])):
        raise VerificationError(f"index sequence {values} is not monotone")
    if values[-1] * pair.K.order != pair.H.order:
        raise VerificationError(f"top-level coset count {values[-1]} contradicts |H|/|K|")
    return seq


@dataclass(frozen=True)
class LimitClass:
    kind: str  # "stabilized" | "diverging"
    value: float  # the stabilized value, or INFINITE

    @property
    def stabilized(self) -> bool:
        return self.kind == "stabilized"


def classify_limit(sequence: Sequence[int]) -> LimitClass:
    """Read the limit off the last two entries: equal means stabilized, increasing means diverging."""
    seq = [int(c) for c in sequence]
    if len(seq) < 2:
        raise InputError("need at least two levels to classify the limit")
    if any(c < 1 for c in seq):
        raise InputError("indices must be positive")
    if any(a > b for a, b in zip(seq, seq[1:])):
        raise InputError(f"sequence {seq} is not nondecreasing")
    if seq[-1] == seq[-2]:
        return LimitClass("stabilized", seq[-1])
    return LimitClass("diverging", INFINITE)


@dataclass(frozen=True)
class ClosureIndexReport:
    top_index: int
    sequence: tuple[int, ...]
    limit: LimitClass

    @property
    def consistent(self) -> bool:
        """Stabilized value equals the top index; a diverging tail is consistent by convention."""
        return not self.limit.stabilized or self.limit.value == self.top_index

    @property
    def note(self) -> str:
        if self.limit.stabilized:
            return f"stabilized at {int(self.limit.value)}; top-level index {self.top_index}"
        return "no stabilization within the tower: infinite in the limit"


def closure_index_check(tower: Tower, H: SubgroupHandle, K: SubgroupHandle) -> ClosureIndexReport:
    pair = TowerSubgroupPair(H, K)
    seq = tuple(c for _, c in project_pair(tower, pair))
    return ClosureIndexReport(H.order // K.order, seq, classify_limit(seq))


def cyclic_two_tower(k: int) -> Tower:
    """Z/2 <- Z/4 <- ... <- Z/2^k, each map sending the standard generator to the standard generator."""
    if not 1 <= k <= 7:
        raise InputError("depth must be in 1..7 (degree 2^k <= 255)")
    levels = tuple(cyclic_group(2 ** i) for i in range(1, k + 1))
    maps = tuple(
        map_from_generator_images(levels[i + 1], levels[i], [levels[i].generators[0]])
        for i in range(k - 1)
    )
    return Tower(levels, maps)


def cyclic_subgroup_pair(tower: Tower, step: int) -> TowerSubgroupPair:
    """H = the whole top level, K = the image of ``step``·Z (generated by c**step)."""
    top = tower.top
    c = top.generators[0]
    g = top.identity
    for _ in range(step % len(top)):
        g = compose(c, g)
    K_els = [top.identity]
    h = g
    while h != top.identity:
        K_els.append(h)
        h = compose(g, h)
    return TowerSubgroupPair(whole_group(top), subgroup_from_elements(top, K_els))
