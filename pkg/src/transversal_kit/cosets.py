"""Left, right and double cosets of a subgroup, computed by plain enumeration.

Nothing here uses orbit-stabilizer shortcuts: indices are obtained by
counting blocks, so these routines double as the oracle for the closed
formulas used elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Literal

from .errors import InputError, VerificationError
from .groups import FiniteGroup, Perm, SubgroupHandle, compose, inverse

MAX_WITNESSES = 10


def _check_parent(G: FiniteGroup, H: SubgroupHandle) -> None:
    if H.parent is not G and H.parent != G:
        raise InputError("subgroup does not belong to the given group")


@dataclass(frozen=True)
class CosetList:
    side: Literal["left", "right"]
    representatives: tuple[Perm, ...]
    blocks: dict  # representative -> sorted tuple of members

    def __len__(self) -> int:
        return len(self.representatives)

    @cached_property
    def _rep_of(self) -> dict:
        return {g: rep for rep, members in self.blocks.items() for g in members}

    def block_of(self, g: Perm) -> Perm:
        """Representative of the coset containing ``g``."""
        try:
            return self._rep_of[g]
        except KeyError:
            raise InputError(f"{g} is not covered by this coset list") from None


def _blocks(elements, action) -> tuple[tuple[Perm, ...], dict]:
    # elements arrive in canonical order, so the first unseen one is its block's minimum
    seen: set = set()
    reps, blocks = [], {}
    for g in elements:
        if g in seen:
            continue
        block = tuple(sorted(set(action(g))))
        seen.update(block)
        reps.append(block[0])
        blocks[block[0]] = block
    return tuple(reps), blocks


def left_cosets(G: FiniteGroup, H: SubgroupHandle) -> CosetList:
    _check_parent(G, H)
    hs = H.elements
    reps, blocks = _blocks(G.elements, lambda g: (compose(g, h) for h in hs))
    return CosetList("left", reps, blocks)


def right_cosets(G: FiniteGroup, H: SubgroupHandle) -> CosetList:
    _check_parent(G, H)
    hs = H.elements
    reps, blocks = _blocks(G.elements, lambda g: (compose(h, g) for h in hs))
    return CosetList("right", reps, blocks)


def _conjugate_intersection(H: SubgroupHandle, x: Perm) -> list[Perm]:
    """Members of H ∩ xHx⁻¹, in canonical order."""
    xi = inverse(x)
    conj = {compose(compose(x, h), xi) for h in H.elements}
    return [h for h in H.elements if h in conj]


def _count_left_blocks(H: SubgroupHandle, K: list[Perm]) -> int:
    reps, _ = _blocks(H.elements, lambda t: (compose(t, k) for k in K))
    return len(reps)


def conjugate_intersection_indices(G: FiniteGroup, H: SubgroupHandle, x: Perm) -> tuple[int, int]:
    """Return ``([H : H∩xHx⁻¹], [H : H∩x⁻¹Hx])`` by explicit coset counting."""
    _check_parent(G, H)
    G.require(x)
    left = _count_left_blocks(H, _conjugate_intersection(H, x))
    right = _count_left_blocks(H, _conjugate_intersection(H, inverse(x)))
    return left, right


@dataclass(frozen=True)
class DoubleCoset:
    representative: Perm
    members: tuple[Perm, ...]
    left_count: int
    right_count: int

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def index_condition_holds(self) -> bool:
        return self.left_count == self.right_count


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    cosets: tuple[DoubleCoset, ...]

    @property
    def representatives(self) -> tuple[Perm, ...]:
        return tuple(c.representative for c in self.cosets)

    def __len__(self) -> int:
        return len(self.cosets)

    def __iter__(self):
        return iter(self.cosets)

    def coset_of(self, g: Perm) -> DoubleCoset:
        for c in self.cosets:
            if g in c.members:
                return c
        raise InputError(f"{g} is not covered by the decomposition")


def double_coset_members(H: SubgroupHandle, x: Perm) -> tuple[Perm, ...]:
    hs = H.elements
    return tuple(sorted({compose(compose(a, x), b) for a in hs for b in hs}))


def double_cosets(G: FiniteGroup, H: SubgroupHandle) -> DoubleCosetDecomposition:
    """Decompose G into double cosets HaH with canonical-minimum representatives.

    For every representative the identity |HaH|·|H∩aHa⁻¹| = |H|² (and its
    mirror) is checked; a failure raises ``VerificationError``.
    """
    _check_parent(G, H)
    seen: set = set()
    out = []
    h2 = H.order ** 2
    for g in G.elements:
        if g in seen:
            continue
        members = double_coset_members(H, g)
        seen.update(members)
        a = members[0]
        k_left = _conjugate_intersection(H, a)
        k_right = _conjugate_intersection(H, inverse(a))
        if len(members) * len(k_left) != h2 or len(members) * len(k_right) != h2:
            raise VerificationError(f"counting identity fails for double coset of {a}")
        out.append(DoubleCoset(
            representative=a,
            members=members,
            left_count=_count_left_blocks(H, k_left),
            right_count=_count_left_blocks(H, k_right),
        ))
    dec = DoubleCosetDecomposition(tuple(out))
    n_cosets = len(G) // H.order
    if (sum(c.size for c in out) != len(G)
            or sum(c.left_count for c in out) != n_cosets
            or sum(c.right_count for c in out) != n_cosets):
        raise VerificationError("double coset counts do not add up")
    return dec


def common_representative(G: FiniteGroup, H: SubgroupHandle, x: Perm, y: Perm) -> Perm | None:
    """Canonical minimum of xH ∩ Hy, or None when the two cosets are disjoint."""
    _check_parent(G, H)
    G.require(x, y)
    left = {compose(x, h) for h in H.elements}
    common = [g for g in (compose(h, y) for h in H.elements) if g in left]
    return min(common) if common else None


@dataclass(frozen=True)
class IndexConditionReport:
    holds: bool
    witnesses: tuple[Perm, ...]
    n_double_cosets: int
    truncated: bool = False


def check_index_condition(G: FiniteGroup, H: SubgroupHandle) -> IndexConditionReport:
    """Compare [H : H∩xHx⁻¹] and [H : H∩x⁻¹Hx] on every double coset.

    The indices only depend on the double coset of x, so representatives are
    enough. At most ``MAX_WITNESSES`` failing representatives are reported.
    """
    dec = double_cosets(G, H)
    bad = [c.representative for c in dec if not c.index_condition_holds]
    return IndexConditionReport(
        holds=not bad,
        witnesses=tuple(bad[:MAX_WITNESSES]),
        n_double_cosets=len(dec),
        truncated=len(bad) > MAX_WITNESSES,
    )
