"""Common left/right transversals built one double coset at a time.

Inside a double coset HxH, left cosets are txH for t running over a section
of H/(H∩xHx⁻¹) and right cosets are Hxs for s running over a section of
(H∩x⁻¹Hx)\\H. When the two sections have the same size, pairing them gives
the set {t·x·φ(t)}, which meets every left and every right coset in HxH
exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import (
    _blocks,
    _check_parent,
    _conjugate_intersection,
    double_coset_members,
    double_cosets,
    left_cosets,
    right_cosets,
)
from .errors import VerificationError
from .groups import FiniteGroup, Perm, SubgroupHandle, compose, inverse

MAX_DEFECTS = 10


@dataclass(frozen=True)
class MatchingRecord:
    double_coset_rep: Perm
    left_section: tuple[Perm, ...]   # T ⊂ H, one per coset of H∩xHx⁻¹
    right_section: tuple[Perm, ...]  # S ⊂ H, one per coset of H∩x⁻¹Hx
    # pairing is by rank: left_section[i] <-> right_section[i]

    def pairing(self) -> dict:
        return dict(zip(self.left_section, self.right_section))


@dataclass(frozen=True)
class CommonTransversal:
    elements: tuple[Perm, ...]
    provenance: dict  # element -> (double coset rep, t, s) with element == t·rep·s

    def __len__(self) -> int:
        return len(self.elements)


def _sections(H: SubgroupHandle, a: Perm) -> tuple[tuple[Perm, ...], tuple[Perm, ...]]:
    k_left = _conjugate_intersection(H, a)
    k_right = _conjugate_intersection(H, inverse(a))
    t_reps, _ = _blocks(H.elements, lambda t: (compose(t, k) for k in k_left))
    s_reps, _ = _blocks(H.elements, lambda s: (compose(k, s) for k in k_right))
    return t_reps, s_reps


def double_coset_transversal(G: FiniteGroup, H: SubgroupHandle, x: Perm) -> tuple[MatchingRecord, tuple[Perm, ...]]:
    """Matched common transversal Q of the single double coset HxH.

    The construction uses the canonical representative of HxH rather than
    ``x`` itself, so the output depends only on the double coset. Both
    partition properties are verified exhaustively before returning.
    """
    _check_parent(G, H)
    G.require(x)
    members = double_coset_members(H, x)
    a = members[0]
    T, S = _sections(H, a)
    if len(T) != len(S):
        raise VerificationError(f"index condition fails at {a}: {len(T)} left vs {len(S)} right cosets")
    Q = tuple(compose(compose(t, a), s) for t, s in zip(T, S))

    hs = H.elements
    left_hits = [frozenset(compose(q, h) for h in hs) for q in Q]
    right_hits = [frozenset(compose(h, q) for h in hs) for q in Q]
    for hits in (left_hits, right_hits):
        if len(set(hits)) != len(Q) or set().union(*hits) != set(members):
            raise VerificationError(f"matched set does not partition the double coset of {a}")
    return MatchingRecord(a, T, S), Q


def common_transversal(G: FiniteGroup, H: SubgroupHandle) -> CommonTransversal:
    provenance = {}
    for dc in double_cosets(G, H):
        record, Q = double_coset_transversal(G, H, dc.representative)
        for t, s, q in zip(record.left_section, record.right_section, Q):
            provenance[q] = (record.double_coset_rep, t, s)
    return CommonTransversal(tuple(sorted(provenance)), provenance)


@dataclass(frozen=True)
class TransversalReport:
    is_left: bool
    is_right: bool
    defects: tuple[dict, ...]

    @property
    def is_common(self) -> bool:
        return self.is_left and self.is_right


def _side_defects(side: str, cosets, T) -> list[dict]:
    hits = dict.fromkeys(cosets.representatives, 0)
    for t in T:
        hits[cosets.block_of(t)] += 1
    out = []
    for rep, n in hits.items():
        if n == 0:
            out.append({"side": side, "kind": "missed", "coset": rep})
        elif n > 1:
            out.append({"side": side, "kind": "doubly_hit", "coset": rep, "hits": n})
    return out


def verify_transversal(G: FiniteGroup, H: SubgroupHandle, T) -> TransversalReport:
    """Check whether ``T`` meets every left / right coset of H exactly once.

    Defects name the coset by its canonical representative; at most
    ``MAX_DEFECTS`` are kept.
    """
    _check_parent(G, H)
    T = list(T)
    G.require(*T)
    left = _side_defects("left", left_cosets(G, H), T)
    right = _side_defects("right", right_cosets(G, H), T)
    return TransversalReport(
        is_left=not left,
        is_right=not right,
        defects=tuple((left + right)[:MAX_DEFECTS]),
    )
