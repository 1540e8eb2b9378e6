"""Exact permutation groups.

Permutations are stored as 1-based image tuples. Composition is right to
left throughout the package: ``compose(p, q)(i) == p(q(i))``, so ``q`` is
applied first. Group elements are kept sorted lexicographically by their
image tuples, and that order is what every "canonical minimum" refers to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapacityError, InputError

MAX_DEGREE = 255
DEFAULT_CAP = 100_000


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if not 1 <= n <= MAX_DEGREE:
            raise InputError(f"degree {n} out of range 1..{MAX_DEGREE}")
        if sorted(images) != list(range(1, n + 1)):
            raise InputError(f"images {list(images)} are not a bijection on 1..{n}")

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Perm:
        """Build from disjoint cycles, e.g. ``Perm.from_cycles(3, (1, 2, 3))``."""
        images = list(range(1, degree + 1))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __invert__(self) -> Perm:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def to_list(self) -> list[int]:
        return list(self.images)


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p∘q``: apply ``q`` first, then ``p``."""
    if p.degree != q.degree:
        raise InputError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Perm(tuple(pi[j - 1] for j in q.images))


def inverse(p: Perm) -> Perm:
    out = [0] * p.degree
    for i, v in enumerate(p.images, 1):
        out[v - 1] = i
    return Perm(tuple(out))


def _as_perm(g, degree: int) -> Perm:
    p = g if isinstance(g, Perm) else Perm(tuple(g))
    if p.degree != degree:
        raise InputError(f"generator {p.to_list()} has degree {p.degree}, expected {degree}")
    return p


@dataclass(frozen=True)
class FiniteGroup:
    """A permutation group together with its full, canonically sorted element list."""

    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._index

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    def index_of(self, g: Perm) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise InputError(f"{g} is not an element of the group") from None

    def require(self, *gs: Perm) -> None:
        for g in gs:
            if g not in self._index:
                raise InputError(f"{g} ({g.to_list()}) is not an element of the group")


def generate_closure(degree: int, generators: Iterable, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Enumerate the group generated by ``generators`` by breadth-first closure.

    Raises ``CapacityError`` as soon as more than ``cap`` elements are found.
    """
    if cap < 1:
        raise InputError("cap must be >= 1")
    if not 1 <= degree <= MAX_DEGREE:
        raise InputError(f"degree out of range: {degree}")
    gens = tuple(_as_perm(g, degree) for g in generators)
    e = Perm.identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > cap:
                        raise CapacityError(cap)
                    nxt.append(h)
        frontier = nxt
    return FiniteGroup(degree, gens, tuple(sorted(seen)))


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup given by sorted indices into ``parent.elements``.

    Closure, identity and inverses are checked on construction.
    """

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        n = len(self.parent)
        if not members or members[0] < 0 or members[-1] >= n:
            raise InputError("subgroup members must be a nonempty set of valid indices")
        els = [self.parent.elements[i] for i in members]
        s = set(els)
        if Perm.identity(self.parent.degree) not in s:
            raise InputError("subgroup does not contain the identity")
        for a in els:
            if inverse(a) not in s:
                raise InputError(f"subgroup not closed under inverse at {a}")
            for b in els:
                if compose(a, b) not in s:
                    raise InputError(f"subgroup not closed under composition at {a}, {b}")
        object.__setattr__(self, "_set", frozenset(els))

    @property
    def elements(self) -> tuple[Perm, ...]:
        return tuple(self.parent.elements[i] for i in self.members)

    @property
    def element_set(self) -> frozenset:
        return self._set

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return g in self._set

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup (generated by all its members)."""
        return FiniteGroup(self.parent.degree, self.elements, self.elements)


def subgroup_from_generators(G: FiniteGroup, gens: Iterable) -> SubgroupHandle:
    gens = [_as_perm(g, G.degree) for g in gens]
    G.require(*gens)
    H = generate_closure(G.degree, gens, cap=len(G))
    return SubgroupHandle(G, tuple(G.index_of(h) for h in H.elements))


def subgroup_from_elements(G: FiniteGroup, elements: Iterable[Perm]) -> SubgroupHandle:
    els = list(elements)
    G.require(*els)
    return SubgroupHandle(G, tuple(G.index_of(h) for h in els))


def trivial_subgroup(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, (0,))


def whole_group(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, tuple(range(len(G))))


def all_subgroups(G: FiniteGroup) -> list[SubgroupHandle]:
    """Every subgroup of ``G``, found by repeatedly joining single elements.

    Starts from the cyclic subgroups and adds one element at a time until no
    new subgroup appears. Exponential in general; intended for |G| <= 48.
    """
    found: dict[frozenset, tuple[Perm, ...]] = {}
    frontier = []
    for g in G.elements:
        H = generate_closure(G.degree, [g], cap=len(G))
        key = frozenset(H.elements)
        if key not in found:
            found[key] = (g,)
            frontier.append(key)
    while frontier:
        nxt = []
        for key in frontier:
            gens = found[key]
            for g in G.elements:
                if g in key:
                    continue
                H = generate_closure(G.degree, gens + (g,), cap=len(G))
                k2 = frozenset(H.elements)
                if k2 not in found:
                    found[k2] = gens + (g,)
                    nxt.append(k2)
        frontier = nxt
    subs = [SubgroupHandle(G, tuple(G.index_of(h) for h in key)) for key in found]
    subs.sort(key=lambda H: (H.order, H.members))
    return subs


# Small-group library


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return generate_closure(1, [])
    gens = [Perm.from_cycles(n, (1, 2))]
    if n > 2:
        gens.append(Perm.from_cycles(n, tuple(range(1, n + 1))))
    return generate_closure(n, gens)


def cyclic_group(n: int) -> FiniteGroup:
    """Z/n acting regularly on n points (generated by an n-cycle)."""
    if n == 1:
        return generate_closure(1, [])
    return generate_closure(n, [Perm.from_cycles(n, tuple(range(1, n + 1)))])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n, degree n (D8 is ``dihedral_group(4)``)."""
    rot = Perm.from_cycles(n, tuple(range(1, n + 1)))
    refl = Perm(tuple([1] + list(range(n, 1, -1))))
    return generate_closure(n, [rot, refl])


def quaternion_group() -> FiniteGroup:
    """Q8 in its regular representation on 8 points.

    Points 1..8 stand for 1, i, j, k, -1, -i, -j, -k; the generators are left
    multiplication by i and by j.
    """
    # quaternion units as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def point(sign, axis):
        return axis + 1 if sign > 0 else axis + 5

    def left_mult(axis):
        images = []
        for p in range(1, 9):
            sign, b = (1, p - 1) if p <= 4 else (-1, p - 5)
            s2, c = table[(axis, b)]
            images.append(point(sign * s2, c))
        return Perm(tuple(images))

    return generate_closure(8, [left_mult(1), left_mult(2)])


def small_group_suite() -> dict[str, FiniteGroup]:
    return {
        "S3": symmetric_group(3),
        "S4": symmetric_group(4),
        "D8": dihedral_group(4),
        "Q8": quaternion_group(),
        "Z12": cyclic_group(12),
    }
