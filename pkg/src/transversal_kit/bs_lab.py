"""Exact arithmetic in BS(1,2) = Z[1/2] ⋊ <b> and the 2-adic scale lattice.

Elements are pairs (q, n) with q dyadic and n an integer; the product is
(q1, n1)·(q2, n2) = (q1 + 2**n1 · q2, n1 + n2), so b = (0, 1) acts on the
normal subgroup by doubling and a = (1, 0) generates the copy of Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


@dataclass(frozen=True)
class Dyadic:
    """numerator · 2**exponent, normalised so the numerator is odd (or the value is 0/0)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        m, e = int(self.numerator), int(self.exponent)
        if m == 0:
            e = 0
        else:
            tz = (m & -m).bit_length() - 1
            m >>= tz
            e += tz
        object.__setattr__(self, "numerator", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def of(cls, value) -> Dyadic:
        """Coerce an int, Fraction, Dyadic or string like ``"-3/8"`` / ``"0.5"``."""
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise InputError(f"cannot parse {value!r} as a rational number") from None
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise InputError(f"expected an exact rational, got {value!r}")
        f = Fraction(value)
        d = f.denominator
        if d & (d - 1):
            raise InputError(f"{f} is not dyadic (denominator {d} is not a power of 2)")
        return cls(f.numerator, -(d.bit_length() - 1))

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.numerator << self.exponent)
        return Fraction(self.numerator, 1 << -self.exponent)

    def is_integer(self) -> bool:
        return self.exponent >= 0

    def shift(self, k: int) -> Dyadic:
        """Multiply by 2**k."""
        return Dyadic(self.numerator, self.exponent + k)

    def __add__(self, other) -> Dyadic:
        other = Dyadic.of(other)
        e = min(self.exponent, other.exponent)
        m = (self.numerator << (self.exponent - e)) + (other.numerator << (other.exponent - e))
        return Dyadic(m, e)

    __radd__ = __add__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.numerator, self.exponent)

    def __sub__(self, other) -> Dyadic:
        return self + (-Dyadic.of(other))

    def __str__(self) -> str:
        return str(self.to_fraction())


ZERO = Dyadic(0)


@dataclass(frozen=True)
class BSElement:
    q: Dyadic
    n: int

    def __post_init__(self):
        object.__setattr__(self, "q", Dyadic.of(self.q))
        object.__setattr__(self, "n", int(self.n))

    def __mul__(self, other: BSElement) -> BSElement:
        return bs_mul(self, other)

    def __str__(self) -> str:
        return f"({self.q}, {self.n})"


A = BSElement(Dyadic(1), 0)
B = BSElement(ZERO, 1)
IDENTITY = BSElement(ZERO, 0)


def bs_mul(x: BSElement, y: BSElement) -> BSElement:
    return BSElement(x.q + y.q.shift(x.n), x.n + y.n)


def bs_inv(x: BSElement) -> BSElement:
    return BSElement((-x.q).shift(-x.n), -x.n)


def in_z(x: BSElement) -> bool:
    """Membership in the subgroup Z = <a> = {(m, 0)}."""
    return x.n == 0 and x.q.is_integer()


def bs_indices(x: BSElement) -> tuple[int, int]:
    """``([Z : Z∩xZx⁻¹], [Z : Z∩x⁻¹Zx])`` for H = <a>.

    Conjugation by (q, n) sends (m, 0) to (2**n · m, 0), so xZx⁻¹ = 2**n Z.
    """
    return 2 ** max(x.n, 0), 2 ** max(-x.n, 0)


def brute_force_indices(x: BSElement, window: int = 64) -> tuple[int, int]:
    """Count cosets of Z inside ZxZ directly from the group law.

    Left cosets in ZxZ are (h·x)Z for h in Z; two coincide iff
    (h x)⁻¹(h' x) ∈ Z. Right cosets Z(x·h) are compared via
    (x h)(x h')⁻¹ ∈ Z. The coset pattern is periodic in h, so sampling
    h = (m, 0) for |m| <= window finds every class once the window exceeds the
    period; this is only checked by comparing with larger windows.
    """
    hs = [BSElement(Dyadic(m), 0) for m in range(-window, window + 1)]

    def classes(elements, same) -> int:
        reps: list[BSElement] = []
        for g in elements:
            if not any(same(r, g) for r in reps):
                reps.append(g)
        return len(reps)

    left = classes([bs_mul(h, x) for h in hs], lambda u, v: in_z(bs_mul(bs_inv(u), v)))
    right = classes([bs_mul(x, h) for h in hs], lambda u, v: in_z(bs_mul(u, bs_inv(v))))
    return left, right


@dataclass(frozen=True)
class DoubleCosetReport:
    element: BSElement
    left_count: int
    right_count: int

    @property
    def index_condition_holds(self) -> bool:
        return self.left_count == self.right_count

    @property
    def conclusion(self) -> str:
        if self.index_condition_holds:
            return (f"double coset Z{self.element}Z holds {self.left_count} left and "
                    f"{self.right_count} right cosets; index condition holds here")
        return (f"witness x = {self.element}: Z x Z contains {self.left_count} left cosets but "
                f"{self.right_count} right cosets, so Z has no common transversal in BS(1,2)")


def bs_double_coset_report(x: BSElement) -> DoubleCosetReport:
    left, right = bs_indices(x)
    return DoubleCosetReport(x, left, right)


@dataclass(frozen=True, order=True)
class SolenoidSubgroup:
    """The subgroup 2**scale · Z_2 of the 2-adic fiber lattice."""

    scale: int

    def index_in(self, bigger: SolenoidSubgroup) -> int:
        if self.scale < bigger.scale:
            raise InputError(f"2^{self.scale}Z_2 is not a subgroup of 2^{bigger.scale}Z_2")
        return 2 ** (self.scale - bigger.scale)

    def intersect(self, other: SolenoidSubgroup) -> SolenoidSubgroup:
        return SolenoidSubgroup(max(self.scale, other.scale))

    def conjugate(self, n: int) -> SolenoidSubgroup:
        """b**n · L · b**-n; b acts on the fiber by multiplication with 2."""
        return SolenoidSubgroup(self.scale + n)


Z2 = SolenoidSubgroup(0)


def solenoid_indices(n: int) -> tuple[int, int]:
    """``([Z_2 : Z_2 ∩ b^n Z_2 b^-n], [Z_2 : Z_2 ∩ b^-n Z_2 b^n])``."""
    left = Z2.intersect(Z2.conjugate(n)).index_in(Z2)
    right = Z2.intersect(Z2.conjugate(-n)).index_in(Z2)
    return left, right
