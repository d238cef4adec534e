"""Integer lattice foundation for planar self-affine digit systems.

Everything downstream works in (v, Av)-coordinates: the pair (l, k) stands
for the lattice vector l*v + k*Av, where A is a 2x2 integer matrix with
characteristic polynomial x^2 + p*x + q and v is a vector making (v, Av) a
basis of the lattice it spans.  In these coordinates the action of A is the
companion matrix [[0, -q], [1, -p]], so no concrete matrix entries are ever
needed; a digit system is fully described by (p, q) and a list of (l, k)
pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

Entry = Union[int, Fraction]


class LatticeVec(NamedTuple):
    """Lattice point l*v + k*Av, stored as its coordinate pair."""

    l: int
    k: int

    def __neg__(self) -> "LatticeVec":
        return LatticeVec(-self.l, -self.k)

    def __add__(self, other) -> "LatticeVec":
        return LatticeVec(self.l + other[0], self.k + other[1])

    def __sub__(self, other) -> "LatticeVec":
        return LatticeVec(self.l - other[0], self.k - other[1])

    def __str__(self) -> str:
        return f"({self.l},{self.k})"


@dataclass(frozen=True)
class CharPoly:
    """Monic quadratic x^2 + p*x + q with integer coefficients, q != 0."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q == 0:
            raise ValueError("q must be nonzero (the matrix must be invertible)")

    @property
    def discriminant(self) -> int:
        return self.p * self.p - 4 * self.q

    def __str__(self) -> str:
        if self.p == 0:
            middle = ""
        elif self.p == 1:
            middle = "+x"
        elif self.p == -1:
            middle = "-x"
        else:
            middle = f"{self.p:+d}x"
        return f"x^2{middle}{self.q:+d}"


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over int/Fraction, rows [[a, b], [c, d]]."""

    a: Entry
    b: Entry
    c: Entry
    d: Entry

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)

    def apply(self, vec) -> tuple:
        x, y = vec
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def pow(self, n: int) -> "Mat2":
        if n < 0:
            raise ValueError("negative powers not supported; invert first")
        out = Mat2.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def det(self) -> Entry:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Entry:
        return self.a + self.d

    def inverse(self) -> "Mat2":
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("matrix is singular")
        return Mat2(
            Fraction(self.d, 1) / det,
            Fraction(-self.b, 1) / det,
            Fraction(-self.c, 1) / det,
            Fraction(self.a, 1) / det,
        )

    def inf_norm(self) -> Entry:
        return max(abs(self.a) + abs(self.b), abs(self.c) + abs(self.d))


# The coordinate action of A: by Cayley-Hamilton A*(Av) = -q*v - p*Av, so
# A sends (l, k) to (-q*k, l - p*k).
CoordAction = Mat2


def coord_action(poly: CharPoly) -> CoordAction:
    """Integer matrix acting on (l, k) coordinates the way A acts on vectors."""
    return Mat2(0, -poly.q, 1, -poly.p)


def is_expanding(poly: CharPoly) -> bool:
    """True iff both roots of the polynomial have modulus strictly above 1.

    Decided exactly from the integer coefficients: complex roots share
    modulus sqrt(q), so q >= 2 settles that branch; for real roots the signs
    of f(1), f(-1) and the vertex position -p/2 settle it.
    """
    p, q = poly.p, poly.q
    if poly.discriminant < 0:
        return q >= 2
    f_pos = 1 + p + q
    f_neg = 1 - p + q
    if f_pos < 0 and f_neg < 0:
        # one real root below -1 and one above +1
        return True
    # both roots on the same side of [-1, 1]: endpoint values positive and
    # the parabola's vertex outside the interval
    return f_pos > 0 and f_neg > 0 and abs(p) > 2


def enumerate_expanding(det_abs: int) -> list[CharPoly]:
    """All expanding x^2 + p*x + q with |q| == det_abs, ordered by (q, p).

    |p| <= |q| + 1 is forced: with both root moduli above 1,
    (|r1| - 1)(|r2| - 1) > 0 gives |r1| + |r2| < |r1*r2| + 1.
    """
    if det_abs < 1:
        raise ValueError("det_abs must be positive")
    found = []
    for q in (-det_abs, det_abs):
        for p in range(-det_abs - 1, det_abs + 2):
            poly = CharPoly(p, q)
            if is_expanding(poly):
                found.append(poly)
    return sorted(found, key=lambda c: (c.q, c.p))


def _as_vecs(digits: Iterable) -> tuple[LatticeVec, ...]:
    return tuple(LatticeVec(int(d[0]), int(d[1])) for d in digits)


@dataclass(frozen=True)
class DigitSystem:
    """An expanding polynomial together with an ordered digit list.

    The digit order is preserved as given; edge reports refer to digits by
    their index in this order.  Canonical three-digit systems (which always
    include the zero digit) come from standard_digits(); arbitrary digit lists
    are accepted so that translated systems stay expressible.
    """

    poly: CharPoly
    digits: tuple[LatticeVec, ...] = field()

    def __init__(self, poly: CharPoly, digits: Iterable) -> None:
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "digits", _as_vecs(digits))
        if not self.digits:
            raise ValueError("digit set must be nonempty")
        if len(set(self.digits)) != len(self.digits):
            raise ValueError("digits must be pairwise distinct")
        if not is_expanding(poly):
            raise ValueError(f"{poly} is not expanding")


def standard_digits(k: int) -> tuple[LatticeVec, ...]:
    """The three-digit set {0, v, k*Av} in coordinates: (0,0), (1,0), (0,k)."""
    if k == 0:
        raise ValueError("k must be nonzero; k = 0 collapses the digit set")
    return (LatticeVec(0, 0), LatticeVec(1, 0), LatticeVec(0, k))


def pairwise_differences(digits: Iterable) -> list[LatticeVec]:
    """Deduplicated set {d - d' : d, d' in digits}, sorted lexicographically."""
    vecs = _as_vecs(digits)
    out = {a - b for a in vecs for b in vecs}
    return sorted(out)


def difference_set(ds: DigitSystem) -> list[LatticeVec]:
    """Difference set of the digit list; always symmetric and contains (0,0)."""
    return pairwise_differences(ds.digits)


def float_roots(poly: CharPoly) -> tuple[complex, complex]:
    """Floating-point roots, for diagnostics and cross-checks only."""
    import cmath

    sq = cmath.sqrt(complex(poly.discriminant))
    return ((-poly.p + sq) / 2, (-poly.p - sq) / 2)


def floor_fraction(x: Fraction) -> int:
    return math.floor(x)
