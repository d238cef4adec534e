"""Exact evaluation of eventually periodic radix expansions.

A word (pre, per) with digits w_1..w_m and u_1..u_P denotes the vector

    sum_{i<=m} A^{-i} w_i  +  A^{-m} (I - A^{-P})^{-1} sum_{j<=P} A^{-j} u_j,

i.e. the value of the infinite digit string w_1..w_m (u_1..u_P)^omega in
inverse powers of A.  Evaluation is exact over the rationals, in (v, Av)
coordinates.  The module also carries a catalog of eventually periodic
identities for the ten expanding polynomials with |q| = 3 and both signs of
k, used as a verification corpus for the membership decider.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .lattice import (
    CharPoly,
    DigitSystem,
    LatticeVec,
    Mat2,
    coord_action,
    difference_set,
    is_expanding,
    standard_digits,
)


class RationalVec(NamedTuple):
    l: Fraction
    k: Fraction


class Witness(NamedTuple):
    """Eventually periodic digit word: preperiod then repeating period."""

    preperiod: tuple[LatticeVec, ...]
    period: tuple[LatticeVec, ...]


def _as_word(digits: Iterable) -> tuple[LatticeVec, ...]:
    return tuple(LatticeVec(int(d[0]), int(d[1])) for d in digits)


def eval_expansion(poly: CharPoly, pre: Iterable, per: Iterable) -> RationalVec:
    """Exact value of the eventually periodic word (pre, per).

    Digits are arbitrary lattice vectors; validity against a concrete digit
    system is a separate concern (see verify_witness).  The period must be
    nonempty, and the polynomial expanding so the series converges.
    """
    if not is_expanding(poly):
        raise ValueError(f"{poly} is not expanding")
    pre_w = _as_word(pre)
    per_w = _as_word(per)
    if not per_w:
        raise ValueError("period must be nonempty")
    inv = coord_action(poly).inverse()

    acc_l = Fraction(0)
    acc_k = Fraction(0)
    power = Mat2.identity()
    for d in pre_w:
        power = power * inv
        x, y = power.apply(d)
        acc_l += x
        acc_k += y
    shift = power  # inv^len(pre)

    per_l = Fraction(0)
    per_k = Fraction(0)
    power = Mat2.identity()
    for d in per_w:
        power = power * inv
        x, y = power.apply(d)
        per_l += x
        per_k += y
    resolvent = (Mat2.identity() - power).inverse()
    tail = shift.apply(resolvent.apply((per_l, per_k)))
    return RationalVec(acc_l + tail[0], acc_k + tail[1])


def verify_witness(ds: DigitSystem, delta: LatticeVec, w: Witness) -> bool:
    """True iff every digit of w lies in the difference set of ds and the
    word evaluates exactly to delta."""
    allowed = set(difference_set(ds))
    if any(d not in allowed for d in w.preperiod + w.period):
        return False
    value = eval_expansion(ds.poly, w.preperiod, w.period)
    return value == RationalVec(Fraction(delta[0]), Fraction(delta[1]))


class CorpusItem(NamedTuple):
    """One catalogued identity: the word evaluates to delta, and delta is a
    member of T - T for the digit system (poly, {0, v, k*Av}).

    word_in_dd records whether every digit of the word lies in the
    difference set of that system; a handful of catalog entries use raw
    digits like 2v outside it and certify membership only through the
    decider.
    """

    label: str
    poly: CharPoly
    k: int
    delta: LatticeVec
    witness: Witness
    word_in_dd: bool


def _item(label, p, q, k, delta, pre, per, word_in_dd):
    return CorpusItem(
        label,
        CharPoly(p, q),
        k,
        LatticeVec(*delta),
        Witness(_as_word(pre), _as_word(per)),
        word_in_dd,
    )


_CORPUS: tuple[CorpusItem, ...] = (
    # x^2 + 3
    _item("p0q3.k1.v.halved-identity", 0, 3, 1, (1, 0), [], [(0, 0), (-2, 0), (0, 0), (2, 0)], False),
    _item("p0q3.k1.v", 0, 3, 1, (1, 0), [(0, 0)], [(-1, 0), (0, -1), (1, 0), (0, 1)], True),
    _item("p0q3.k1.av", 0, 3, 1, (0, 1), [], [(-1, 0), (0, -1), (1, 0), (0, 1)], True),
    _item("p0q3.km1.v", 0, 3, -1, (1, 0), [(0, 0)], [(-1, 0), (0, -1), (1, 0), (0, 1)], True),
    _item("p0q3.km1.av", 0, 3, -1, (0, 1), [], [(-1, 0), (0, -1), (1, 0), (0, 1)], True),
    # x^2 + x + 3
    _item("p1q3.k1.v.block-form", 1, 3, 1, (1, 0), [], [(0, 0), (0, 0), (2, -2)], False),
    _item("p1q3.k1.v", 1, 3, 1, (1, 0), [(0, 0)], [(-1, 0), (1, -1), (0, 1)], True),
    _item("p1q3.k1.av", 1, 3, 1, (0, 1), [], [(-1, 0), (1, -1), (0, 1)], True),
    _item("p1q3.km1.v.raw", 1, 3, -1, (1, 0), [], [(-1, 0), (-2, 0), (1, 0), (2, 0)], False),
    _item("p1q3.km1.v", 1, 3, -1, (1, 0), [(0, 0)], [(-1, -1), (0, -1), (1, 1), (0, 1)], True),
    _item("p1q3.km1.av", 1, 3, -1, (0, 1), [], [(-1, -1), (0, -1), (1, 1), (0, 1)], True),
    # x^2 + 2x + 3
    _item("p2q3.k1.v", 2, 3, 1, (1, 0), [(-1, 0)], [(-1, 0), (1, 0), (-1, 1)], True),
    # The catalogued word for Av opens with the combined digit -v - Av,
    # which is outside the k = 1 difference set; membership of Av itself is
    # still confirmed by the decider.
    _item("p2q3.k1.av", 2, 3, 1, (0, 1), [(-1, -1), (1, 0), (-1, 1)], [(-1, 0), (1, 0), (-1, 1)], False),
    _item("p2q3.km1.v.raw", 2, 3, -1, (1, 0), [], [(-1, 0), (-1, 0), (2, 0)], False),
    _item("p2q3.km1.v", 2, 3, -1, (1, 0), [(-1, 0), (-1, 0)], [(1, 0), (0, 1), (-1, -1)], True),
    _item("p2q3.km1.av+v", 2, 3, -1, (1, 1), [(-1, 0)], [(1, 0), (0, 1), (-1, -1)], True),
    # x^2 + 3x + 3
    _item("p3q3.k1.v.raw", 3, 3, 1, (1, 0), [(-1, 0), (1, 0)], [(2, 0), (-2, 0)], False),
    _item("p3q3.k1.v", 3, 3, 1, (1, 0), [(0, 0), (1, -1), (1, 0)], [(-1, 1), (1, -1)], True),
    _item("p3q3.k1.av", 3, 3, 1, (0, 1), [(1, -1), (1, 0)], [(-1, 1), (1, -1)], True),
    _item("p3q3.km1.v.raw", 3, 3, -1, (1, 0), [(-2, 0), (-1, 0)], [(1, 0), (-1, 0)], False),
    _item("p3q3.km1.v", 3, 3, -1, (1, 0), [(-1, 0), (-1, -1)], [(1, 0), (-1, 0)], True),
    _item("p3q3.km1.av+v", 3, 3, -1, (1, 1), [(-1, -1)], [(1, 0), (-1, 0)], True),
    # x^2 + x - 3
    _item("p1qm3.k1.v.raw", 1, -3, 1, (1, 0), [], [(-1, 0), (2, 0)], False),
    _item("p1qm3.k1.v", 1, -3, 1, (1, 0), [(0, 0), (1, -1)], [(-1, 1), (1, 0)], True),
    _item("p1qm3.k1.av", 1, -3, 1, (0, 1), [(1, -1)], [(-1, 1), (1, 0)], True),
    _item("p1qm3.km1.v", 1, -3, -1, (1, 0), [(0, 1)], [(0, 0)], True),
    _item("p1qm3.km1.av+v", 1, -3, -1, (1, 1), [(0, -1)], [(0, 1)], True),
    # x^2 - x + 3, transported from x^2 + x + 3 by the sign mirror; blocks
    # alternate in sign, so the period doubles to length 6.
    _item(
        "pm1q3.km1.v", -1, 3, -1, (1, 0),
        [(0, 0)], [(-1, 0), (-1, -1), (0, -1), (1, 0), (1, 1), (0, 1)], True,
    ),
    _item(
        "pm1q3.km1.av", -1, 3, -1, (0, 1),
        [], [(-1, 0), (-1, -1), (0, -1), (1, 0), (1, 1), (0, 1)], True,
    ),
)


def expansion_catalog() -> list[CorpusItem]:
    """The built-in catalog of verified expansion identities."""
    return list(_CORPUS)


def corpus_digit_systems() -> dict[tuple[CharPoly, int], DigitSystem]:
    """Digit systems referenced by the catalog, keyed by (poly, k)."""
    out: dict[tuple[CharPoly, int], DigitSystem] = {}
    for item in _CORPUS:
        key = (item.poly, item.k)
        if key not in out:
            out[key] = DigitSystem(item.poly, standard_digits(item.k))
    return out
