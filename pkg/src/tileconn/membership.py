"""Exact membership decisions for lattice vectors in T - T.

T is the attractor of the digit system: the set of sums of A^{-i} d_i over
infinite digit strings.  A lattice vector delta lies in T - T exactly when
delta admits an infinite expansion in digits from the difference set, which
reduces to a finite-graph question: walk delta through the state map
s -> A s - w (w in the difference set) and ask for an infinite path.  Any
state on a valid walk is itself a vector of T - T, so all walks live inside
an analytic coordinate box derived from the certified series bounds; inside
that finite box the states admitting infinite paths are the greatest fixed
point of "has a successor that survives".  Pruning to that fixed point and
then walking greedily yields an eventually periodic witness word, which is
re-verified by exact evaluation.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional

from .expansions import Witness, eval_expansion
from .lattice import (
    CharPoly,
    DigitSystem,
    LatticeVec,
    coord_action,
    difference_set,
    floor_fraction,
)
from .series import SeriesBounds, series_sums


class StateBox(NamedTuple):
    """Symmetric coordinate box |l| <= l_max, |k| <= k_max."""

    l_max: int
    k_max: int

    def __contains__(self, vec) -> bool:
        return abs(vec[0]) <= self.l_max and abs(vec[1]) <= self.k_max

    def states(self) -> list[tuple[int, int]]:
        return [
            (l, k)
            for l in range(-self.l_max, self.l_max + 1)
            for k in range(-self.k_max, self.k_max + 1)
        ]


class MembershipOutcome(NamedTuple):
    member: bool
    witness: Optional[Witness]


class EdgeGraph(NamedTuple):
    """Digits as vertices; an edge i-j means d_i - d_j lies in T - T."""

    vertices: tuple[LatticeVec, ...]
    edges: frozenset[tuple[int, int]]


def state_box(ds: DigitSystem, bounds: SeriesBounds) -> StateBox:
    """Box containing every lattice vector of T - T.

    Expanding delta = sum A^{-i} (l_i v + k_i Av) in coordinates gives
    l(delta) = k_1 + sum (k_{i+1} + l_i) alpha_i and
    k(delta) = sum (k_{i+1} + l_i) beta_i, so with c the largest |k' + l|
    over difference-set pairs and K the largest |k| coordinate,
    |l(delta)| <= K + c * sum|alpha| and |k(delta)| <= c * sum|beta|.
    """
    dd = difference_set(ds)
    k_coord_max = max(abs(d.k) for d in dd)
    c = max(abs(a.k + b.l) for a in dd for b in dd)
    l_max = floor_fraction(k_coord_max + c * bounds.alpha_upper)
    k_max = floor_fraction(c * bounds.beta_upper)
    return StateBox(l_max, k_max)


def _walk_order(digits) -> list[LatticeVec]:
    # graded order, so the zero digit is tried first and the all-zero word
    # wins for delta = 0
    return sorted(digits, key=lambda d: (abs(d.l) + abs(d.k), d))


@lru_cache(maxsize=None)
def _survivor_set(
    poly: CharPoly, dd: tuple[LatticeVec, ...], margin: int
) -> tuple[StateBox, frozenset[tuple[int, int]]]:
    bounds = series_sums(poly)
    k_coord_max = max(abs(d.k) for d in dd)
    c = max(abs(a.k + b.l) for a in dd for b in dd)
    box = StateBox(
        floor_fraction(k_coord_max + c * bounds.alpha_upper) + margin,
        floor_fraction(c * bounds.beta_upper) + margin,
    )
    p, q = poly.p, poly.q
    alive = set(box.states())
    changed = True
    while changed:
        changed = False
        for s in list(alive):
            image_l = -q * s[1]
            image_k = s[0] - p * s[1]
            if not any((image_l - w.l, image_k - w.k) in alive for w in dd):
                alive.discard(s)
                changed = True
    return box, frozenset(alive)


def survivors(ds: DigitSystem, margin: int = 0) -> frozenset[tuple[int, int]]:
    """States of the box (enlarged by margin) that admit infinite walks.

    These are exactly the lattice vectors of T - T; enlarging the box must
    not change the set, which the tests exercise.
    """
    dd = tuple(difference_set(ds))
    _, alive = _survivor_set(ds.poly, dd, margin)
    return alive


def decide_membership(ds: DigitSystem, delta: LatticeVec) -> MembershipOutcome:
    """Decide delta in T - T; members come with a verified periodic witness."""
    delta = LatticeVec(int(delta[0]), int(delta[1]))
    dd = tuple(difference_set(ds))
    box, alive = _survivor_set(ds.poly, dd, 0)
    if delta not in box or tuple(delta) not in alive:
        return MembershipOutcome(False, None)

    order = _walk_order(dd)
    action = coord_action(ds.poly)
    seen: dict[tuple[int, int], int] = {}
    word: list[LatticeVec] = []
    state = tuple(delta)
    while state not in seen:
        seen[state] = len(word)
        image = action.apply(state)
        for w in order:
            nxt = (image[0] - w.l, image[1] - w.k)
            if nxt in alive:
                word.append(w)
                state = nxt
                break
        else:
            raise AssertionError("survivor state lost all successors")
    start = seen[state]
    witness = Witness(tuple(word[:start]), tuple(word[start:]))
    value = eval_expansion(ds.poly, witness.preperiod, witness.period)
    if (value.l, value.k) != (delta.l, delta.k):
        raise AssertionError(f"extracted witness failed exact re-evaluation for {delta}")
    return MembershipOutcome(True, witness)


def edge_graph(ds: DigitSystem) -> EdgeGraph:
    """Graph on digit indices with edges where the digit difference is in T - T."""
    digits = ds.digits
    edges = set()
    for i in range(len(digits)):
        for j in range(i + 1, len(digits)):
            if decide_membership(ds, digits[i] - digits[j]).member:
                edges.add((i, j))
    return EdgeGraph(digits, frozenset(edges))


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def is_connected(ds: DigitSystem) -> bool:
    """True iff the edge graph links all digits into one component.

    The attractor is connected exactly in that case, and the verdict only
    depends on the difference set, so translating all digits by a common
    vector never changes it.
    """
    graph = edge_graph(ds)
    uf = _UnionFind(len(graph.vertices))
    for i, j in graph.edges:
        uf.union(i, j)
    root = uf.find(0)
    return all(uf.find(i) == root for i in range(len(graph.vertices)))
