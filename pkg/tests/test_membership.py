"""Membership decider tests, including an independent brute-force oracle.

The oracle certifies membership without the fixed-point pruning: it first
collects box states that can return to themselves (each such cycle word is
re-verified by exact expansion evaluation), then asks whether delta reaches
a certified cycle state within a few steps, re-verifying the whole
preperiod-plus-cycle word exactly.  Oracle and decider must agree on every
box state.
"""

from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from tileconn.expansions import eval_expansion, verify_witness
from tileconn.lattice import (
    CharPoly,
    DigitSystem,
    LatticeVec,
    coord_action,
    difference_set,
    enumerate_expanding,
    standard_digits,
)
from tileconn.membership import (
    decide_membership,
    edge_graph,
    is_connected,
    state_box,
    survivors,
)
from tileconn.series import series_sums

ORACLE_DEPTH = 8


def box_of(ds):
    return state_box(ds, series_sums(ds.poly))


def oracle_cycle_states(ds, box):
    """States lying on a cycle of the in-box transition graph, each with a
    concrete cycle word verified by exact evaluation."""
    dd = difference_set(ds)
    action = coord_action(ds.poly)
    out = {}
    for start in box.states():
        # BFS over (state, path) until the walk returns to start
        seen = {start}
        queue = deque([(start, [])])
        found = None
        while queue and found is None:
            state, path = queue.popleft()
            image = action.apply(state)
            for w in dd:
                nxt = (image[0] - w.l, image[1] - w.k)
                if nxt not in box:
                    continue
                if nxt == start:
                    found = path + [w]
                    break
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, path + [w]))
        if found is not None:
            value = eval_expansion(ds.poly, [], found)
            assert (value.l, value.k) == start, "cycle word failed exact check"
            out[start] = found
    return out


def oracle_member(ds, delta, cycles, box):
    """Does delta reach a certified cycle state within ORACLE_DEPTH steps?"""
    delta = LatticeVec(*delta)
    if tuple(delta) not in box:
        return False
    dd = difference_set(ds)
    action = coord_action(ds.poly)
    frontier = {tuple(delta): []}
    for _ in range(ORACLE_DEPTH + 1):
        for state, path in frontier.items():
            if state in cycles:
                value = eval_expansion(ds.poly, path, cycles[state])
                assert (value.l, value.k) == (delta.l, delta.k)
                return True
        nxt = {}
        for state, path in frontier.items():
            image = action.apply(state)
            for w in dd:
                cand = (image[0] - w.l, image[1] - w.k)
                if cand in box and cand not in nxt:
                    nxt[cand] = path + [w]
        frontier = nxt
    return False


class TestStateBox:
    def test_worked_example_k2(self):
        ds = DigitSystem(CharPoly(1, 3), standard_digits(2))
        assert box_of(ds) == (4, 1)

    def test_worked_example_k1(self):
        ds = DigitSystem(CharPoly(1, 3), standard_digits(1))
        assert box_of(ds) == (2, 1)

    def test_singleton_digit_set(self):
        ds = DigitSystem(CharPoly(1, 3), [(0, 0)])
        assert box_of(ds) == (0, 0)

    def test_contains(self):
        ds = DigitSystem(CharPoly(1, 3), standard_digits(1))
        box = box_of(ds)
        assert (2, 1) in box and (-2, -1) in box
        assert (3, 0) not in box and (0, 2) not in box


class TestDecideMembership:
    def test_zero_is_always_a_member(self):
        ds = DigitSystem(CharPoly(2, 3), standard_digits(4))
        outcome = decide_membership(ds, LatticeVec(0, 0))
        assert outcome.member
        assert outcome.witness.preperiod == ()
        assert outcome.witness.period == ((0, 0),)

    def test_v_member_for_q3_k1(self):
        ds = DigitSystem(CharPoly(0, 3), standard_digits(1))
        outcome = decide_membership(ds, LatticeVec(1, 0))
        assert outcome.member
        assert verify_witness(ds, LatticeVec(1, 0), outcome.witness)

    def test_av_member_for_p1q3_k1(self):
        ds = DigitSystem(CharPoly(1, 3), standard_digits(1))
        assert decide_membership(ds, LatticeVec(0, 1)).member

    def test_nonmember_outside_box(self):
        ds = DigitSystem(CharPoly(0, 3), standard_digits(2))
        outcome = decide_membership(ds, LatticeVec(0, 2))
        assert not outcome.member and outcome.witness is None

    def test_witnesses_verify_for_all_sweep_members(self):
        for poly in enumerate_expanding(3):
            for k in (1, -1):
                ds = DigitSystem(poly, standard_digits(k))
                for i in range(3):
                    for j in range(3):
                        if i == j:
                            continue
                        delta = ds.digits[i] - ds.digits[j]
                        outcome = decide_membership(ds, delta)
                        if outcome.member:
                            assert verify_witness(ds, delta, outcome.witness)

    def test_negation_symmetry(self):
        for poly in enumerate_expanding(3):
            for k in (1, 2, -3):
                ds = DigitSystem(poly, standard_digits(k))
                box = box_of(ds)
                for s in box.states():
                    d = LatticeVec(*s)
                    assert decide_membership(ds, d).member == decide_membership(ds, -d).member


class TestSurvivorsRobustness:
    def test_box_enlargement_changes_nothing(self):
        for poly in enumerate_expanding(3):
            for k in (1, -2):
                ds = DigitSystem(poly, standard_digits(k))
                base = survivors(ds)
                padded = survivors(ds, margin=2)
                box = box_of(ds)
                assert {s for s in padded if s in box} == base

    def test_survivors_closed_under_transition(self):
        ds = DigitSystem(CharPoly(1, 3), standard_digits(1))
        alive = survivors(ds)
        action = coord_action(ds.poly)
        dd = difference_set(ds)
        for s in alive:
            image = action.apply(s)
            assert any((image[0] - w.l, image[1] - w.k) in alive for w in dd)


class TestOracleEquivalence:
    @pytest.mark.parametrize("k", [1, -1, 2, -2])
    def test_decider_matches_brute_force(self, k):
        for poly in enumerate_expanding(3):
            ds = DigitSystem(poly, standard_digits(k))
            box = box_of(ds)
            cycles = oracle_cycle_states(ds, box)
            for s in box.states():
                expected = oracle_member(ds, s, cycles, box)
                assert decide_membership(ds, LatticeVec(*s)).member == expected, (poly, k, s)


class TestEdgeGraph:
    def test_q3_k1_has_both_edges_to_zero(self):
        ds = DigitSystem(CharPoly(0, 3), standard_digits(1))
        graph = edge_graph(ds)
        assert (0, 1) in graph.edges and (0, 2) in graph.edges

    def test_q3_k2_isolates_scaled_digit(self):
        ds = DigitSystem(CharPoly(0, 3), standard_digits(2))
        graph = edge_graph(ds)
        assert all(2 not in edge for edge in graph.edges)

    def test_singleton_graph(self):
        ds = DigitSystem(CharPoly(1, 3), [(0, 0)])
        assert edge_graph(ds).edges == frozenset()


class TestIsConnected:
    def test_examples(self):
        assert is_connected(DigitSystem(CharPoly(1, 3), standard_digits(1)))
        assert not is_connected(DigitSystem(CharPoly(1, 3), standard_digits(2)))
        assert is_connected(DigitSystem(CharPoly(1, -3), standard_digits(-1)))

    def test_single_digit_connected(self):
        assert is_connected(DigitSystem(CharPoly(1, 3), [(0, 0)]))

    @given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
    @settings(max_examples=25)
    def test_translation_invariance(self, shift):
        # the verdict only depends on digit differences
        base = [(0, 0), (1, 0), (0, 1)]
        moved = [(l + shift[0], k + shift[1]) for l, k in base]
        poly = CharPoly(1, 3)
        assert is_connected(DigitSystem(poly, base)) == is_connected(DigitSystem(poly, moved))

    def test_witness_words_stay_in_difference_set(self):
        ds = DigitSystem(CharPoly(3, 3), standard_digits(-1))
        dd = set(difference_set(ds))
        for i in range(3):
            for j in range(i + 1, 3):
                outcome = decide_membership(ds, ds.digits[i] - ds.digits[j])
                if outcome.member:
                    for d in outcome.witness.preperiod + outcome.witness.period:
                        assert d in dd
