"""Batch verification of the connectedness criterion across instances.

Runs the decision engine over every expanding polynomial with |q| = 3 and a
range of k values for the digit set {0, v, k*Av}, checks the expected
verdict (connected exactly when |k| = 1), the p -> -p, k -> -k mirror
equivalence, and the two always-connected companion digit sets
{0, v, Av + v} and {0, v, -Av + v}.  Reports serialize to a line format and
a JSON format; both omit timing so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Optional

from .expansions import Witness, verify_witness
from .lattice import CharPoly, DigitSystem, LatticeVec, enumerate_expanding, standard_digits
from .membership import decide_membership, edge_graph, is_connected

SWEEP_DET_ABS = 3
JSON_SCHEMA = "tileconn-sweep/1"


@dataclass(frozen=True)
class EdgeWitness:
    edge: tuple[int, int]
    delta: LatticeVec
    witness: Witness


@dataclass(frozen=True)
class SweepEntry:
    poly: CharPoly
    k: int
    connected: bool
    edges: tuple[tuple[int, int], ...]
    runtime_ms: float
    witnesses: Optional[tuple[EdgeWitness, ...]] = None


@dataclass(frozen=True)
class SweepReport:
    k_lo: int
    k_hi: int
    entries: tuple[SweepEntry, ...]
    theorem_verdict: bool

    @property
    def connected_count(self) -> int:
        return sum(1 for e in self.entries if e.connected)


def _k_values(k_lo: int, k_hi: int) -> list[int]:
    if k_lo > k_hi:
        raise ValueError("empty k range")
    return [k for k in range(k_lo, k_hi + 1) if k != 0]


def _spanning_witnesses(ds: DigitSystem, edges) -> tuple[EdgeWitness, ...]:
    # witnesses for a spanning subset of edges: grow components greedily
    reached = {0}
    chosen = []
    remaining = sorted(edges)
    grew = True
    while grew:
        grew = False
        for edge in remaining:
            i, j = edge
            if (i in reached) != (j in reached):
                reached.update(edge)
                chosen.append(edge)
                grew = True
    out = []
    for i, j in chosen:
        delta = ds.digits[i] - ds.digits[j]
        outcome = decide_membership(ds, delta)
        if not (outcome.member and verify_witness(ds, delta, outcome.witness)):
            raise AssertionError(f"edge {i}-{j} lost its verified witness")
        out.append(EdgeWitness((i, j), delta, outcome.witness))
    return tuple(out)


def sweep_theorem(k_lo: int, k_hi: int, include_witnesses: bool = False) -> SweepReport:
    """Decide every (poly, k) instance and compare against |k| == 1."""
    entries = []
    verdict = True
    for poly in enumerate_expanding(SWEEP_DET_ABS):
        for k in _k_values(k_lo, k_hi):
            started = time.perf_counter()
            ds = DigitSystem(poly, standard_digits(k))
            graph = edge_graph(ds)
            connected = is_connected(ds)
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            witnesses = None
            if include_witnesses and connected:
                witnesses = _spanning_witnesses(ds, graph.edges)
            entries.append(
                SweepEntry(poly, k, connected, tuple(sorted(graph.edges)), elapsed_ms, witnesses)
            )
            if connected != (abs(k) == 1):
                verdict = False
    return SweepReport(k_lo, k_hi, tuple(entries), verdict)


def mirror_check(k_lo: int, k_hi: int) -> bool:
    """Connectedness agrees between (p, q, k) and (-p, q, -k) instances."""
    for poly in enumerate_expanding(SWEEP_DET_ABS):
        mirrored = CharPoly(-poly.p, poly.q)
        for k in _k_values(k_lo, k_hi):
            a = is_connected(DigitSystem(poly, standard_digits(k)))
            b = is_connected(DigitSystem(mirrored, standard_digits(-k)))
            if a != b:
                return False
    return True


_COMPANION_DIGITS = (
    (LatticeVec(0, 0), LatticeVec(1, 0), LatticeVec(1, 1)),
    (LatticeVec(0, 0), LatticeVec(1, 0), LatticeVec(1, -1)),
)


def corollary_check() -> bool:
    """The digit sets {0, v, Av + v} and {0, v, -Av + v} are connected for
    every eligible polynomial."""
    for poly in enumerate_expanding(SWEEP_DET_ABS):
        for digits in _COMPANION_DIGITS:
            if not is_connected(DigitSystem(poly, digits)):
                return False
    return True


def report_lines(report: SweepReport) -> str:
    """Line-oriented serialization, one record per instance.

    Format: "p=<int> q=<int> k=<int> connected=<0|1> edges=<i-j,...|->"
    followed by a final "theorem_verdict=<0|1>" line.  Deterministic;
    timing is deliberately excluded.
    """
    lines = []
    for e in report.entries:
        edges = ",".join(f"{i}-{j}" for i, j in e.edges) or "-"
        lines.append(
            f"p={e.poly.p} q={e.poly.q} k={e.k} connected={int(e.connected)} edges={edges}"
        )
    lines.append(f"theorem_verdict={int(report.theorem_verdict)}")
    return "\n".join(lines) + "\n"


def _witness_json(ew: EdgeWitness) -> dict:
    return {
        "edge": list(ew.edge),
        "delta": [ew.delta.l, ew.delta.k],
        "preperiod": [[d.l, d.k] for d in ew.witness.preperiod],
        "period": [[d.l, d.k] for d in ew.witness.period],
    }


def report_json(report: SweepReport) -> str:
    """Structured serialization; see README for the schema. Deterministic."""
    entries = []
    for e in report.entries:
        record = {
            "p": e.poly.p,
            "q": e.poly.q,
            "k": e.k,
            "connected": e.connected,
            "edges": [list(edge) for edge in e.edges],
        }
        if e.witnesses is not None:
            record["witnesses"] = [_witness_json(ew) for ew in e.witnesses]
        entries.append(record)
    doc = {
        "schema": JSON_SCHEMA,
        "k_range": [report.k_lo, report.k_hi],
        "entries": entries,
        "connected_count": report.connected_count,
        "theorem_verdict": report.theorem_verdict,
    }
    return json.dumps(doc, indent=2) + "\n"
