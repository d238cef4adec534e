"""Command line front end.

Subcommands: decide, sweep, verify-corpus, series, render.  Exact
quantities are printed as rationals.  Exit status is 0 exactly when every
requested verdict or verification passes, 1 when some verdict is negative,
and 2 for usage or validation errors.
"""

from __future__ import annotations

import argparse
import re
import sys

from .expansions import Witness, eval_expansion, expansion_catalog, verify_witness
from .lattice import CharPoly, DigitSystem, LatticeVec, float_roots, is_expanding, standard_digits
from .membership import decide_membership, edge_graph, is_connected
from .render import RenderConfig, default_filename, rasterize, write_image
from .series import alpha_beta, series_sums
from .sweep import corollary_check, mirror_check, report_json, sweep_theorem


class CliError(Exception):
    pass


def _parse_pair(text: str, what: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(f"{what} must be two comma-separated integers, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise CliError(f"{what} must be two comma-separated integers, got {text!r}") from None


def _parse_poly(text: str) -> CharPoly:
    p, q = _parse_pair(text, "--poly")
    try:
        poly = CharPoly(p, q)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if not is_expanding(poly):
        r1, r2 = float_roots(poly)
        culprit = min(r1, r2, key=abs)
        shown = f"{culprit.real:.6g}" if abs(culprit.imag) < 1e-12 else f"{culprit:.6g}"
        raise CliError(
            f"{poly} is not expanding: root {shown} has modulus "
            f"{abs(culprit):.6g}, not above 1"
        )
    return poly


def _parse_digits(text: str) -> tuple[LatticeVec, ...]:
    chunks = [c for c in text.split(";") if c.strip()]
    if not chunks:
        raise CliError("--digits must list at least one l,k pair")
    return tuple(LatticeVec(*_parse_pair(c.strip(), "--digits entry")) for c in chunks)


def _parse_k_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", text.strip())
    if not m:
        raise CliError(f"--k-range must look like -5..5, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise CliError("--k-range must be nondecreasing")
    return lo, hi


def _parse_size(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text.strip())
    if not m:
        raise CliError(f"--size must look like 512x512, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _word_str(word) -> str:
    return ",".join(str(d) for d in word) if word else "-"


def _witness_str(w: Witness) -> str:
    return f"pre={_word_str(w.preperiod)} per={_word_str(w.period)}"


def _cmd_decide(args) -> int:
    poly = _parse_poly(args.poly)
    digits = _parse_digits(args.digits)
    try:
        ds = DigitSystem(poly, digits)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    print(f"poly: {poly}")
    print("digits: " + " ".join(str(d) for d in ds.digits))
    if args.delta is not None:
        delta = LatticeVec(*_parse_pair(args.delta, "--delta"))
        outcome = decide_membership(ds, delta)
        print(f"delta: {delta}")
        print(f"member: {'yes' if outcome.member else 'no'}")
        if outcome.member:
            print(f"witness: {_witness_str(outcome.witness)}")
            ok = verify_witness(ds, delta, outcome.witness)
            print(f"verified: {'exact' if ok else 'FAILED'}")
            return 0 if ok else 1
        return 1
    graph = edge_graph(ds)
    present = sorted(graph.edges)
    for i, j in present:
        delta = ds.digits[i] - ds.digits[j]
        outcome = decide_membership(ds, delta)
        print(f"edge {i}-{j}: delta={delta} {_witness_str(outcome.witness)}")
    missing = [
        (i, j)
        for i in range(len(ds.digits))
        for j in range(i + 1, len(ds.digits))
        if (i, j) not in graph.edges
    ]
    if missing:
        print("missing: " + " ".join(f"{i}-{j}" for i, j in missing))
    connected = is_connected(ds)
    print(f"connected: {'yes' if connected else 'no'}")
    return 0 if connected else 1


def _cmd_sweep(args) -> int:
    lo, hi = _parse_k_range(args.k_range)
    report = sweep_theorem(lo, hi, include_witnesses=args.witnesses)
    print(f"k: {lo}..{hi}  entries: {len(report.entries)}")
    print(f"connected: {report.connected_count}")
    print(f"theorem (connected iff |k|=1): {'PASS' if report.theorem_verdict else 'FAIL'}")
    mirror_ok = mirror_check(lo, hi)
    print(f"mirror (p,k vs -p,-k): {'PASS' if mirror_ok else 'FAIL'}")
    corollary_ok = corollary_check()
    print(f"companion digit sets connected: {'PASS' if corollary_ok else 'FAIL'}")
    if args.report:
        with open(args.report, "w", encoding="ascii") as fh:
            fh.write(report_json(report))
        print(f"report: {args.report}")
    return 0 if (report.theorem_verdict and mirror_ok and corollary_ok) else 1


def _cmd_verify_corpus(args) -> int:
    all_ok = True
    items = expansion_catalog()
    for item in items:
        ds = DigitSystem(item.poly, standard_digits(item.k))
        value = eval_expansion(item.poly, item.witness.preperiod, item.witness.period)
        eval_ok = (value.l, value.k) == (item.delta.l, item.delta.k)
        member_ok = decide_membership(ds, item.delta).member
        word_ok = (not item.word_in_dd) or verify_witness(ds, item.delta, item.witness)
        ok = eval_ok and member_ok and word_ok
        all_ok = all_ok and ok
        status = "ok" if ok else "FAIL"
        print(
            f"[{status}] {item.label}: poly={item.poly} k={item.k} delta={item.delta} "
            f"eval={'exact' if eval_ok else 'WRONG'} member={'yes' if member_ok else 'NO'} "
            f"word-in-dd={'yes' if item.word_in_dd else 'no'}"
        )
    print(f"corpus: {len(items)} items, {'all verified' if all_ok else 'FAILURES'}")
    return 0 if all_ok else 1


def _cmd_series(args) -> int:
    poly = _parse_poly(args.poly)
    if args.terms < 1:
        raise CliError("--terms must be positive")
    print(f"poly: {poly}")
    print("i alpha beta")
    for term in alpha_beta(poly, args.terms):
        print(f"{term.index} {term.alpha} {term.beta}")
    bounds = series_sums(poly)
    print(f"alpha_upper: {bounds.alpha_upper}")
    print(f"beta_upper: {bounds.beta_upper}")
    print(f"terms_used: {bounds.terms_used}")
    print(f"tail_bound: {bounds.tail_bound}")
    return 0


def _cmd_render(args) -> int:
    poly = _parse_poly(args.poly)
    if args.digits is not None:
        digits = _parse_digits(args.digits)
    else:
        if args.k is None:
            raise CliError("render needs --k or --digits")
        try:
            digits = standard_digits(args.k)
        except ValueError as exc:
            raise CliError(str(exc)) from None
    width, height = _parse_size(args.size)
    try:
        cfg = RenderConfig(poly, digits, depth=args.depth, width=width, height=height,
                           margin=args.margin)
        grid = rasterize(cfg)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    out = args.out
    if out is None:
        if args.k is None:
            raise CliError("--out is required when --digits is given")
        out = default_filename(poly, args.k, args.depth)
    write_image(grid, out)
    n_points = len(cfg.digits) ** cfg.depth
    print(f"wrote {out} ({width}x{height}, depth {args.depth}, {n_points} points)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tileconn",
        description="Exact connectedness decisions for planar self-affine digit systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="decide connectedness or one membership query")
    p_decide.add_argument("--poly", required=True, help="p,q for x^2+p*x+q")
    p_decide.add_argument("--digits", required=True, help="semicolon-separated l,k pairs")
    p_decide.add_argument("--delta", help="optional l,k membership query in T-T")
    p_decide.set_defaults(func=_cmd_decide)

    p_sweep = sub.add_parser("sweep", help="verify the criterion over all |q|=3 instances")
    p_sweep.add_argument("--k-range", required=True, help="inclusive range like -5..5 (k=0 skipped)")
    p_sweep.add_argument("--report", help="write the JSON report to this path")
    p_sweep.add_argument("--witnesses", action="store_true",
                         help="attach verified witnesses for spanning edges to the report")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_corpus = sub.add_parser("verify-corpus", help="re-verify the built-in expansion catalog")
    p_corpus.set_defaults(func=_cmd_verify_corpus)

    p_series = sub.add_parser("series", help="print exact series terms and certified bounds")
    p_series.add_argument("--poly", required=True, help="p,q for x^2+p*x+q")
    p_series.add_argument("--terms", type=int, default=10, help="terms to print (default 10)")
    p_series.set_defaults(func=_cmd_series)

    p_render = sub.add_parser("render", help="render an attractor image (binary PPM)")
    p_render.add_argument("--poly", required=True, help="p,q for x^2+p*x+q")
    p_render.add_argument("--k", type=int, help="use the digit set {0, v, k*Av}")
    p_render.add_argument("--digits", help="explicit digit list, overrides --k")
    p_render.add_argument("--depth", type=int, default=9, help="word length (default 9)")
    p_render.add_argument("--size", default="512x512", help="WxH in pixels (default 512x512)")
    p_render.add_argument("--margin", type=float, default=0.05,
                          help="whitespace fraction per side (default 0.05)")
    p_render.add_argument("--out", help="output path (default tile_p*_q*_k*_d*.ppm)")
    p_render.set_defaults(func=_cmd_render)
    return parser


def _join_value_flags(argv: list[str]) -> list[str]:
    # argparse mistakes values like "-5..5" for option strings; fold them
    # into --flag=value form so negative ranges parse
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--k-range", "--delta", "--poly") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_value_flags(list(argv)))
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
