"""Command-line entry point.

Exit codes: 0 success, 1 a verifier rejected its input, 2 unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .charging import (
    ChargingScheme,
    format_scheme,
    lightness_certificate,
    outerplanar_block_charging,
    read_scheme,
    strengthen_weak_scheme,
    verify_scheme,
)
from .errors import InputError, LightspanError
from .graph import format_graph, read_graph
from .harness import ExperimentConfig, format_summary, run, sweep_report
from .pathdec import (
    WEIGHT_DISTRIBUTIONS,
    format_decomposition,
    generate_kpath,
    read_decomposition,
    smooth,
    validate,
)
from .pipeline import charging_pipeline
from .spanner import Spanner, as_epsilon, greedy_spanner

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise InputError(f"{out}: {exc.strerror}") from None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _header_eps(path: str) -> Fraction | None:
    for line in _read_text(path).splitlines():
        toks = line.lstrip("#").split()
        if line.startswith("#") and len(toks) == 2 and toks[0] == "eps":
            return as_epsilon(toks[1])
    return None


def _load_spanner(path: str, eps: str | None) -> Spanner:
    g = read_graph(path)
    e = as_epsilon(eps) if eps is not None else _header_eps(path)
    if e is None:
        raise InputError(f"{path}: no '# eps p/q' header; pass --eps")
    return Spanner(g, frozenset(g.edges), e)


def _read_order(path: str) -> list[int]:
    try:
        return [int(t) for t in _read_text(path).split("#", 1)[0].split()]
    except ValueError:
        raise InputError(f"{path}: expected whitespace-separated vertex ids") from None


# --- handlers ------------------------------------------------------------


def cmd_spanner_build(a) -> int:
    g = read_graph(a.inp)
    s = greedy_spanner(g, as_epsilon(a.eps))
    _emit(format_graph(s.as_graph(), [f"eps {s.eps}"]), a.out)
    print(f"kept {len(s.edges)} of {g.m} edges, weight {s.weight}", file=sys.stderr)
    return EXIT_OK


def cmd_pathdec_validate(a) -> int:
    rep = validate(read_graph(a.graph), read_decomposition(a.dec))
    for msg in rep.messages():
        print(msg)
    print("valid" if rep.ok else "invalid")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_pathdec_smooth(a) -> int:
    res = smooth(read_graph(a.graph), read_decomposition(a.dec))
    _emit(format_decomposition(res.decomposition), a.out)
    return EXIT_OK


def cmd_pathdec_gen(a) -> int:
    g, d = generate_kpath(a.n, a.pw, a.seed, a.weights)
    _emit(format_graph(g, [f"k-path n={a.n} pw={a.pw} seed={a.seed}"]), a.graph_out)
    _emit(format_decomposition(d), a.dec_out)
    return EXIT_OK


def _report_scheme(s: Spanner, cs: ChargingScheme, k: int) -> int:
    rep = verify_scheme(s, cs, k)
    print(f"k={k} max_tree={rep.max_tree} max_nontree={rep.max_nontree}")
    print(f"k_simple={rep.k_simple} acyclic={rep.acyclic} strong={rep.strong}")
    if rep.cycle:
        print("cycle: " + " -> ".join(f"{u}-{v}" for u, v in rep.cycle))
    for e in rep.weak_pairs[:10]:
        print(f"weak pair: {e[0]}-{e[1]}")
    if not rep.verdict:
        print("REJECTED")
        return EXIT_FAIL
    bound = lightness_certificate(s, rep, k)
    print(f"certificate: w(S) = {rep.spanner_weight} <= {bound} * {rep.tree_weight}")
    return EXIT_OK


def cmd_charge_verify(a) -> int:
    s = _load_spanner(a.spanner, a.eps)
    return _report_scheme(s, read_scheme(a.scheme, s.graph), a.k)


def cmd_charge_outerplanar(a) -> int:
    s = _load_spanner(a.spanner, a.eps)
    cs = outerplanar_block_charging(s.graph, _read_order(a.order))
    _emit(format_scheme(cs), a.out)
    return EXIT_OK


def cmd_charge_strengthen(a) -> int:
    s = _load_spanner(a.spanner, a.eps)
    host = read_graph(a.supergraph)
    weak = read_scheme(a.scheme, host)
    _emit(format_scheme(strengthen_weak_scheme(s, weak)), a.out)
    return EXIT_OK


def cmd_forest_build(a) -> int:
    res = charging_pipeline(read_graph(a.graph), read_decomposition(a.dec), as_epsilon(a.eps), check=a.check)
    _emit(format_scheme(res.scheme), a.out)
    status = EXIT_OK
    rep = res.report
    print(
        f"pw={res.pw} k={res.k} max_tree={rep.max_tree} k_simple={rep.k_simple} "
        f"acyclic={rep.acyclic} strong={rep.strong}",
        file=sys.stderr,
    )
    if not rep.verdict:
        status = EXIT_FAIL
    if a.check and not res.invariants_ok:
        for r in res.invariant_reports:
            for msg in r.broken():
                print(f"invariant: {msg}", file=sys.stderr)
        status = EXIT_FAIL
    if a.audit:
        lines = "".join(json.dumps(r.as_json()) + "\n" for r in res.audit)
        _emit(lines, a.audit_out)
        flagged = [r for r in res.audit if r.flags]
        for r in flagged:
            print(f"audit: edge {r.edge[0]}-{r.edge[1]} exceeds {', '.join(r.flags)} bound", file=sys.stderr)
        if flagged:
            status = EXIT_FAIL
    return status


def cmd_run(a) -> int:
    cfg = ExperimentConfig.load(a.config)
    if a.out:
        cfg.output = a.out
    rows = run(cfg)
    failed = [r for r in rows if r.failed]
    print(f"{len(rows)} rows written to {cfg.output}, {len(failed)} FAILED")
    for r in failed[:20]:
        print(f"FAILED {r.family} n={r.n} pw={r.pw} seed={r.seed} eps={r.eps} {r.error}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_report(a) -> int:
    summary = sweep_report(_read_text(a.inp))
    sys.stdout.write(format_summary(summary))
    return EXIT_FAIL if any(s.failed for s in summary) else EXIT_OK


# --- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lightspan", description="Greedy spanners and their charging certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spanner", help="greedy spanner construction").add_subparsers(dest="action", required=True)
    b = sp.add_parser("build", help="build the greedy (1+eps)-spanner of a graph")
    b.add_argument("--eps", required=True, help="stretch slack as p/q")
    b.add_argument("--in", dest="inp", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_spanner_build)

    pd = sub.add_parser("pathdec", help="path decompositions").add_subparsers(dest="action", required=True)
    v = pd.add_parser("validate", help="check a decomposition against a graph")
    v.add_argument("--graph", required=True)
    v.add_argument("--dec", required=True)
    v.set_defaults(func=cmd_pathdec_validate)
    s = pd.add_parser("smooth", help="convert to a smooth decomposition of equal width")
    s.add_argument("--graph", required=True)
    s.add_argument("--dec", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_pathdec_smooth)
    gn = pd.add_parser("gen", help="random k-path with its smooth decomposition")
    gn.add_argument("--n", type=int, required=True)
    gn.add_argument("--pw", type=int, required=True)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--weights", choices=WEIGHT_DISTRIBUTIONS, default="uniform")
    gn.add_argument("--graph-out", required=True)
    gn.add_argument("--dec-out", required=True)
    gn.set_defaults(func=cmd_pathdec_gen)

    ch = sub.add_parser("charge", help="charging schemes").add_subparsers(dest="action", required=True)
    cv = ch.add_parser("verify", help="check k-simplicity, acyclicity and strength")
    cv.add_argument("--spanner", required=True)
    cv.add_argument("--scheme", required=True)
    cv.add_argument("--k", type=int, required=True)
    cv.add_argument("--eps", help="overrides the spanner file's eps header")
    cv.set_defaults(func=cmd_charge_verify)
    co = ch.add_parser("outerplanar", help="1-simple scheme for an outer-planar spanner")
    co.add_argument("--spanner", required=True)
    co.add_argument("--order", required=True, help="file listing the outer-face vertex order")
    co.add_argument("--eps")
    co.add_argument("--out")
    co.set_defaults(func=cmd_charge_outerplanar)
    cs = ch.add_parser("strengthen", help="turn a weak scheme on a supergraph into a scheme on the spanner")
    cs.add_argument("--spanner", required=True)
    cs.add_argument("--supergraph", required=True)
    cs.add_argument("--scheme", required=True)
    cs.add_argument("--eps")
    cs.add_argument("--out")
    cs.set_defaults(func=cmd_charge_strengthen)

    fo = sub.add_parser("forest", help="charging forest pipeline").add_subparsers(dest="action", required=True)
    fb = fo.add_parser("build", help="spanner, charging forest, and the extracted scheme")
    fb.add_argument("--graph", required=True)
    fb.add_argument("--dec", required=True)
    fb.add_argument("--eps", required=True)
    fb.add_argument("--audit", action="store_true", help="emit per-tree-edge audit records")
    fb.add_argument("--audit-out", help="audit JSON-lines destination (default stdout after the scheme)")
    fb.add_argument("--check", action="store_true", help="check forest invariants after every bag")
    fb.add_argument("--out")
    fb.set_defaults(func=cmd_forest_build)

    r = sub.add_parser("run", help="run an experiment sweep")
    r.add_argument("--config", required=True)
    r.add_argument("--out", help="overrides the config's output path")
    r.set_defaults(func=cmd_run)

    rp = sub.add_parser("report", help="summarise a results CSV")
    rp.add_argument("--in", dest="inp", required=True)
    rp.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LightspanError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
