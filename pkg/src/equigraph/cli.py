"""Command-line interface.

Subcommands

    spectrum FILE [--signless]        eigenvalues of one graph
    energy FILE                       both energies of one graph
    construct --recipe ID --g1 F --g2 F (--p N | --min-p) [--count K]
    verify    (same flags)            construct and verify, with full report
    scan      --recipe ID --g1 F --g2 F --p-from A --p-to B
    counterexample [--p N]            the fixed non-equienergetic tree pair
    lemmas [--trials N] [--max-n K] [--seed S]   random rule-vs-direct audit

Exit codes: 0 success, 1 verification failure (an energy equality a recipe
predicts did not hold, or a reference value was not reproduced), 2 input or
usage error.  ``--json`` switches any subcommand to a machine-readable
report.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import constructions as R
from . import verify as V
from .errors import EquigraphError
from .graphs import Graph, format_edge_list, read_edge_list
from .spectra import (
    MatrixKind,
    energy,
    laplacian_spectrum,
    signless_laplacian_spectrum,
)

_EXIT_OK = 0
_EXIT_VERIFY_FAILED = 1
_EXIT_INPUT_ERROR = 2


def _fmt_value(v: float) -> str:
    text = f"{v:.6f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-0") else "0"


def _fmt_energy(v: float) -> str:
    return f"{v:.6f}"


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _load_graph(path: str) -> Graph:
    return read_edge_list(path)


def _recipe(text: str) -> R.Recipe:
    try:
        return R.Recipe.from_id(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _report_lines(rep: V.VerificationReport, equality_tol: float) -> tuple[list[str], bool]:
    kind = MatrixKind.LAPLACIAN
    if rep.recipe_id:
        kind = R.recipe_kind(R.Recipe.from_id(rep.recipe_id))
    diff = rep.energy_diff(kind)
    ok = diff <= equality_tol * rep.n
    e1 = rep.le_h1 if kind is MatrixKind.LAPLACIAN else rep.q_le_h1
    e2 = rep.le_h2 if kind is MatrixKind.LAPLACIAN else rep.q_le_h2
    lines = [
        f"recipe={rep.recipe_id or '-'} p={rep.p if rep.p is not None else '-'} "
        f"n={rep.n} m={rep.m}",
        f"  {kind.short}E(H1) = {_fmt_energy(e1)}   {kind.short}E(H2) = {_fmt_energy(e2)}   "
        f"diff = {diff:.3e}   [{'equal' if ok else 'NOT EQUAL'}]",
        f"  cospectral: L={rep.cospectral_l} Q={rep.cospectral_q}",
    ]
    if rep.rule_deviation is not None:
        lines.append(f"  rule-vs-direct deviation = {rep.rule_deviation:.3e}")
    if rep.closed_form_match is not None:
        lines.append(f"  closed form match = {rep.closed_form_match}")
    for d in rep.discrepancies:
        lines.append(f"  discrepancy [{d.source}] dev={d.deviation:.3e}: {d.instance}")
    return lines, ok


def _cmd_spectrum(args) -> int:
    g = _load_graph(args.file)
    s = signless_laplacian_spectrum(g) if args.signless else laplacian_spectrum(g)
    if args.json:
        _print_json({"kind": s.kind.short, "n": s.n, "m": s.m, "values": list(s.values)})
    else:
        print(" ".join(_fmt_value(v) for v in s.values))
    return _EXIT_OK


def _cmd_energy(args) -> int:
    g = _load_graph(args.file)
    ls, qs = laplacian_spectrum(g), signless_laplacian_spectrum(g)
    le, qe = energy(ls), energy(qs)
    if args.json:
        _print_json({"n": g.n, "m": g.m, "le": le, "le_plus": qe})
    else:
        print(f"LE  = {_fmt_energy(le)}")
        print(f"LE+ = {_fmt_energy(qe)}")
    return _EXIT_OK


def _resolve_p(args, recipe: R.Recipe, g1: Graph, g2: Graph) -> int:
    if args.min_p:
        return R.minimal_p(recipe, g1, g2, args.ambient_n)
    if args.p is None:
        raise EquigraphError("either --p N or --min-p is required")
    return args.p


def _cmd_construct(args) -> int:
    g1, g2 = _load_graph(args.g1), _load_graph(args.g2)
    p0 = _resolve_p(args, args.recipe, g1, g2)
    triples = R.sequence(args.recipe, g1, g2, p0, args.count, args.ambient_n, args.assume_bar_typo)
    if args.json:
        _print_json(
            [
                {
                    "recipe": args.recipe.value,
                    "p": p,
                    "h1": {"n": h1.n, "m": h1.m, "edges": h1.edges()},
                    "h2": {"n": h2.n, "m": h2.m, "edges": h2.edges()},
                }
                for p, h1, h2 in triples
            ]
        )
    else:
        print(f"recipe {args.recipe.value}: {R.recipe_description(args.recipe)}")
        print(f"{'p':>5} {'n(H)':>6} {'m(H1)':>7} {'m(H2)':>7}")
        for p, h1, h2 in triples:
            print(f"{p:>5} {h1.n:>6} {h1.m:>7} {h2.m:>7}")
        if args.emit_edges:
            for p, h1, h2 in triples:
                print(f"# H1 at p={p}")
                sys.stdout.write(format_edge_list(h1))
                print(f"# H2 at p={p}")
                sys.stdout.write(format_edge_list(h2))
    return _EXIT_OK


def _verify_range(args, p_values) -> int:
    g1, g2 = _load_graph(args.g1), _load_graph(args.g2)
    reports = [
        V.verify_recipe(
            args.recipe, g1, g2, p,
            ambient_n=args.ambient_n,
            assume_bar_typo=args.assume_bar_typo,
            cospectral_tol=args.cospectral_tol,
            discrepancy_tol=args.discrepancy_tol,
        )
        for p in p_values
    ]
    all_ok = True
    if args.json:
        _print_json([rep.to_json_dict() for rep in reports])
        kind = R.recipe_kind(args.recipe)
        all_ok = all(rep.energy_diff(kind) <= args.equality_tol * rep.n for rep in reports)
    else:
        for rep in reports:
            lines, ok = _report_lines(rep, args.equality_tol)
            all_ok &= ok
            print("\n".join(lines))
    return _EXIT_OK if all_ok else _EXIT_VERIFY_FAILED


def _cmd_verify(args) -> int:
    g1, g2 = _load_graph(args.g1), _load_graph(args.g2)
    p0 = _resolve_p(args, args.recipe, g1, g2)
    return _verify_range(args, range(p0, p0 + args.count))


def _cmd_scan(args) -> int:
    if args.p_to < args.p_from:
        raise EquigraphError("--p-to must be >= --p-from")
    return _verify_range(args, range(args.p_from, args.p_to + 1))


def _cmd_counterexample(args) -> int:
    ps = [args.p] if args.p is not None else sorted(V.TREE_PAIR_REFERENCE)
    rows = []
    ok = True
    for p in ps:
        e1, e2 = V.tree_pair_product_energies(p)
        ref = V.TREE_PAIR_REFERENCE.get(p)
        matched = None
        if ref is not None:
            matched = (
                abs(e1 - ref[0]) <= V.TREE_PAIR_REFERENCE_TOL
                and abs(e2 - ref[1]) <= V.TREE_PAIR_REFERENCE_TOL
            )
            ok &= matched
        rows.append((p, e1, e2, ref, matched))
    if args.json:
        _print_json(
            [
                {
                    "p": p,
                    "le_tree_a": e1,
                    "le_tree_b": e2,
                    "reference": list(ref) if ref else None,
                    "reference_matched": matched,
                }
                for p, e1, e2, ref, matched in rows
            ]
        )
    else:
        for p, e1, e2, ref, matched in rows:
            note = ""
            if ref is not None:
                note = f"   reference ({_fmt_energy(ref[0])}, {_fmt_energy(ref[1])}) " + (
                    "reproduced" if matched else "NOT reproduced"
                )
            print(f"p={p}: LE(A x Kp) = {_fmt_energy(e1)}  !=  LE(B x Kp) = {_fmt_energy(e2)}{note}")
    return _EXIT_OK if ok else _EXIT_VERIFY_FAILED


def _cmd_lemmas(args) -> int:
    report = V.audit_rules(
        trials=args.trials,
        max_n=args.max_n,
        seed=args.seed,
        discrepancy_tol=args.discrepancy_tol,
    )
    if args.json:
        _print_json(report.to_json_dict())
    else:
        print(f"{'rule':<26} {'kind':<4} {'instances':>9} {'max deviation':>15}")
        for o in report.outcomes:
            print(f"{o.rule:<26} {o.kind:<4} {o.instances:>9} {o.max_deviation:>15.3e}")
        print(f"discrepancies recorded: {len(report.discrepancies)}")
        for d in report.discrepancies[:20]:
            print(f"  [{d.source}] dev={d.deviation:.3e}: {d.instance}")
        if len(report.discrepancies) > 20:
            print(f"  ... {len(report.discrepancies) - 20} more")
    return _EXIT_OK


def _add_tolerance_flags(sp) -> None:
    sp.add_argument("--equality-tol", type=float, default=V.EQUALITY_TOL_PER_VERTEX,
                    help="per-vertex energy equality tolerance")
    sp.add_argument("--cospectral-tol", type=float, default=1e-7,
                    help="pointwise cospectrality tolerance")
    sp.add_argument("--discrepancy-tol", type=float, default=V.DISCREPANCY_TOL,
                    help="rule-vs-direct deviation above this is recorded")


def _add_pair_flags(sp, with_p: bool = True) -> None:
    sp.add_argument("--recipe", type=_recipe, required=True,
                    help="recipe id, e.g. R9 or R9:cart-union-empty")
    sp.add_argument("--g1", required=True, help="edge-list file of the first input graph")
    sp.add_argument("--g2", required=True, help="edge-list file of the second input graph")
    sp.add_argument("--ambient-n", type=int, default=None,
                    help="host order for complete-minus-subgraph recipes (default: n+1)")
    sp.add_argument("--assume-bar-typo", action="store_true",
                    help="build join(G, bipartite(p,p)) instead of its complement in R5")
    if with_p:
        group = sp.add_mutually_exclusive_group(required=True)
        group.add_argument("--p", type=int, help="padding parameter")
        group.add_argument("--min-p", action="store_true", help="use the smallest valid p")
        sp.add_argument("--count", type=int, default=1, help="consecutive p values to run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equigraph",
        description="Construct and verify equal-energy graph pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="print the spectrum of one graph")
    sp.add_argument("file")
    sp.add_argument("--signless", action="store_true", help="signless Laplacian instead of Laplacian")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("energy", help="print both energies of one graph")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_energy)

    sp = sub.add_parser("construct", help="build a derived pair")
    _add_pair_flags(sp)
    sp.add_argument("--emit-edges", action="store_true", help="also print full edge lists")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("verify", help="construct and verify a derived pair")
    _add_pair_flags(sp)
    _add_tolerance_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("scan", help="verify a recipe over a p range")
    _add_pair_flags(sp, with_p=False)
    sp.add_argument("--p-from", type=int, required=True)
    sp.add_argument("--p-to", type=int, required=True)
    _add_tolerance_flags(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("counterexample", help="energies of the fixed tree pair times complete(p)")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_counterexample)

    sp = sub.add_parser("lemmas", help="random audit of the composition rules")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--discrepancy-tol", type=float, default=V.DISCREPANCY_TOL)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_lemmas)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EquigraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
