"""Command-line front end.

Subcommands mirror the library: lattice, resonance, multinets, pi1,
milnor, boundary, cv-count, report, falk-demo.  Exit codes: 0 ok,
1 validation error, 2 budget refusal, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .arrangement import load_arrangement_file
from .errors import BudgetError, ConsistencyError, ValidationError
from .fixtures import fixture_names, get_fixture
from .jumploci import Character, twisted_h1_dim
from .multinet import is_net
from .pipeline import ArrangementAnalysis, build_report

JSON_KW = dict(sort_keys=True, indent=2)


def _emit(obj) -> None:
    print(json.dumps(obj, **JSON_KW))


def _load(source: str):
    if os.path.exists(source):
        return load_arrangement_file(source)
    if source in fixture_names():
        return get_fixture(source)
    raise ValidationError(
        f"{source!r} is neither a file nor a fixture name "
        f"(fixtures: {', '.join(fixture_names())})"
    )


def _analysis(args) -> ArrangementAnalysis:
    tier, obj = _load(args.source)
    chart = None
    if getattr(args, "chart", None):
        parts = [Fraction(v) for v in args.chart.split(",")]
        if len(parts) != 3:
            raise ValidationError("--chart needs three rationals: alpha,beta,gamma")
        chart = tuple(parts)
    return ArrangementAnalysis(
        obj,
        chart=chart,
        max_weight=getattr(args, "max_weight", 3),
    )


def cmd_lattice(args) -> int:
    a = _analysis(args)
    lat = a.lattice
    _emit(
        {
            "label": a.label,
            "n": a.n,
            "census": {str(q): c for q, c in lat.census.items()},
            "flats": [
                {"point": list(fl.point) if fl.point else None, "lines": list(fl.lines)}
                for fl in lat.flats
            ],
            "high_flats_on_common_line": a.collinear_report.some_line_contains_all,
        }
    )
    return 0


def cmd_resonance(args) -> int:
    a = _analysis(args)
    primes = [int(p) for p in args.field.split(",")] if args.field else [2, 3, 5]
    _emit({"label": a.label, "beta": {str(p): a.beta(p) for p in primes}})
    return 0


def cmd_multinets(args) -> int:
    a = _analysis(args)
    items = a.multinets
    if args.nets_only:
        items = [mn for mn in items if is_net(a.lattice, mn)]
    _emit(
        {
            "label": a.label,
            "max_weight": a.max_weight,
            "count": len(items),
            "multinets": [
                mn.summary() | {"net": is_net(a.lattice, mn)} for mn in items
            ],
            "pointed": [
                {"line": h, "m_H": mn.mult[h], "classes": [list(c) for c in mn.classes]}
                for mn, h in a.pointed
            ],
        }
    )
    return 0


def cmd_pi1(args) -> int:
    a = _analysis(args)
    pres = a.presentation
    _emit(
        {
            "label": a.label,
            "chart": [str(v) for v in a.wiring.chart],
            "generators": list(pres.gen_tags),
            "relators": [list(r) for r in pres.relators],
            "abelianization_rank": pres.abelianization()[0],
        }
    )
    return 0


def cmd_milnor(args) -> int:
    a = _analysis(args)
    rep = build_report(a)
    _emit(
        {
            "label": a.label,
            "n": a.n,
            "e_r": rep["e_r"],
            "delta": rep["delta"],
            "b1_F": rep["b1_F"],
            "h1_F": rep["h1_F"],
            "modular_bounds": rep["modular_bounds"],
            "bound_claims": rep["bound_claims"],
            "four_net_equalities": rep["four_net_equalities"],
        }
    )
    return 0


def cmd_boundary(args) -> int:
    a = _analysis(args)
    rep = build_report(a)
    _emit({"label": a.label} | rep["boundary"])
    return 0


def cmd_cv_count(args) -> int:
    a = _analysis(args)
    if args.space == "F":
        counts = a.depth_counts(args.order, depths=(args.depth,), budget=args.budget)
        _emit(
            {
                "label": a.label,
                "space": "F",
                "order": args.order,
                "depth": args.depth,
                "count": counts[args.depth],
            }
        )
        return 0
    # Characters of the projective complement: exponent vectors on the
    # meridians mod r whose total is 0 mod r.
    pres = a.presentation
    r = args.order
    n = pres.num_gens
    total = r ** (n - 1)
    if total > args.budget:
        raise BudgetError(
            f"scan needs {total} characters, budget is {args.budget}",
            required=total,
            budget=args.budget,
        )
    count = 0
    exps = [0] * (n - 1)
    while True:
        last = (-sum(exps)) % r
        chi = Character(order=r, exps=tuple(exps) + (last,))
        if chi.is_trivial:
            dim = n - 1
        else:
            dim = twisted_h1_dim(pres, chi)
        if dim >= args.depth:
            count += 1
        i = n - 2
        while i >= 0 and exps[i] == r - 1:
            exps[i] = 0
            i -= 1
        if i < 0:
            break
        exps[i] += 1
    _emit(
        {
            "label": a.label,
            "space": "U",
            "order": args.order,
            "depth": args.depth,
            "count": count,
        }
    )
    return 0


def cmd_report(args) -> int:
    a = _analysis(args)
    rep = build_report(a, cv_order=args.cv_order, cv_budget=args.budget)
    if args.json:
        _emit(rep)
    else:
        _render_report(rep)
    return 0


def _render_report(rep: dict) -> None:
    print(f"== {rep['label']} (n = {rep['n']}, {rep['tier']}) ==")
    print(f"census: {rep['lattice']['census']}  "
          f"high flats on a common line: {rep['lattice']['high_flats_on_common_line']}")
    print(f"beta_p: {rep['beta']}")
    mn = rep["multinets"]
    print(f"multinets (weight <= {mn['max_weight']}): {mn['count']}; "
          f"3-nets: {mn['three_net_count']}; 4-net: {mn['has_4net']}; "
          f"pointed: {len(mn['pointed'])}")
    d = rep["delta"]
    if d.get("computed") is not None:
        print(f"e_r: {rep['e_r']}")
        print(f"Delta (computed): {d['computed_display']}  agreement: {d['agreement']}")
        print(f"b1(F) = {rep['b1_F']}, H1(F,Z) = Z^{rep['h1_F']['rank']} "
              f"+ torsion {rep['h1_F']['torsion']}")
        cv = rep["cv_counts"]
        if "skipped" not in cv:
            print(f"order-{cv['order']} characters: depth>=1: {cv['depth_1']}, "
                  f"depth>=2: {cv['depth_2']}")
    else:
        print("pi1 tier: " + rep["e_r"])
    b = rep["boundary"]
    print(f"boundary: b1(Gamma) = {b['graph']['b1']}, b1(dU) = {b['b1_boundary_U']}, "
          f"Delta_dF = {b['delta_boundary_F_display']} (degree {b['b1_boundary_F']})")


def cmd_falk_demo(args) -> int:
    rows = []
    for name in ("falk_A", "falk_A_prime"):
        _, arr = get_fixture(name)
        a = ArrangementAnalysis(arr)
        counts = a.depth_counts(3, budget=args.budget)
        rows.append(
            {
                "label": name,
                "census": {str(q): c for q, c in a.lattice.census.items()},
                "triples_on_common_line": a.collinear_report.some_line_contains_all,
                "delta": str(a.delta_computed),
                "delta_boundary_F": str(a.delta_boundary),
                "b1_boundary_U": a.b1_boundary,
                "b1_F": a.b1_F,
                "h1_F_torsion": a.milnor_fiber.torsion,
                "order3_depth1": counts[1],
                "order3_depth2": counts[2],
            }
        )
    if args.json:
        _emit({"pair": rows})
        return 0
    a, b = rows
    print("invariant                    falk_A         falk_A_prime")
    for key, label in [
        ("census", "lattice census"),
        ("triples_on_common_line", "triples collinear"),
        ("delta", "Delta(t)"),
        ("delta_boundary_F", "Delta_dF(t)"),
        ("b1_boundary_U", "b1(dU)"),
        ("b1_F", "b1(F)"),
        ("order3_depth1", "order-3 depth>=1"),
        ("order3_depth2", "order-3 depth>=2"),
    ]:
        print(f"{label:<28} {str(a[key]):<14} {str(b[key])}")
    same = [k for k in ("census", "delta", "delta_boundary_F", "b1_boundary_U", "b1_F")]
    print(
        "\nmatching invariants: "
        + ", ".join(same)
        + "  (the two Milnor fibers have the same Betti numbers)"
    )
    print(
        f"separating invariant: order-3 depth-2 counts "
        f"{a['order3_depth2']} vs {b['order3_depth2']} "
        f"(and depth-1 counts {a['order3_depth1']} vs {b['order3_depth1']}); "
        "the two Milnor fibers are not homotopy equivalent."
    )
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arrtop",
        description="Exact invariants of complex line arrangements: lattices, "
        "resonance, multinets, Milnor fiber monodromy, boundary manifolds.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("source", help="arrangement file or fixture name")

    p = sub.add_parser("lattice", help="rank-2 intersection lattice and census")
    add_source(p)
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("resonance", help="Aomoto-Betti numbers beta_p")
    add_source(p)
    p.add_argument("--field", help="comma-separated primes (default 2,3,5)")
    p.set_defaults(fn=cmd_resonance)

    p = sub.add_parser("multinets", help="multinet search")
    add_source(p)
    p.add_argument("--max-weight", type=int, default=3, dest="max_weight")
    p.add_argument("--nets-only", action="store_true", dest="nets_only")
    p.set_defaults(fn=cmd_multinets)

    p = sub.add_parser("pi1", help="presentation of the projective complement group")
    add_source(p)
    p.add_argument("--chart", help="alpha,beta,gamma chart parameters")
    p.set_defaults(fn=cmd_pi1)

    p = sub.add_parser("milnor", help="monodromy polynomial and fiber homology")
    add_source(p)
    p.add_argument("--chart", help="alpha,beta,gamma chart parameters")
    p.set_defaults(fn=cmd_milnor)

    p = sub.add_parser("boundary", help="boundary-manifold invariants")
    add_source(p)
    p.set_defaults(fn=cmd_boundary)

    p = sub.add_parser("cv-count", help="torsion points of characteristic varieties")
    add_source(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--space", choices=["U", "F"], default="F")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--chart", help="alpha,beta,gamma chart parameters")
    p.set_defaults(fn=cmd_cv_count)

    p = sub.add_parser("report", help="full report (human-readable or --json)")
    add_source(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--cv-order", type=int, default=None, dest="cv_order")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--chart", help="alpha,beta,gamma chart parameters")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("falk-demo", help="side-by-side report on the Falk pair")
    p.add_argument("--json", action="store_true")
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(fn=cmd_falk_demo)

    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except BudgetError as e:
        print(f"budget refusal: {e}", file=sys.stderr)
        return 2
    except ConsistencyError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
