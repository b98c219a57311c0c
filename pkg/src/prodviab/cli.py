"""Command line interface: validate, classify, find-price, delta, generate,
crosscheck.

Exit codes: 0 ok, 1 property violations found, 2 user/input error, 3 I/O
error, 4 internal consistency failure, 5 not viable (find-price).
"""

from __future__ import annotations

import argparse
import json
import os
import sys as _sys
from fractions import Fraction
from pathlib import Path

from . import criteria, documents, generator, linalg, lp, polytope, structure, viability
from .core import ProductionSystem, ValidationErrors, build_z_matrix, incomes
from .documents import ParseError, format_rational, parse_rational
from .linalg import ZERO

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USER = 2
EXIT_IO = 3
EXIT_INTERNAL = 4
EXIT_NOT_VIABLE = 5

DEFAULT_CC_BUDGET = 10**6


def _cc_budget(args) -> int:
    if getattr(args, "cc_budget", None) is not None:
        return args.cc_budget
    env = os.environ.get("PRODVIAB_CC_BUDGET")
    return int(env) if env else DEFAULT_CC_BUDGET


def _load_system(path: str) -> ProductionSystem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _IoError(str(exc)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return documents.system_from_document(doc)


class _IoError(Exception):
    pass


def _emit(obj):
    print(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    try:
        sys_ = _load_system(args.path)
    except _IoError as exc:
        _emit({"ok": False, "errors": [{"code": "IoError", "message": str(exc)}]})
        return EXIT_IO
    except ParseError as exc:
        _emit({"ok": False, "errors": [{"code": "ParseError", "message": str(exc)}]})
        return EXIT_USER
    except ValidationErrors as exc:
        _emit(
            {
                "ok": False,
                "errors": [
                    {"code": i.code, "good": i.good, "message": i.message}
                    for i in exc.issues
                ],
            }
        )
        return EXIT_USER
    _emit(
        {
            "ok": True,
            "net_output": [format_rational(v) for v in sys_.net_output],
            "warnings": list(sys_.warnings),
        }
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        sys_ = _load_system(args.path)
    except _IoError:
        return EXIT_IO
    except (ParseError, ValidationErrors) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USER
    fm = None
    if args.fm_oracle is not None:
        fm = args.fm_oracle
    try:
        report = viability.classify(sys_, cc_budget=_cc_budget(args), fm_oracle=fm)
    except (
        viability.CriteriaDisagreement,
        viability.OracleDisagreement,
        viability.ImplicationViolation,
    ) as exc:
        print(f"internal consistency failure: {exc}", file=_sys.stderr)
        return EXIT_INTERNAL
    if args.text:
        _print_text_report(sys_, report)
    else:
        _emit(documents.report_to_document(sys_, report))
    return EXIT_OK


def _print_text_report(sys_, report):
    names = {
        "acyclic": "acyclic",
        "coherent": "coherent",
        "wv": "weakly viable (WV)",
        "v": "viable (V)",
        "wcv": "weakly completely viable (WCV)",
        "cv": "completely viable (CV)",
        "rip": "restricted input property (RIP)",
        "wrip": "weak restricted input property (WRIP)",
    }
    for key, verdict in report.flags().items():
        print(f"{names[key]:38s} {'yes' if verdict else 'no':3s}  [{report.methods.get(key, '')}]")
    print(f"det Z = {report.determinant}")
    print("leading principal minors:", ", ".join(map(str, report.leading_minors)))
    print("net output e =", ", ".join(map(str, report.net_output)))
    if report.cycle is not None:
        goods = ", ".join(sys_.labels[k] for k in report.cycle.goods)
        print(f"cycle: ({goods}) with product {report.cycle.product}")
    if report.conversion_cycle is not None:
        print(f"conversion cycle n = {report.conversion_cycle.n}")
    if report.viable_price is not None:
        print("viable price:", _price_str(sys_, report.viable_price))
    for w in report.warnings:
        print("warning:", w)


def _price_str(sys_, price):
    parts = [f"p[{sys_.labels[k]}]={v}" for k, v in enumerate(price.p)]
    parts += [f"q[{sys_.labels[sys_.ell_c + m]}]={v}" for m, v in enumerate(price.q)]
    return ", ".join(parts)


def cmd_find_price(args) -> int:
    try:
        sys_ = _load_system(args.path)
    except _IoError:
        return EXIT_IO
    except (ParseError, ValidationErrors) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USER

    z = build_z_matrix(sys_)
    if args.method == "acyclic":
        c = None
        if args.c:
            try:
                c = tuple(parse_rational(v) for v in args.c.split(","))
            except ParseError as exc:
                print(f"error: {exc}", file=_sys.stderr)
                return EXIT_USER
        try:
            price = viability.viable_price_acyclic(sys_, c)
        except viability.NotAcyclic as exc:
            print(f"error: {exc}", file=_sys.stderr)
            return EXIT_USER
        except ValueError as exc:
            print(f"error: {exc}", file=_sys.stderr)
            return EXIT_USER
    elif args.method == "pqdd":
        cert = criteria.find_pqdd(z)
        if cert is None:
            return _not_viable(sys_, z)
        scale = sum(cert.d[: sys_.ell_c], ZERO)
        from .core import PriceSystem

        price = PriceSystem(
            p=tuple(v / scale for v in cert.d[: sys_.ell_c]),
            q=tuple(v / scale for v in cert.d[sys_.ell_c :]),
        )
    else:
        viable, price = viability.is_viable(sys_)
        if not viable:
            return _not_viable(sys_, z)

    inc = incomes(z, price)
    _emit(
        {
            "viable": True,
            "price": documents._price_doc(sys_, price),
            "incomes": {sys_.labels[k]: format_rational(v) for k, v in enumerate(inc)},
        }
    )
    return EXIT_OK


def _not_viable(sys_, z) -> int:
    """Emit the minor / income-identity certificate for a non-viable system."""
    minors = criteria.leading_principal_minors(z)
    bad = next((i for i, m in enumerate(minors) if m <= 0), None)
    cert: dict = {}
    if bad is not None:
        cert["nonpositive_leading_minor"] = {
            "order": bad + 1,
            "value": format_rational(minors[bad]),
        }
    if structure.determinant(z) == 0:
        null = linalg.left_nullspace(z.rows)
        if null:
            # income identity: these multipliers combine the plans to zero
            cert["income_identity"] = {
                sys_.labels[k]: format_rational(v)
                for k, v in enumerate(null[0])
                if v != 0
            }
    _emit({"viable": False, "certificate": cert})
    return EXIT_NOT_VIABLE


def cmd_delta(args) -> int:
    try:
        sys_ = _load_system(args.path)
    except _IoError:
        return EXIT_IO
    except (ParseError, ValidationErrors) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USER

    h = polytope.delta_prime_hrep(sys_)
    out = {
        "dim": h.dim,
        "inequalities": [
            {
                "label": label,
                "coeffs": [format_rational(v) for v in a],
                "rhs": format_rational(b),
            }
            for (a, b), label in zip(h.ineqs, h.labels)
        ],
        "equalities": [
            {"coeffs": [format_rational(v) for v in a], "rhs": format_rational(b)}
            for a, b in h.eqs
        ],
    }
    if args.vertices:
        vp = polytope.enumerate_vertices(h)
        out["vertices"] = [[format_rational(v) for v in vx] for vx in vp.vertices]
        out["rays"] = [[format_rational(v) for v in r] for r in vp.rays]
        out["bounded"] = not vp.rays
    if args.plot:
        try:
            segments = polytope.project_2d(sys_)
        except polytope.WrongShape as exc:
            print(f"error: {exc}", file=_sys.stderr)
            return EXIT_USER
        for path in args.plot:
            try:
                if path.endswith(".svg"):
                    Path(path).write_text(_region_svg(segments))
                else:
                    Path(path).write_text(_region_csv(segments))
            except OSError as exc:
                print(f"error: {exc}", file=_sys.stderr)
                return EXIT_IO
    _emit(out)
    return EXIT_OK


def _region_csv(segments) -> str:
    lines = ["label,x1,y1,x2,y2"]
    for seg in segments:
        lines.append(
            ",".join(
                [
                    f'"{seg.label}"',
                    format_rational(seg.start[0]),
                    format_rational(seg.start[1]),
                    format_rational(seg.end[0]),
                    format_rational(seg.end[1]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _region_svg(segments, size: int = 400) -> str:
    """Presentation-only SVG of the region boundary in the (q, p) plane."""
    if not segments:
        return '<svg xmlns="http://www.w3.org/2000/svg"/>'
    xs = [float(v) for s in segments for v in (s.start[0], s.end[0])]
    ys = [float(v) for s in segments for v in (s.start[1], s.end[1])]
    xmax = max(xs + [1.0]) or 1.0
    ymax = max(ys + [1.0]) or 1.0
    pad = 40

    def tx(x):
        return pad + (float(x) / xmax) * (size - 2 * pad)

    def ty(y):
        return size - pad - (float(y) / ymax) * (size - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
        f'<line x1="{pad}" y1="{size-pad}" x2="{size-pad}" y2="{size-pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{size-pad}" x2="{pad}" y2="{pad}" stroke="black"/>',
        f'<text x="{size-pad}" y="{size-pad+15}" font-size="12">q</text>',
        f'<text x="{pad-15}" y="{pad}" font-size="12">p</text>',
    ]
    for seg in segments:
        parts.append(
            f'<line x1="{tx(seg.start[0]):.2f}" y1="{ty(seg.start[1]):.2f}" '
            f'x2="{tx(seg.end[0]):.2f}" y2="{ty(seg.end[1]):.2f}" '
            'stroke="crimson" stroke-width="1.5"/>'
        )
        mx = (tx(seg.start[0]) + tx(seg.end[0])) / 2
        my = (ty(seg.start[1]) + ty(seg.end[1])) / 2
        parts.append(f'<text x="{mx:.2f}" y="{my:.2f}" font-size="10">{seg.label}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def cmd_generate(args) -> int:
    try:
        config = generator.GeneratorConfig(
            seed=args.seed,
            ell_c=_parse_range(args.ell_c),
            ell_p=_parse_range(args.ell_p),
            density=args.density,
            structure=args.structure,
            rip=args.rip,
            wrip=args.wrip,
            max_magnitude=args.max_magnitude,
            max_population=args.max_population,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_USER
    _emit(generator.generate_document(config))
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    violations = run_crosscheck(
        count=args.count,
        seed=args.seed,
        max_ell=args.max_ell,
        dump_dir=args.dump_dir,
        cc_budget=_cc_budget(args),
    )
    for v in violations:
        print(f"violation (seed {v['seed']}): {v['error']}")
    print(f"crosscheck: {args.count} systems, {len(violations)} violations")
    return EXIT_VIOLATIONS if violations else EXIT_OK


def run_crosscheck(count, seed, max_ell, dump_dir=None, cc_budget=DEFAULT_CC_BUDGET):
    """Generate systems and run every decider by every route.

    Checks, per system: criteria-equivalence (done inside is_viable), the
    implication lattice, WCV vertex-vs-projection agreement (inside
    is_wcv), the bounded solvability probe of Z x = y for y >> 0, and the
    constructive acyclic price when applicable.  Violations are returned
    and reproducer documents dumped when a directory is given.
    """
    import random

    violations = []
    master = random.Random(seed)
    for i in range(count):
        sub_seed = master.randrange(2**63)
        structure_kind = master.choice(["dag", "allow-cycles"])
        config = generator.GeneratorConfig(
            seed=sub_seed,
            ell_c=(1, max(1, max_ell - 1)),
            ell_p=(0, max_ell - 1),
            density=master.choice([0.2, 0.5, 0.8]),
            structure=structure_kind,
            rip=master.random() < 0.3,
            wrip=master.random() < 0.3,
        )
        doc = generator.generate_document(config)
        try:
            sys_ = documents.system_from_document(doc)
            if sys_.ell > max_ell:
                continue
            report = viability.classify(sys_, cc_budget=cc_budget)
            _check_solvability_probe(sys_, report, random.Random(sub_seed ^ 0x5F5F))
            if report.acyclic:
                viability.viable_price_acyclic(sys_)
        except Exception as exc:  # noqa: BLE001 - any failure is a finding
            violations.append({"seed": sub_seed, "index": i, "error": repr(exc)})
            if dump_dir:
                d = Path(dump_dir)
                d.mkdir(parents=True, exist_ok=True)
                (d / f"reproducer_{i}_{sub_seed}.json").write_text(
                    json.dumps(doc, indent=2)
                )
    return violations


def _check_solvability_probe(sys_, report, rng, draws: int = 2):
    """Z x = y with x >= 0 is solvable for y >> 0 exactly when viable."""
    z = build_z_matrix(sys_)
    n = z.n
    for _ in range(draws):
        y = tuple(Fraction(rng.randint(1, 9)) for _ in range(n))
        constraints = tuple(
            lp.Constraint(tuple(z.rows[i][j] for j in range(n)), lp.EQ, y[i])
            for i in range(n)
        )
        program = lp.LinearProgram(
            objective=(ZERO,) * n,
            constraints=constraints,
            lower=(ZERO,) * n,
            upper=(None,) * n,
        )
        feasible = lp.solve(program).status == lp.OPTIMAL
        if feasible != report.v:
            raise viability.CriteriaDisagreement(
                f"Z x = y solvability ({feasible}) disagrees with viability ({report.v})"
            )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodviab",
        description="Viability analysis of structured production systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a system document")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="decide all structural and viability properties")
    p.add_argument("path")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", dest="text", action="store_false", default=False)
    group.add_argument("--text", dest="text", action="store_true")
    p.add_argument("--fm-oracle", dest="fm_oracle", action="store_true", default=None)
    p.add_argument("--no-fm-oracle", dest="fm_oracle", action="store_false")
    p.add_argument("--cc-budget", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("find-price", help="produce a viable price system")
    p.add_argument("path")
    p.add_argument("--method", choices=["lp", "acyclic", "pqdd"], default="lp")
    p.add_argument("--c", default=None, help="comma-separated c vector for --method acyclic")
    p.set_defaults(func=cmd_find_price)

    p = sub.add_parser("delta", help="emit the weakly-viable price polytope")
    p.add_argument("path")
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--plot", action="append", default=[], metavar="FILE")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("generate", help="emit a random system document")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--ell-c", default="1:3")
    p.add_argument("--ell-p", default="0:3")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--structure", choices=["dag", "allow-cycles"], default="allow-cycles")
    p.add_argument("--rip", action="store_true")
    p.add_argument("--wrip", action="store_true")
    p.add_argument("--max-magnitude", type=int, default=4)
    p.add_argument("--max-population", type=int, default=3)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("crosscheck", help="random cross-validation of all deciders")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-ell", type=int, default=6)
    p.add_argument("--dump-dir", default=None)
    p.add_argument("--cc-budget", type=int, default=None)
    p.set_defaults(func=cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
