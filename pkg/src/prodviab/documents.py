"""JSON wire formats: system documents in, report documents out.

Rationals travel as strings ("3/4", "-2") so no float ever enters the
pipeline.  Unknown keys are rejected to catch typos early.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import ProductionPlan, ProductionSystem, validate_system
from .linalg import ZERO
from .viability import ClassificationReport

__all__ = [
    "ParseError",
    "parse_rational",
    "format_rational",
    "system_from_document",
    "system_to_document",
    "report_to_document",
]

RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ParseError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not RATIONAL_RE.match(text):
        raise ParseError(f"bad rational {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _check_keys(obj: dict, allowed: set[str], where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)} in {where}")


def system_from_document(doc: dict) -> ProductionSystem:
    """Parse and validate a SystemDocument.

    Goods may be listed in any order; internally consumption goods come
    first, preserving the document order within each kind.
    """
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    _check_keys(doc, {"goods", "plans", "population"}, "document")
    goods = doc.get("goods")
    plans = doc.get("plans")
    if not isinstance(goods, list) or not goods:
        raise ParseError("'goods' must be a non-empty array")
    if not isinstance(plans, dict):
        raise ParseError("'plans' must be an object keyed by good id")

    ids: list[str] = []
    kinds: dict[str, str] = {}
    for entry in goods:
        if not isinstance(entry, dict):
            raise ParseError("each good must be an object")
        _check_keys(entry, {"id", "kind"}, "good entry")
        gid, kind = entry.get("id"), entry.get("kind")
        if not isinstance(gid, str) or not gid:
            raise ParseError("good id must be a non-empty string")
        if kind not in ("consumption", "intermediate"):
            raise ParseError(f"good {gid!r}: kind must be consumption|intermediate")
        if gid in kinds:
            raise ParseError(f"duplicate good id {gid!r}")
        ids.append(gid)
        kinds[gid] = kind

    order = [g for g in ids if kinds[g] == "consumption"] + [
        g for g in ids if kinds[g] == "intermediate"
    ]
    index = {g: i for i, g in enumerate(order)}
    ell_c = sum(1 for g in ids if kinds[g] == "consumption")
    ell_p = len(ids) - ell_c
    ell = len(ids)

    if set(plans) != set(ids):
        missing = sorted(set(ids) - set(plans))
        extra = sorted(set(plans) - set(ids))
        raise ParseError(f"plans must cover every good (missing {missing}, extra {extra})")

    plan_list: list[ProductionPlan] = [None] * ell  # type: ignore[list-item]
    for gid in ids:
        entry = plans[gid]
        if not isinstance(entry, dict):
            raise ParseError(f"plan for {gid!r} must be an object")
        _check_keys(entry, {"output", "inputs"}, f"plan {gid!r}")
        output = parse_rational(entry.get("output"))
        inputs_doc = entry.get("inputs", {})
        if not isinstance(inputs_doc, dict):
            raise ParseError(f"plan {gid!r}: inputs must be an object")
        inputs = [ZERO] * ell
        for other, qty in inputs_doc.items():
            if other not in index:
                raise ParseError(f"plan {gid!r}: unknown input good {other!r}")
            inputs[index[other]] = parse_rational(qty)
        plan_list[index[gid]] = ProductionPlan(output, tuple(inputs))

    population_doc = doc.get("population", {})
    if not isinstance(population_doc, dict):
        raise ParseError("'population' must be an object")
    for gid in population_doc:
        if gid not in index:
            raise ParseError(f"population: unknown good {gid!r}")
    population = [1] * ell
    for gid, count in population_doc.items():
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            raise ParseError(f"population for {gid!r} must be a positive integer")
        population[index[gid]] = count

    return validate_system(
        ell_c, ell_p, plan_list, population, labels=tuple(order)
    )


def system_to_document(sys: ProductionSystem) -> dict:
    goods = [
        {"id": sys.labels[k], "kind": "consumption" if k < sys.ell_c else "intermediate"}
        for k in range(sys.ell)
    ]
    plans = {}
    for k in range(sys.ell):
        inputs = {
            sys.labels[j]: format_rational(v)
            for j, v in enumerate(sys.plans[k].inputs)
            if v != 0
        }
        plans[sys.labels[k]] = {
            "output": format_rational(sys.plans[k].output_qty),
            "inputs": inputs,
        }
    population = {sys.labels[k]: sys.population[k] for k in range(sys.ell)}
    return {"goods": goods, "plans": plans, "population": population}


def _price_doc(sys: ProductionSystem, price) -> dict | None:
    if price is None:
        return None
    return {
        "p": {sys.labels[k]: format_rational(v) for k, v in enumerate(price.p)},
        "q": {
            sys.labels[sys.ell_c + m]: format_rational(v)
            for m, v in enumerate(price.q)
        },
    }


def report_to_document(sys: ProductionSystem, report: ClassificationReport) -> dict:
    flags = {}
    witness_map = {
        "acyclic": (
            {"topological_order": [sys.labels[k] for k in report.topo_order]}
            if report.acyclic
            else {
                "cycle": [sys.labels[k] for k in report.cycle.goods],
                "product": format_rational(report.cycle.product),
            }
        ),
        "coherent": (
            None
            if report.conversion_cycle is None
            else {"conversion_cycle": list(report.conversion_cycle.n)}
        ),
        "wv": _price_doc(sys, report.wv_price),
        "v": _price_doc(sys, report.viable_price),
        "wcv": (
            {
                "vertex_witnesses": {
                    sys.labels[k]: [format_rational(v) for v in q]
                    for k, q in enumerate(report.wcv_witnesses)
                }
            }
            if report.wcv
            else {"failing_vertex": sys.labels[report.failing_vertex]}
        ),
        "cv": None,
        "rip": None,
        "wrip": None,
    }
    for name, verdict in report.flags().items():
        flags[name] = {
            "verdict": verdict,
            "method": report.methods.get(name, ""),
        }
        if witness_map.get(name) is not None:
            flags[name]["witness"] = witness_map[name]
    return {
        "flags": flags,
        "net_output": [format_rational(v) for v in report.net_output],
        "determinant": format_rational(report.determinant),
        "leading_minors": [format_rational(v) for v in report.leading_minors],
        "warnings": list(report.warnings),
    }
