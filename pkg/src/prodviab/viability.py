"""Viability deciders: WV, V, WCV, CV, the constructive acyclic price
algorithm, and the implication-lattice consistency check.

Every positive verdict carries a witness that is re-verified exactly, and
independent decision routes (LP, Hawkins-Simon minors, quasi-dominant
diagonal, Fourier-Motzkin projection) are cross-checked against each other.
A disagreement between routes is a bug and raised loudly, never silently resolved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import criteria, lp, structure
from .core import PriceSystem, ProductionSystem, ZMatrix, build_z_matrix, incomes
from .linalg import Matrix, ONE, Vector, ZERO, as_matrix, mat_vec

__all__ = [
    "ClassificationReport",
    "NotAcyclic",
    "CriteriaDisagreement",
    "OracleDisagreement",
    "ImplicationViolation",
    "is_weakly_viable",
    "is_viable",
    "viable_price_acyclic",
    "elimination_trace",
    "is_wcv",
    "is_cv",
    "classify",
    "verify_implications",
    "IMPLICATION_EDGES",
]


class NotAcyclic(ValueError):
    pass


class CriteriaDisagreement(AssertionError):
    pass


class OracleDisagreement(AssertionError):
    pass


class ImplicationViolation(AssertionError):
    def __init__(self, edges, report):
        self.edges = edges
        self.report = report
        super().__init__(f"implication lattice violated: {', '.join(edges)}")


def _slack_lp(sys: ProductionSystem) -> lp.LinearProgram:
    """max t  s.t.  Z(p,q) >= t, p in the simplex, q >= 0, t <= 1."""
    z = build_z_matrix(sys)
    ell = sys.ell
    n = ell + 1
    constraints = []
    for row in z.rows:
        constraints.append(lp.Constraint(row + (-ONE,), lp.GE, ZERO))
    simplex = tuple(ONE if j < sys.ell_c else ZERO for j in range(n))
    constraints.append(lp.Constraint(simplex, lp.EQ, ONE))
    lower = (ZERO,) * ell + (None,)
    upper = (None,) * ell + (ONE,)
    objective = (ZERO,) * ell + (ONE,)
    return lp.LinearProgram(objective, tuple(constraints), lower, upper)


def _slack_optimum(sys: ProductionSystem) -> tuple[Fraction, PriceSystem]:
    outcome = lp.solve(_slack_lp(sys))
    assert outcome.status == lp.OPTIMAL, "slack LP is always feasible and bounded"
    x = outcome.x
    price = PriceSystem(p=x[: sys.ell_c], q=x[sys.ell_c : sys.ell])
    return outcome.value, price


def is_weakly_viable(sys: ProductionSystem) -> tuple[bool, PriceSystem | None]:
    """Non-emptiness of the closed set of non-negative-income prices."""
    t_star, price = _slack_optimum(sys)
    if t_star < 0:
        return False, None
    inc = incomes(build_z_matrix(sys), price)
    assert all(v >= 0 for v in inc)
    return True, price


def is_viable(sys: ProductionSystem) -> tuple[bool, PriceSystem | None]:
    """Strict viability by max-min-slack LP, cross-checked against the
    Hawkins-Simon minors and the quasi-dominant-diagonal certificate."""
    t_star, price = _slack_optimum(sys)
    verdict = t_star > 0
    z = build_z_matrix(sys)
    hs = criteria.hawkins_simon(z)
    pqdd = criteria.find_pqdd(z)
    if not (verdict == hs == (pqdd is not None)):
        raise CriteriaDisagreement(
            f"LP says {verdict}, Hawkins-Simon says {hs}, "
            f"p.q.d.d. says {pqdd is not None}"
        )
    if not verdict:
        return False, None
    inc = incomes(z, price)
    assert all(v > 0 for v in inc)
    assert all(v > 0 for v in price.vector()), "viable prices are strictly positive"
    return True, price


def elimination_trace(z: ZMatrix, c: Vector) -> list[tuple[Matrix, Vector]]:
    """Forward-elimination trace Z^0..Z^{l-1} with the transformed c vectors.

    Step k clears column k below the diagonal using the diagonal pivot; for
    acyclic matrices the pivots never move and every intermediate matrix
    stays of class Z+.
    """
    n = z.n
    rows = [list(r) for r in z.rows]
    cv = list(c)
    trace = [(as_matrix(rows), tuple(cv))]
    for k in range(n - 1):
        pivot = rows[k][k]
        if pivot <= 0:
            raise ArithmeticError(f"non-positive pivot {pivot} at step {k}")
        for i in range(k + 1, n):
            f = rows[i][k] / pivot
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
                cv[i] = cv[i] - f * cv[k]
        trace.append((as_matrix(rows), tuple(cv)))
    return trace


def viable_price_acyclic(sys: ProductionSystem, c: Vector | None = None) -> PriceSystem:
    """Constructive viable price for an acyclic system.

    Forward elimination of Z x = c (any c >> 0; default all ones) followed
    by back substitution and normalisation onto the price simplex.  The
    elimination-trace invariants are re-checked at every step.
    """
    acyclic, _ = structure.is_acyclic(sys)
    if not acyclic:
        raise NotAcyclic("the constructive algorithm requires an acyclic system")
    z = build_z_matrix(sys)
    n = z.n
    if c is None:
        c = (ONE,) * n
    c = tuple(Fraction(v) for v in c)
    if len(c) != n or any(v <= 0 for v in c):
        raise ValueError("c must be strictly positive with one entry per good")

    trace = elimination_trace(z, c)
    diag = tuple(z.rows[i][i] for i in range(n))
    prev_c = trace[0][1]
    for rows, cv in trace:
        for i in range(n):
            assert rows[i][i] == diag[i], "elimination must preserve the diagonal"
            assert all(
                rows[i][j] <= 0 for j in range(n) if j != i
            ), "intermediate matrices must stay of class Z+"
        assert all(a >= b for a, b in zip(cv, prev_c)), "c must be nondecreasing"
        assert all(v > 0 for v in cv)
        prev_c = cv

    u_rows, u_c = trace[-1]
    x = [ZERO] * n
    for k in range(n - 1, -1, -1):
        acc = u_c[k]
        for h in range(k + 1, n):
            acc -= u_rows[k][h] * x[h]
        x[k] = acc / u_rows[k][k]
        assert x[k] > 0
    assert mat_vec(z.rows, tuple(x)) == c, "back substitution must solve Z x = c"

    scale = sum(x[: sys.ell_c], ZERO)
    price = PriceSystem(
        p=tuple(v / scale for v in x[: sys.ell_c]),
        q=tuple(v / scale for v in x[sys.ell_c :]),
    )
    inc = incomes(z, price)
    assert all(v > 0 for v in inc)
    return price


def _vertex_feasible_q(z: ZMatrix, vertex: int):
    """Witness q >= 0 giving all incomes >= 0 at simplex vertex e_vertex."""
    ell_c, ell_p = z.ell_c, z.ell_p
    if ell_p == 0:
        ok = all(row[vertex] >= 0 for row in z.rows)
        return () if ok else None
    constraints = tuple(
        lp.Constraint(
            tuple(row[ell_c + m] for m in range(ell_p)), lp.GE, -row[vertex]
        )
        for row in z.rows
    )
    program = lp.LinearProgram(
        objective=(ZERO,) * ell_p,
        constraints=constraints,
        lower=(ZERO,) * ell_p,
        upper=(None,) * ell_p,
    )
    outcome = lp.solve(program)
    if outcome.status != lp.OPTIMAL:
        return None
    return outcome.x


def wcv_projection(z: ZMatrix) -> list[tuple[Vector, Fraction]]:
    """Fourier-Motzkin projection of {incomes >= 0, q >= 0} onto the p
    coordinates; a p admits a weakly-viable q iff it satisfies every row."""
    ell = z.n
    system = [(row, ZERO) for row in z.rows]
    for m in range(z.ell_c, ell):
        system.append((tuple(ONE if j == m else ZERO for j in range(ell)), ZERO))
    return lp.fourier_motzkin_eliminate(system, list(range(z.ell_c, ell)))


def _wcv_by_projection(z: ZMatrix) -> bool:
    rows = wcv_projection(z)
    for k in range(z.ell_c):
        for a, b in rows:
            if a[k] < b:  # a . e_k = a[k]
                return False
    return True


def is_wcv(sys: ProductionSystem, fm_oracle: bool | None = None):
    """Weak complete viability by simplex-vertex feasibility.

    The set of p admitting a weakly-viable q is a projected polyhedron and
    hence convex, so it contains the simplex iff it contains every vertex.
    The Fourier-Motzkin projection serves as an independent oracle (on by
    default whenever ell_p <= 6) and any disagreement is raised.
    Returns (True, per-vertex q witnesses) or (False, failing vertex index).
    """
    z = build_z_matrix(sys)
    witnesses = []
    failing = None
    for k in range(sys.ell_c):
        q = _vertex_feasible_q(z, k)
        if q is None:
            failing = k
            break
        witnesses.append(q)
    verdict = failing is None
    if fm_oracle is None:
        fm_oracle = sys.ell_p <= 6
    if fm_oracle:
        fm_verdict = _wcv_by_projection(z)
        if fm_verdict != verdict:
            raise OracleDisagreement(
                f"vertex LPs say {verdict}, Fourier-Motzkin projection says {fm_verdict}"
            )
    return (True, tuple(witnesses)) if verdict else (False, failing)


def is_cv(sys: ProductionSystem, fm_oracle: bool | None = None) -> bool:
    """Complete viability, decided as viable plus weakly completely viable."""
    viable, _ = is_viable(sys)
    if not viable:
        return False
    wcv, _ = is_wcv(sys, fm_oracle=fm_oracle)
    return wcv


@dataclass(frozen=True)
class ClassificationReport:
    acyclic: bool
    coherent: bool
    wv: bool
    v: bool
    wcv: bool
    cv: bool
    rip: bool
    wrip: bool
    determinant: Fraction
    leading_minors: tuple[Fraction, ...]
    net_output: Vector
    viable_price: PriceSystem | None = None
    wv_price: PriceSystem | None = None
    topo_order: tuple[int, ...] | None = None
    cycle: structure.CycleCertificate | None = None
    conversion_cycle: structure.ConversionCycle | None = None
    wcv_witnesses: tuple[Vector, ...] | None = None
    failing_vertex: int | None = None
    methods: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def flags(self) -> dict[str, bool]:
        return {
            "acyclic": self.acyclic,
            "coherent": self.coherent,
            "wv": self.wv,
            "v": self.v,
            "wcv": self.wcv,
            "cv": self.cv,
            "rip": self.rip,
            "wrip": self.wrip,
        }


IMPLICATION_EDGES = (
    ("acyclic => coherent", lambda f: not f["acyclic"] or f["coherent"]),
    ("acyclic => v", lambda f: not f["acyclic"] or f["v"]),
    ("v => coherent", lambda f: not f["v"] or f["coherent"]),
    ("v => wv", lambda f: not f["v"] or f["wv"]),
    ("v <=> wv & coherent", lambda f: f["v"] == (f["wv"] and f["coherent"])),
    ("cv => v", lambda f: not f["cv"] or f["v"]),
    ("cv => wcv", lambda f: not f["cv"] or f["wcv"]),
    ("cv <=> v & wcv", lambda f: f["cv"] == (f["v"] and f["wcv"])),
    ("cv <=> wcv & coherent", lambda f: f["cv"] == (f["wcv"] and f["coherent"])),
    ("rip => wcv", lambda f: not f["rip"] or f["wcv"]),
    ("wcv => wrip", lambda f: not f["wcv"] or f["wrip"]),
    ("rip => wrip", lambda f: not f["rip"] or f["wrip"]),
    ("acyclic & rip => cv", lambda f: not (f["acyclic"] and f["rip"]) or f["cv"]),
)


def verify_implications(report: ClassificationReport) -> tuple[str, ...]:
    """Names of violated lattice edges; empty means the flags are consistent."""
    flags = report.flags()
    return tuple(name for name, check in IMPLICATION_EDGES if not check(flags))


def classify(
    sys: ProductionSystem,
    cc_budget: int = 10**6,
    fm_oracle: bool | None = None,
) -> ClassificationReport:
    """Run every decider, attach witnesses and check the implication lattice.

    A lattice violation indicates an implementation bug (the implications
    are proved facts) and raises ImplicationViolation.
    """
    z = build_z_matrix(sys)
    methods: dict[str, str] = {}

    acyclic, acyclic_evidence = structure.is_acyclic(sys)
    methods["acyclic"] = "depth-first search over the input graph"
    topo = acyclic_evidence if acyclic else None
    cycle = None if acyclic else acyclic_evidence

    det = structure.determinant(z)
    coherent = det != 0
    methods["coherent"] = "exact determinant"
    conversion = None
    try:
        conversion = structure.find_conversion_cycle(sys, budget=cc_budget)
        methods["coherent"] += " + bounded conversion-cycle search"
        if conversion is not None and coherent:
            raise CriteriaDisagreement(
                "conversion cycle found for a non-singular Z matrix"
            )
    except structure.BudgetExceeded:
        methods["coherent"] += " (search budget exceeded; determinant only)"

    wv, wv_price = is_weakly_viable(sys)
    methods["wv"] = "max-min-slack LP (t* >= 0)"
    v, v_price = is_viable(sys)
    methods["v"] = "max-min-slack LP (t* > 0), cross-checked: Hawkins-Simon, p.q.d.d."
    wcv, wcv_evidence = is_wcv(sys, fm_oracle=fm_oracle)
    methods["wcv"] = "simplex-vertex LP feasibility"
    if fm_oracle or (fm_oracle is None and sys.ell_p <= 6):
        methods["wcv"] += ", cross-checked: Fourier-Motzkin projection"
    cv = v and wcv
    methods["cv"] = "identity cv <=> v & wcv"
    rip = structure.satisfies_rip(sys)
    wrip = structure.satisfies_wrip(sys)
    methods["rip"] = methods["wrip"] = "zero-pattern scan"

    report = ClassificationReport(
        acyclic=acyclic,
        coherent=coherent,
        wv=wv,
        v=v,
        wcv=wcv,
        cv=cv,
        rip=rip,
        wrip=wrip,
        determinant=det,
        leading_minors=criteria.leading_principal_minors(z),
        net_output=sys.net_output,
        viable_price=v_price,
        wv_price=wv_price,
        topo_order=topo,
        cycle=cycle,
        conversion_cycle=conversion,
        wcv_witnesses=wcv_evidence if wcv else None,
        failing_vertex=None if wcv else wcv_evidence,
        methods=methods,
        warnings=sys.warnings,
    )
    violated = verify_implications(report)
    if violated:
        raise ImplicationViolation(violated, report)
    return report
