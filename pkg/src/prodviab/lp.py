"""Exact rational linear programming.

A small dense two-phase simplex over fractions with Bland's anti-cycling
rule.  Every outcome carries a re-verifiable certificate: the primal point
for optimality (plus dual multipliers), a Farkas vector for infeasibility.

Internally each variable x_j is split into u_j - v_j with u, v >= 0 and
variable bounds become ordinary constraint rows, so the Farkas and dual
certificates live directly on the expanded row system produced by
:func:`expanded_rows`.  That keeps certificate verification trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vector, ZERO, ONE, dot, frac

__all__ = [
    "LE",
    "GE",
    "EQ",
    "Constraint",
    "LinearProgram",
    "LpOutcome",
    "solve",
    "expanded_rows",
    "verify_primal",
    "verify_farkas",
    "verify_dual",
    "fourier_motzkin_eliminate",
    "BudgetExceeded",
]

LE = "<="
GE = ">="
EQ = "=="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: Vector
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in (LE, GE, EQ):
            raise ValueError(f"bad relation {self.rel!r}")
        object.__setattr__(self, "coeffs", tuple(frac(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", frac(self.rhs))


@dataclass(frozen=True)
class LinearProgram:
    """Maximise objective . x subject to constraints and optional bounds."""

    objective: Vector
    constraints: tuple[Constraint, ...]
    lower: tuple[Fraction | None, ...] = ()
    upper: tuple[Fraction | None, ...] = ()

    def __post_init__(self):
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(frac(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        lower = self.lower if self.lower else (None,) * n
        upper = self.upper if self.upper else (None,) * n
        object.__setattr__(
            self, "lower", tuple(None if b is None else frac(b) for b in lower)
        )
        object.__setattr__(
            self, "upper", tuple(None if b is None else frac(b) for b in upper)
        )
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("bound vectors must match the variable count")
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise ValueError("constraint dimension mismatch")

    @property
    def n(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpOutcome:
    status: str
    x: Vector | None = None
    value: Fraction | None = None
    dual: Vector | None = None
    farkas: Vector | None = None


def expanded_rows(lp: LinearProgram) -> list[tuple[Vector, str, Fraction]]:
    """Canonical row system: every row is GE or EQ, bounds included.

    LE constraints are negated into GE rows.  Certificate vectors returned
    by :func:`solve` are indexed against this list.
    """
    n = lp.n
    rows: list[tuple[Vector, str, Fraction]] = []
    for c in lp.constraints:
        if c.rel == LE:
            rows.append((tuple(-v for v in c.coeffs), GE, -c.rhs))
        else:
            rows.append((c.coeffs, c.rel, c.rhs))
    for j in range(n):
        if lp.lower[j] is not None:
            e = tuple(ONE if i == j else ZERO for i in range(n))
            rows.append((e, GE, lp.lower[j]))
        if lp.upper[j] is not None:
            e = tuple(-ONE if i == j else ZERO for i in range(n))
            rows.append((e, GE, -lp.upper[j]))
    return rows


def verify_primal(lp: LinearProgram, x: Vector) -> bool:
    return all(
        (dot(a, x) == b) if rel == EQ else (dot(a, x) >= b)
        for a, rel, b in expanded_rows(lp)
    )


def verify_farkas(lp: LinearProgram, y: Vector) -> bool:
    """y >= 0 on GE rows, combined coefficients vanish, combined rhs > 0."""
    rows = expanded_rows(lp)
    if len(y) != len(rows):
        return False
    for yi, (_, rel, _) in zip(y, rows):
        if rel == GE and yi < 0:
            return False
    combined = [ZERO] * lp.n
    rhs = ZERO
    for yi, (a, _, b) in zip(y, rows):
        if yi == 0:
            continue
        for j, aj in enumerate(a):
            combined[j] += yi * aj
        rhs += yi * b
    return all(v == 0 for v in combined) and rhs > 0


def verify_dual(lp: LinearProgram, y: Vector, value: Fraction) -> bool:
    """Dual feasibility and strong duality against the expanded rows.

    For a maximisation over rows a.x >= b the multipliers satisfy y <= 0 on
    GE rows, sum_i y_i a_i = objective and sum_i y_i b_i = value.
    """
    rows = expanded_rows(lp)
    if len(y) != len(rows):
        return False
    for yi, (_, rel, _) in zip(y, rows):
        if rel == GE and yi > 0:
            return False
    combined = [ZERO] * lp.n
    rhs = ZERO
    for yi, (a, _, b) in zip(y, rows):
        if yi == 0:
            continue
        for j, aj in enumerate(a):
            combined[j] += yi * aj
        rhs += yi * b
    return tuple(combined) == lp.objective and rhs == value


class _Tableau:
    """Dense simplex tableau with Bland's rule; columns are u, v, slack, art."""

    def __init__(self, rows: list[tuple[Vector, str, Fraction]], n: int):
        self.n = n
        self.m = len(rows)
        ge_rows = [i for i, r in enumerate(rows) if r[1] == GE]
        self.slack_of_row = {i: n * 2 + k for k, i in enumerate(ge_rows)}
        self.n_slack = len(ge_rows)
        self.art0 = n * 2 + self.n_slack
        self.ncols = self.art0 + self.m
        self.flip = []
        self.body: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        self.basis: list[int] = []
        for i, (a, rel, b) in enumerate(rows):
            sigma = -1 if b < 0 else 1
            self.flip.append(sigma)
            row = [ZERO] * self.ncols
            for j, aj in enumerate(a):
                if aj != 0:
                    row[j] = sigma * aj
                    row[self.n + j] = -sigma * aj
            if rel == GE:
                row[self.slack_of_row[i]] = -sigma * ONE
            row[self.art0 + i] = ONE
            self.body.append(row)
            self.rhs.append(sigma * b)
            self.basis.append(self.art0 + i)

    def reduced_costs(self, costs: list[Fraction]):
        """Objective row c_j - pi.A_j for all columns plus the value."""
        obj = list(costs) + [ZERO]
        for r, bvar in enumerate(self.basis):
            coef = obj[bvar]
            if coef != 0:
                row = self.body[r]
                for j in range(self.ncols):
                    if row[j] != 0:
                        obj[j] -= coef * row[j]
                obj[self.ncols] -= coef * self.rhs[r]
        return obj[: self.ncols], -obj[self.ncols]

    def pivot(self, row: int, col: int):
        piv = self.body[row][col]
        inv = ONE / piv
        self.body[row] = [v * inv for v in self.body[row]]
        self.rhs[row] *= inv
        prow = self.body[row]
        prhs = self.rhs[row]
        for i in range(self.m):
            if i == row:
                continue
            f = self.body[i][col]
            if f != 0:
                self.body[i] = [vi - f * vp for vi, vp in zip(self.body[i], prow)]
                self.rhs[i] -= f * prhs
        self.basis[row] = col

    def run(self, costs: list[Fraction], banned: set[int]):
        """Maximise; returns ("optimal", reduced, value) or ("unbounded", col)."""
        while True:
            reduced, value = self.reduced_costs(costs)
            entering = None
            for j in range(self.ncols):
                if j in banned:
                    continue
                if reduced[j] > 0:
                    entering = j
                    break
            if entering is None:
                return ("optimal", reduced, value)
            leaving = None
            best = None
            for i in range(self.m):
                a = self.body[i][entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leaving])
                    ):
                        best = ratio
                        leaving = i
            if leaving is None:
                return ("unbounded", entering, None)
            self.pivot(leaving, entering)


def solve(lp: LinearProgram) -> LpOutcome:
    """Two-phase exact simplex with Bland's rule.

    Deterministic for a fixed variable ordering.  Certificates are checked
    before being returned; an internal failure raises AssertionError.
    """
    n = lp.n
    rows = expanded_rows(lp)
    t = _Tableau(rows, n)

    # phase 1: maximise -sum(artificials)
    phase1 = [ZERO] * t.ncols
    for j in range(t.art0, t.ncols):
        phase1[j] = -ONE
    status, reduced, value = t.run(phase1, banned=set())
    assert status == "optimal"  # phase-1 objective is bounded above by 0
    if value < 0:
        # pi_i = c_art_i - reduced_art_i; farkas_i = -sigma_i * pi_i
        farkas = tuple(
            -t.flip[i] * (-ONE - reduced[t.art0 + i]) for i in range(t.m)
        )
        assert verify_farkas(lp, farkas), "invalid Farkas certificate"
        return LpOutcome(status=INFEASIBLE, farkas=farkas)

    # Pivot leftover basic artificials (all at zero) out of the basis; rows
    # where no structural column remains are redundant and stay inert.
    for r in range(t.m):
        if t.basis[r] >= t.art0:
            col = next(
                (j for j in range(t.art0) if t.body[r][j] != 0), None
            )
            if col is not None:
                t.pivot(r, col)

    # phase 2: original objective on the split columns, artificials barred
    banned = set(range(t.art0, t.ncols))
    phase2 = [ZERO] * t.ncols
    for j in range(n):
        phase2[j] = lp.objective[j]
        phase2[n + j] = -lp.objective[j]
    status, reduced, value = t.run(phase2, banned=banned)
    if status == "unbounded":
        return LpOutcome(status=UNBOUNDED)
    x = [ZERO] * n
    for r, bvar in enumerate(t.basis):
        if bvar < n:
            x[bvar] += t.rhs[r]
        elif bvar < 2 * n:
            x[bvar - n] -= t.rhs[r]
    x = tuple(x)
    dual = tuple(t.flip[i] * (ZERO - reduced[t.art0 + i]) for i in range(t.m))
    assert verify_primal(lp, x), "optimal point violates a constraint"
    assert verify_dual(lp, dual, value), "invalid dual certificate"
    assert dot(lp.objective, x) == value
    return LpOutcome(status=OPTIMAL, x=x, value=value, dual=dual)


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination


def _normalise(coeffs: Vector, rhs: Fraction) -> tuple[Vector, Fraction]:
    lead = next((c for c in coeffs if c != 0), None)
    if lead is None:
        return coeffs, rhs
    scale = ONE / abs(lead)
    return tuple(c * scale for c in coeffs), rhs * scale


def _prune(rows: list[tuple[Vector, Fraction]]) -> list[tuple[Vector, Fraction]]:
    """Drop tautologies and syntactically dominated parallel rows."""
    best: dict[Vector, Fraction] = {}
    order: list[Vector] = []
    infeasible: list[tuple[Vector, Fraction]] = []
    for coeffs, rhs in rows:
        coeffs, rhs = _normalise(coeffs, rhs)
        if all(c == 0 for c in coeffs):
            if rhs > 0:
                infeasible.append((coeffs, rhs))
            continue
        if coeffs not in best:
            best[coeffs] = rhs
            order.append(coeffs)
        elif rhs > best[coeffs]:
            best[coeffs] = rhs
    out = [(c, best[c]) for c in order]
    if infeasible:
        out.append(infeasible[0])
    return out


def fourier_motzkin_eliminate(
    system: list[tuple[Vector, Fraction]],
    eliminate: list[int],
    max_rows: int = 20000,
) -> list[tuple[Vector, Fraction]]:
    """Project a system of rows ``a . x >= b`` onto the remaining variables.

    ``eliminate`` lists variable indices to remove; eliminated coordinates
    are zero in every returned row.  The returned system is satisfied by a
    point iff some assignment of the eliminated variables satisfies the
    original system.  A row ``(0, ..., 0) >= r`` with r > 0 encodes global
    infeasibility of the projection.
    """
    rows = _prune([(tuple(frac(c) for c in a), frac(b)) for a, b in system])
    for var in eliminate:
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        zero = [r for r in rows if r[0][var] == 0]
        combined: list[tuple[Vector, Fraction]] = []
        for ap, bp in pos:
            sp = ONE / ap[var]
            ap_s = tuple(c * sp for c in ap)
            bp_s = bp * sp
            for an, bn in neg:
                sn = ONE / (-an[var])
                coeffs = tuple(
                    cp + cn * sn for cp, cn in zip(ap_s, an)
                )
                combined.append((coeffs, bp_s + bn * sn))
        rows = _prune(zero + combined)
        if len(rows) > max_rows:
            raise BudgetExceeded(
                f"Fourier-Motzkin produced {len(rows)} rows (limit {max_rows})"
            )
    return rows
