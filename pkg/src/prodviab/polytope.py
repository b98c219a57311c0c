"""Geometry of the weakly-viable price set.

H-representation assembly, exact vertex/ray enumeration by tight-set
search, boundedness via recession-direction LPs, interior points by
max-min slack, and the 2-D region export used for the plots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, lp
from .core import ProductionSystem, build_z_matrix
from .linalg import Matrix, ONE, Vector, ZERO, dot

__all__ = [
    "HPolytope",
    "VPolytope",
    "RegionSegment",
    "DimensionTooLarge",
    "WrongShape",
    "delta_prime_hrep",
    "enumerate_vertices",
    "is_bounded",
    "interior_point",
    "project_2d",
]


class DimensionTooLarge(ValueError):
    pass


class WrongShape(ValueError):
    pass


@dataclass(frozen=True)
class HPolytope:
    """Half-space system: ineqs are rows a . x >= b, eqs are a . x = b."""

    dim: int
    ineqs: tuple[tuple[Vector, Fraction], ...]
    eqs: tuple[tuple[Vector, Fraction], ...] = ()
    labels: tuple[str, ...] = ()

    def contains(self, x: Vector) -> bool:
        return all(dot(a, x) >= b for a, b in self.ineqs) and all(
            dot(a, x) == b for a, b in self.eqs
        )


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple[Vector, ...]
    rays: tuple[Vector, ...] = ()


@dataclass(frozen=True)
class RegionSegment:
    """One boundary edge of the 2-D region in (q, p) coordinates."""

    label: str
    start: tuple[Fraction, Fraction]
    end: tuple[Fraction, Fraction]


def delta_prime_hrep(sys: ProductionSystem) -> HPolytope:
    """Half-space system of the weakly-viable set over (p, q) coordinates."""
    z = build_z_matrix(sys)
    ell = sys.ell
    ineqs = []
    labels = []
    for k, row in enumerate(z.rows):
        ineqs.append((row, ZERO))
        labels.append(f"income[{sys.labels[k]}] >= 0")
    for j in range(ell):
        e = tuple(ONE if i == j else ZERO for i in range(ell))
        ineqs.append((e, ZERO))
        name = sys.labels[j]
        labels.append(f"{'p' if j < sys.ell_c else 'q'}[{name}] >= 0")
    simplex = tuple(ONE if j < sys.ell_c else ZERO for j in range(ell))
    return HPolytope(
        dim=ell,
        ineqs=tuple(ineqs),
        eqs=((simplex, ONE),),
        labels=tuple(labels),
    )


def _to_lp(h: HPolytope, objective: Vector) -> lp.LinearProgram:
    constraints = [lp.Constraint(a, lp.GE, b) for a, b in h.ineqs]
    constraints += [lp.Constraint(a, lp.EQ, b) for a, b in h.eqs]
    return lp.LinearProgram(objective, tuple(constraints))


def enumerate_vertices(h: HPolytope, max_dim: int = 8) -> VPolytope:
    """Exact vertices (and extreme rays, when unbounded) by tight-set search.

    Every subset of inequality rows that together with the equalities pins
    down a unique point is solved exactly and kept when feasible.  Ray
    search runs the same enumeration on the recession cone; the cone is
    pointed whenever the system contains the coordinate non-negativity
    rows, which delta_prime_hrep always emits.
    """
    n = h.dim
    if n > max_dim:
        raise DimensionTooLarge(f"{n} > {max_dim}")
    eq_rows = [a for a, _ in h.eqs]
    eq_rhs = [b for _, b in h.eqs]
    r = linalg.rank(tuple(eq_rows)) if eq_rows else 0
    need = n - r

    vertices: set[Vector] = set()
    for subset in itertools.combinations(range(len(h.ineqs)), need):
        rows = tuple(eq_rows) + tuple(h.ineqs[i][0] for i in subset)
        rhs = tuple(eq_rhs) + tuple(h.ineqs[i][1] for i in subset)
        if linalg.rank(rows) != n:
            continue
        point = _solve_full_rank(rows, rhs, n)
        if point is not None and h.contains(point):
            vertices.add(point)

    rays: set[Vector] = set()
    if need >= 1:
        for subset in itertools.combinations(range(len(h.ineqs)), need - 1):
            rows = tuple(eq_rows) + tuple(h.ineqs[i][0] for i in subset)
            basis = linalg.nullspace(rows) if rows else [
                tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)
            ]
            if len(basis) != 1:
                continue
            for d in (basis[0], tuple(-v for v in basis[0])):
                if all(dot(a, d) >= 0 for a, _ in h.ineqs):
                    rays.add(_normalise_ray(d))
    return VPolytope(vertices=tuple(sorted(vertices)), rays=tuple(sorted(rays)))


def _solve_full_rank(rows: Matrix, rhs, n: int) -> Vector | None:
    # overdetermined consistent solve: reduce to n independent rows
    indep: list[Vector] = []
    indep_rhs = []
    for a, b in zip(rows, rhs):
        if linalg.rank(tuple(indep) + (a,)) > len(indep):
            indep.append(a)
            indep_rhs.append(b)
        if len(indep) == n:
            break
    sol = linalg.solve_square(tuple(indep), tuple(indep_rhs))
    if sol is None:
        return None
    if all(dot(a, sol) == b for a, b in zip(rows, rhs)):
        return sol
    return None


def _normalise_ray(d: Vector) -> Vector:
    lead = next(v for v in d if v != 0)
    scale = ONE / abs(lead)
    return tuple(v * scale for v in d)


def is_bounded(h: HPolytope) -> bool:
    """True iff the recession cone is trivial (LP per coordinate direction)."""
    for j in range(h.dim):
        for sign in (ONE, -ONE):
            objective = tuple(sign if i == j else ZERO for i in range(h.dim))
            outcome = lp.solve(_to_lp(h, objective))
            if outcome.status == lp.UNBOUNDED:
                return False
            if outcome.status == lp.INFEASIBLE:
                return True  # empty set is trivially bounded
    return True


def interior_point(h: HPolytope) -> tuple[Vector, Fraction] | None:
    """Max-min-slack point over the inequality rows, or None when empty.

    Returns (point, slack); slack > 0 places the point in the relative
    interior, slack == 0 means the region has an empty relative interior
    with respect to its strict counterpart.
    """
    n = h.dim
    constraints = [
        lp.Constraint(a + (-ONE,), lp.GE, b) for a, b in h.ineqs
    ]
    constraints += [lp.Constraint(a + (ZERO,), lp.EQ, b) for a, b in h.eqs]
    constraints.append(
        lp.Constraint((ZERO,) * n + (ONE,), lp.LE, ONE)
    )
    program = lp.LinearProgram(
        objective=(ZERO,) * n + (ONE,),
        constraints=tuple(constraints),
    )
    outcome = lp.solve(program)
    if outcome.status != lp.OPTIMAL or outcome.value < 0:
        return None
    return outcome.x[:n], outcome.value


def _format_line(c_q: Fraction, c_p: Fraction, const: Fraction) -> str:
    """Human-readable boundary line of c_q q + c_p p + const >= 0."""
    if c_p != 0:
        m = -c_q / c_p
        b = -const / c_p
        parts = []
        if b != 0:
            parts.append(str(b))
        if m != 0:
            term = "q" if m == 1 else ("-q" if m == -1 else f"{m}q")
            if parts and m > 0:
                parts.append(f"+ {term}")
            elif parts and m < 0:
                parts.append(f"- {term.lstrip('-')}")
            else:
                parts.append(term)
        return "p = " + (" ".join(parts) if parts else "0")
    if c_q != 0:
        return f"q = {-const / c_q}"
    return "0 = 0"


def project_2d(sys: ProductionSystem) -> list[RegionSegment]:
    """Boundary segments of the weakly-viable region in the (q, p) plane.

    Requires exactly two consumption goods and one intermediate good; the
    consumption price vector is parameterised as (p, 1 - p).
    """
    if sys.ell_c != 2 or sys.ell_p != 1:
        raise WrongShape("2-D export needs ell_c = 2 and ell_p = 1")
    z = build_z_matrix(sys)
    # coordinates (q, p); income row i becomes c_q q + c_p p + const >= 0
    rows = []
    labels = []
    for k, row in enumerate(z.rows):
        c_p = row[0] - row[1]
        c_q = row[2]
        const = row[1]
        rows.append(((c_q, c_p), -const))
        labels.append(_format_line(c_q, c_p, const))
    box = [
        (((ZERO, ONE), ZERO), "p = 0"),
        (((ZERO, -ONE), -ONE), "p = 1"),
        (((ONE, ZERO), ZERO), "q = 0"),
    ]
    for row, label in box:
        rows.append(row)
        labels.append(label)
    h = HPolytope(dim=2, ineqs=tuple(rows), eqs=(), labels=tuple(labels))
    vp = enumerate_vertices(h)
    if vp.rays:
        raise WrongShape("weakly-viable region is unbounded; no finite 2-D plot")
    segments = []
    seen = set()
    for (a, b), label in zip(h.ineqs, h.labels or labels):
        tight = [v for v in vp.vertices if dot(a, v) == b]
        if len(tight) < 2:
            continue
        tight.sort()
        edge = (tight[0], tight[-1])
        if edge in seen:  # an income row can coincide with a box line
            continue
        seen.add(edge)
        segments.append(RegionSegment(label=label, start=edge[0], end=edge[1]))
    return segments
