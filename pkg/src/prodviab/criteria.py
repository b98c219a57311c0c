"""Matrix-theoretic viability criteria for Z+ matrices.

Leading and full principal minors (the Hawkins-Simon route) and the
quasi-dominant-diagonal certificate found by exact LP.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, lp
from .core import ZMatrix
from .linalg import Matrix, ONE, ZERO, submatrix, transpose

__all__ = [
    "PqddCertificate",
    "NotZPlus",
    "DimensionTooLarge",
    "leading_principal_minors",
    "all_principal_minors_positive",
    "hawkins_simon",
    "find_pqdd",
]


class NotZPlus(ValueError):
    pass


class DimensionTooLarge(ValueError):
    pass


def _rows(z: ZMatrix | Matrix) -> Matrix:
    return z.rows if isinstance(z, ZMatrix) else tuple(tuple(r) for r in z)


def _require_z_plus(rows: Matrix):
    for i, row in enumerate(rows):
        if row[i] <= 0:
            raise NotZPlus(f"diagonal entry {i} is {row[i]}, must be > 0")
        for j, v in enumerate(row):
            if i != j and v > 0:
                raise NotZPlus(f"off-diagonal entry ({i},{j}) is {v}, must be <= 0")


@dataclass(frozen=True)
class PqddCertificate:
    """Strictly positive weights making each weighted diagonal dominate its row."""

    d: tuple[Fraction, ...]

    def verify(self, z: ZMatrix | Matrix, column: bool = False) -> bool:
        rows = _rows(z)
        if column:
            rows = transpose(rows)
        n = len(rows)
        if len(self.d) != n or any(v <= 0 for v in self.d):
            return False
        for i in range(n):
            off = sum((self.d[j] * abs(rows[i][j]) for j in range(n) if j != i), ZERO)
            if not self.d[i] * abs(rows[i][i]) > off:
                return False
        return True


def leading_principal_minors(z: ZMatrix | Matrix) -> tuple[Fraction, ...]:
    rows = _rows(z)
    n = len(rows)
    idx = list(range(n))
    return tuple(
        linalg.determinant(submatrix(rows, idx[: m + 1], idx[: m + 1]))
        for m in range(n)
    )


def all_principal_minors_positive(z: ZMatrix | Matrix, max_dim: int = 16) -> bool:
    """Every principal submatrix determinant is positive.

    Subsets are enumerated by increasing cardinality and the scan stops at
    the first non-positive minor.
    """
    rows = _rows(z)
    n = len(rows)
    if n > max_dim:
        raise DimensionTooLarge(f"{n} > {max_dim}: 2^n principal minors")
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            if linalg.determinant(submatrix(rows, subset, subset)) <= 0:
                return False
    return True


def hawkins_simon(z: ZMatrix | Matrix) -> bool:
    """All leading principal minors positive (matrix must be of class Z+)."""
    rows = _rows(z)
    _require_z_plus(rows)
    return all(m > 0 for m in leading_principal_minors(rows))


def find_pqdd(z: ZMatrix | Matrix) -> PqddCertificate | None:
    """Row-form quasi-dominant-diagonal weights, or None when none exist.

    The strict system d_i a_ii > sum_j d_j |a_ij| is homogeneous, so it is
    solvable iff the slack-1 system with d >= 1 is feasible; any feasible
    point is itself a certificate.
    """
    rows = _rows(z)
    _require_z_plus(rows)
    n = len(rows)
    constraints = []
    for i in range(n):
        coeffs = tuple(
            rows[i][i] if j == i else -abs(rows[i][j]) for j in range(n)
        )
        constraints.append(lp.Constraint(coeffs, lp.GE, ONE))
    program = lp.LinearProgram(
        objective=(ZERO,) * n,
        constraints=tuple(constraints),
        lower=(ONE,) * n,
        upper=(None,) * n,
    )
    outcome = lp.solve(program)
    if outcome.status != lp.OPTIMAL:
        return None
    cert = PqddCertificate(outcome.x)
    assert cert.verify(rows)
    return cert
