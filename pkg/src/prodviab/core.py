"""Domain types for structured production systems.

A system consists of consumption goods (indices 0..ell_c-1), intermediate
goods (indices ell_c..ell-1), one fixed production plan per good, and a
positive population count per profession.  All quantities are exact
rationals; no decision anywhere in this package goes through floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Vector, ZERO, dot, frac

__all__ = [
    "GoodId",
    "ProductionPlan",
    "ProductionSystem",
    "ZMatrix",
    "PriceSystem",
    "ValidationIssue",
    "ValidationErrors",
    "DimensionMismatch",
    "validate_system",
    "build_z_matrix",
    "incomes",
]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GoodId:
    index: int
    label: str


@dataclass(frozen=True)
class ProductionPlan:
    """One profession: a fixed output quantity and its input bundle."""

    output_qty: Fraction
    inputs: Vector

    def __post_init__(self):
        object.__setattr__(self, "output_qty", frac(self.output_qty))
        object.__setattr__(self, "inputs", tuple(frac(v) for v in self.inputs))


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    good: int | None
    message: str

    def __str__(self):
        where = f" (good {self.good})" if self.good is not None else ""
        return f"{self.code}{where}: {self.message}"


class ValidationErrors(ValueError):
    def __init__(self, issues: list[ValidationIssue]):
        self.issues = issues
        super().__init__("; ".join(str(i) for i in issues))


@dataclass(frozen=True)
class ProductionSystem:
    """A validated structured production system.

    Instances should be produced by :func:`validate_system`, which checks
    the plan invariants and the net-output condition and fills in the net
    output vector ``e``.
    """

    ell_c: int
    ell_p: int
    plans: tuple[ProductionPlan, ...]
    population: tuple[int, ...]
    labels: tuple[str, ...]
    net_output: Vector
    warnings: tuple[str, ...] = ()

    @property
    def ell(self) -> int:
        return self.ell_c + self.ell_p

    @property
    def goods(self) -> tuple[GoodId, ...]:
        return tuple(GoodId(i, lab) for i, lab in enumerate(self.labels))

    def is_consumption(self, k: int) -> bool:
        return k < self.ell_c

    def input_qty(self, producer: int, good: int) -> Fraction:
        """Units of ``good`` consumed per professional producing ``producer``."""
        return self.plans[producer].inputs[good]


@dataclass(frozen=True)
class ZMatrix:
    """Exact matrix of class Z+ whose row k is Q^k e_k - y^k."""

    rows: Matrix
    ell_c: int
    ell_p: int

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("Z matrix must be square")
        for i, row in enumerate(self.rows):
            if row[i] <= 0:
                raise ValueError(f"diagonal entry {i} must be positive")
            for j, v in enumerate(row):
                if i != j and v > 0:
                    raise ValueError(f"off-diagonal entry ({i},{j}) must be <= 0")

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def transposed_rows(self) -> Matrix:
        n = self.n
        return tuple(tuple(self.rows[i][j] for i in range(n)) for j in range(n))


@dataclass(frozen=True)
class PriceSystem:
    """Simplex-normalised consumption prices plus non-negative input prices."""

    p: Vector
    q: Vector

    def __post_init__(self):
        p = tuple(frac(v) for v in self.p)
        q = tuple(frac(v) for v in self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if any(v < 0 for v in p) or any(v < 0 for v in q):
            raise ValueError("prices must be non-negative")
        if sum(p, ZERO) != 1:
            raise ValueError("consumption prices must sum to 1")

    def vector(self) -> Vector:
        return self.p + self.q


def validate_system(
    ell_c: int,
    ell_p: int,
    plans,
    population,
    labels=None,
) -> ProductionSystem:
    """Check all invariants and return the validated system.

    Raises :class:`ValidationErrors` carrying every violation found.  The
    net-output condition requires the population-weighted plans to sum to
    (e, 0) with e strictly positive on the consumption coordinates.
    """
    issues: list[ValidationIssue] = []
    ell = ell_c + ell_p
    if ell_c < 1:
        issues.append(ValidationIssue("NoConsumptionGood", None, "ell_c must be >= 1"))
    if ell_p < 0:
        issues.append(ValidationIssue("BadShape", None, "ell_p must be >= 0"))
    plans = tuple(
        p if isinstance(p, ProductionPlan) else ProductionPlan(*p) for p in plans
    )
    if len(plans) != ell:
        issues.append(
            ValidationIssue("BadShape", None, f"expected {ell} plans, got {len(plans)}")
        )
    population = tuple(int(n) for n in population)
    if len(population) != ell:
        issues.append(
            ValidationIssue(
                "BadShape", None, f"expected {ell} population counts, got {len(population)}"
            )
        )
    if issues:
        raise ValidationErrors(issues)

    if labels is None:
        labels = tuple(f"g{k}" for k in range(ell))
    else:
        labels = tuple(labels)

    for k, plan in enumerate(plans):
        if plan.output_qty <= 0:
            issues.append(
                ValidationIssue("NonPositiveOutput", k, f"output {plan.output_qty} <= 0")
            )
        if len(plan.inputs) != ell:
            issues.append(
                ValidationIssue("BadShape", k, f"input vector has length {len(plan.inputs)}")
            )
            continue
        if plan.inputs[k] != 0:
            issues.append(
                ValidationIssue("SelfInput", k, "a good may not be an input to itself")
            )
        for j, v in enumerate(plan.inputs):
            if v < 0:
                issues.append(
                    ValidationIssue("NegativeInput", k, f"input of good {j} is {v} < 0")
                )
    for k, n in enumerate(population):
        if n < 1:
            issues.append(
                ValidationIssue("NonPositivePopulation", k, f"population {n} < 1")
            )
    if issues:
        raise ValidationErrors(issues)

    # net output: sum_k pop[k] * (Q^k e_k - y^k) must equal (e, 0), e >> 0
    net = [ZERO] * ell
    for k, plan in enumerate(plans):
        w = Fraction(population[k])
        net[k] += w * plan.output_qty
        for j, v in enumerate(plan.inputs):
            net[j] -= w * v
    for m in range(ell_c, ell):
        if net[m] != 0:
            issues.append(
                ValidationIssue(
                    "NetOutputNotConsumptionOnly",
                    m,
                    f"intermediate net output is {net[m]}, must be 0",
                )
            )
    for k in range(ell_c):
        if net[k] <= 0:
            issues.append(
                ValidationIssue(
                    "NetOutputNotStrictlyPositive",
                    k,
                    f"consumption net output is {net[k]}, must be > 0",
                )
            )
    if issues:
        raise ValidationErrors(issues)

    warnings = ()
    if ell_c == 1:
        warnings = ("single consumption good: degenerate price simplex",)
    return ProductionSystem(
        ell_c=ell_c,
        ell_p=ell_p,
        plans=plans,
        population=population,
        labels=labels,
        net_output=tuple(net[:ell_c]),
        warnings=warnings,
    )


def build_z_matrix(sys: ProductionSystem) -> ZMatrix:
    """Assemble the Z+ matrix with row k equal to Q^k e_k - y^k."""
    ell = sys.ell
    rows = tuple(
        tuple(
            sys.plans[k].output_qty if j == k else -sys.plans[k].inputs[j]
            for j in range(ell)
        )
        for k in range(ell)
    )
    return ZMatrix(rows=rows, ell_c=sys.ell_c, ell_p=sys.ell_p)


def incomes(z: ZMatrix, price: PriceSystem) -> Vector:
    """Income per profession: the matrix-vector product Z (p,q)^T."""
    x = price.vector()
    if len(x) != z.n:
        raise DimensionMismatch(f"price has {len(x)} coordinates, Z is {z.n}x{z.n}")
    return tuple(dot(row, x) for row in z.rows)
