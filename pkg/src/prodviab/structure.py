"""Graph and combinatorial structure of a production system.

Covers the input graph, acyclicity with certificates, coherence via the
exact determinant, bounded conversion-cycle search, the two restricted
input properties and the block decomposition available under RIP.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import ProductionSystem, ZMatrix, build_z_matrix
from .linalg import Matrix, ZERO

__all__ = [
    "CycleCertificate",
    "ConversionCycle",
    "BadSubset",
    "BudgetExceeded",
    "RipViolated",
    "input_graph",
    "is_acyclic",
    "acyclic_by_enumeration",
    "cycle_product",
    "determinant",
    "is_coherent",
    "find_conversion_cycle",
    "satisfies_rip",
    "satisfies_wrip",
    "block_decompose",
]


class BadSubset(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class RipViolated(ValueError):
    pass


@dataclass(frozen=True)
class CycleCertificate:
    """Ordered goods (k_1, ..., k_q): each feeds the next, the last feeds the first."""

    goods: tuple[int, ...]
    product: Fraction

    def verify(self, sys: ProductionSystem) -> bool:
        return len(self.goods) >= 2 and cycle_product(sys, self.goods) == self.product > 0


@dataclass(frozen=True)
class ConversionCycle:
    """Non-zero sub-population n with n . Z = 0, bounded by the population."""

    n: tuple[int, ...]

    def verify(self, sys: ProductionSystem) -> bool:
        if all(v == 0 for v in self.n):
            return False
        if any(v < 0 or v > cap for v, cap in zip(self.n, sys.population)):
            return False
        z = build_z_matrix(sys)
        ell = sys.ell
        return all(
            sum((Fraction(self.n[k]) * z.rows[k][j] for k in range(ell)), ZERO) == 0
            for j in range(ell)
        )


def input_graph(sys: ProductionSystem) -> list[list[int]]:
    """Successor lists: edge m -> k when good m is an input to producing k."""
    ell = sys.ell
    succ: list[list[int]] = [[] for _ in range(ell)]
    for k in range(ell):
        for m in range(ell):
            if sys.plans[k].inputs[m] > 0:
                succ[m].append(k)
    return succ


def is_acyclic(sys: ProductionSystem):
    """(True, topological order) or (False, CycleCertificate).

    Iterative DFS over the input graph, lowest good index first, so the
    reported certificate is deterministic.
    """
    succ = input_graph(sys)
    ell = sys.ell
    color = [0] * ell  # 0 unvisited, 1 on stack, 2 done
    order: list[int] = []
    for root in range(ell):
        if color[root] != 0:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        path = [root]
        color[root] = 1
        while stack:
            node, idx = stack[-1]
            if idx < len(succ[node]):
                stack[-1] = (node, idx + 1)
                child = succ[node][idx]
                if color[child] == 1:
                    cycle = path[path.index(child):]
                    rot = cycle.index(min(cycle))
                    cycle = tuple(cycle[rot:] + cycle[:rot])
                    return False, CycleCertificate(cycle, cycle_product(sys, cycle))
                if color[child] == 0:
                    color[child] = 1
                    stack.append((child, 0))
                    path.append(child)
            else:
                color[node] = 2
                order.append(node)
                stack.pop()
                path.pop()
    order.reverse()
    return True, tuple(order)


def cycle_product(sys: ProductionSystem, ordered_goods) -> Fraction:
    """y^{k_1}_{k_q} * prod_i y^{k_{i+1}}_{k_i} for an ordered good subset."""
    goods = tuple(ordered_goods)
    if len(goods) < 2:
        raise BadSubset("need at least two goods")
    if len(set(goods)) != len(goods):
        raise BadSubset("goods must be distinct")
    if any(g < 0 or g >= sys.ell for g in goods):
        raise BadSubset("good index out of range")
    prod = sys.plans[goods[0]].inputs[goods[-1]]
    for a, b in zip(goods, goods[1:]):
        prod *= sys.plans[b].inputs[a]
    return prod


def acyclic_by_enumeration(sys: ProductionSystem, max_ell: int = 8) -> bool:
    """Brute-force oracle: acyclic iff every ordered subset has zero product."""
    ell = sys.ell
    if ell > max_ell:
        raise BudgetExceeded(f"enumeration limited to {max_ell} goods")
    for q in range(2, ell + 1):
        for subset in itertools.permutations(range(ell), q):
            if cycle_product(sys, subset) != 0:
                return False
    return True


def determinant(z: ZMatrix | Matrix) -> Fraction:
    rows = z.rows if isinstance(z, ZMatrix) else z
    return linalg.determinant(rows)


def is_coherent(sys: ProductionSystem) -> bool:
    return determinant(build_z_matrix(sys)) != 0


def find_conversion_cycle(
    sys: ProductionSystem, budget: int = 10**6
) -> ConversionCycle | None:
    """Exhaustive search for n != 0 with n_k <= population_k and n . Z = 0.

    Raises BudgetExceeded when the search space prod(pop_k + 1) exceeds the
    budget; callers then fall back to the determinant-based verdict.
    """
    space = 1
    for cap in sys.population:
        space *= cap + 1
        if space > budget:
            raise BudgetExceeded(
                f"conversion-cycle search space {space}+ exceeds budget {budget}"
            )
    z = build_z_matrix(sys)
    ell = sys.ell
    for n in itertools.product(*(range(cap + 1) for cap in sys.population)):
        if all(v == 0 for v in n):
            continue
        ok = True
        for j in range(ell):
            total = ZERO
            for k in range(ell):
                if n[k]:
                    total += n[k] * z.rows[k][j]
            if total != 0:
                ok = False
                break
        if ok:
            return ConversionCycle(tuple(n))
    return None


def satisfies_rip(sys: ProductionSystem) -> bool:
    """No good at all uses a consumption good as an input."""
    return all(
        sys.plans[k].inputs[m] == 0
        for k in range(sys.ell)
        for m in range(sys.ell_c)
    )


def satisfies_wrip(sys: ProductionSystem) -> bool:
    """No consumption good uses a consumption good as an input."""
    return all(
        sys.plans[k].inputs[m] == 0
        for k in range(sys.ell_c)
        for m in range(sys.ell_c)
    )


def block_decompose(
    z: ZMatrix, ell_c: int | None = None, ell_p: int | None = None
) -> tuple[Matrix, Matrix, Matrix]:
    """Split Z into (Qc diagonal, B <= 0, Zp of class Z+) under RIP.

    Raises RipViolated when the lower-left block is not identically zero.
    """
    lc = z.ell_c if ell_c is None else ell_c
    lp = z.ell_p if ell_p is None else ell_p
    if lc + lp != z.n:
        raise ValueError("block sizes must sum to the matrix dimension")
    for i in range(lc, lc + lp):
        for j in range(lc):
            if z.rows[i][j] != 0:
                raise RipViolated(
                    f"intermediate producer {i} uses consumption good {j}"
                )
    for i in range(lc):
        for j in range(lc):
            if i != j and z.rows[i][j] != 0:
                raise RipViolated(
                    f"consumption producer {i} uses consumption good {j}"
                )
    qc = tuple(tuple(z.rows[i][j] for j in range(lc)) for i in range(lc))
    b = tuple(tuple(z.rows[i][j] for j in range(lc, lc + lp)) for i in range(lc))
    zp = tuple(
        tuple(z.rows[i][j] for j in range(lc, lc + lp)) for i in range(lc, lc + lp)
    )
    return qc, b, zp
