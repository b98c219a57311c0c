"""Seeded random system generation.

Inputs are drawn first; outputs are then solved from the population so the
net-output condition holds by construction (rejection sampling would almost
never hit the zero-net-intermediate hyperplane).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import ProductionSystem
from .documents import system_from_document

__all__ = ["GeneratorConfig", "generate_document", "generate_system"]


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    ell_c: tuple[int, int] = (1, 3)
    ell_p: tuple[int, int] = (0, 3)
    density: float = 0.5
    structure: str = "allow-cycles"  # or "dag"
    rip: bool = False
    wrip: bool = False
    max_magnitude: int = 4
    max_population: int = 3

    def __post_init__(self):
        if self.structure not in ("dag", "allow-cycles"):
            raise ValueError("structure must be 'dag' or 'allow-cycles'")
        if not 0 <= self.density <= 1:
            raise ValueError("density must lie in [0, 1]")
        if self.ell_c[0] < 1 or self.ell_c[0] > self.ell_c[1]:
            raise ValueError("bad ell_c range")
        if self.ell_p[0] < 0 or self.ell_p[0] > self.ell_p[1]:
            raise ValueError("bad ell_p range")
        if self.max_magnitude < 1 or self.max_population < 1:
            raise ValueError("magnitude and population bounds must be >= 1")


def generate_document(config: GeneratorConfig) -> dict:
    """Deterministic SystemDocument for a given config; always validates."""
    rng = random.Random(config.seed)
    lc = rng.randint(*config.ell_c)
    lp = rng.randint(*config.ell_p)
    ell = lc + lp
    labels = [f"c{k}" for k in range(lc)] + [f"m{k}" for k in range(lp)]
    population = [rng.randint(1, config.max_population) for _ in range(ell)]

    # A total order with consumption goods first keeps every intermediate
    # reachable as an input while making dag-mode acyclicity trivial.
    perm_c = list(range(lc))
    perm_p = list(range(lc, ell))
    rng.shuffle(perm_c)
    rng.shuffle(perm_p)
    pos = {g: i for i, g in enumerate(perm_c + perm_p)}

    def allowed(producer: int, good: int) -> bool:
        if producer == good:
            return False
        if config.rip and good < lc:
            return False
        if config.wrip and good < lc and producer < lc:
            return False
        if config.structure == "dag" and pos[good] <= pos[producer]:
            return False
        return True

    inputs = [[0] * ell for _ in range(ell)]
    for k in range(ell):
        for m in range(ell):
            if allowed(k, m) and rng.random() < config.density:
                inputs[k][m] = rng.randint(1, config.max_magnitude)

    # every intermediate good must be absorbed somewhere
    for j in range(lc, ell):
        if all(inputs[k][j] == 0 for k in range(ell)):
            eligible = [k for k in range(ell) if allowed(k, j)]
            consumer = rng.choice(eligible)
            inputs[consumer][j] = rng.randint(1, config.max_magnitude)

    outputs: list[Fraction] = [Fraction(0)] * ell
    for j in range(lc, ell):
        used = sum(population[k] * inputs[k][j] for k in range(ell))
        outputs[j] = Fraction(used, population[j])
    for k in range(lc):
        used = sum(population[j] * inputs[j][k] for j in range(ell))
        surplus = rng.randint(1, config.max_magnitude)
        outputs[k] = Fraction(used + surplus, population[k])

    goods = [
        {"id": labels[k], "kind": "consumption" if k < lc else "intermediate"}
        for k in range(ell)
    ]
    plans = {
        labels[k]: {
            "output": str(outputs[k]),
            "inputs": {
                labels[m]: str(inputs[k][m]) for m in range(ell) if inputs[k][m]
            },
        }
        for k in range(ell)
    }
    return {
        "goods": goods,
        "plans": plans,
        "population": {labels[k]: population[k] for k in range(ell)},
    }


def generate_system(config: GeneratorConfig) -> ProductionSystem:
    return system_from_document(generate_document(config))
