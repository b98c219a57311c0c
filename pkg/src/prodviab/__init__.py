"""Exact viability analysis of structured production systems.

The package decides structural properties (acyclicity, coherence, input
restrictions) and viability properties (WV, V, WCV, CV) of production
systems over exact rationals, produces independently verified price
certificates, and exports the weakly-viable price polytope.
"""

from .core import (
    PriceSystem,
    ProductionPlan,
    ProductionSystem,
    ValidationErrors,
    ValidationIssue,
    ZMatrix,
    build_z_matrix,
    incomes,
    validate_system,
)
from .criteria import find_pqdd, hawkins_simon, leading_principal_minors
from .documents import (
    ParseError,
    format_rational,
    parse_rational,
    report_to_document,
    system_from_document,
    system_to_document,
)
from .generator import GeneratorConfig, generate_document, generate_system
from .polytope import delta_prime_hrep, enumerate_vertices, interior_point, is_bounded
from .structure import determinant, find_conversion_cycle, is_acyclic, is_coherent
from .viability import (
    ClassificationReport,
    classify,
    is_cv,
    is_viable,
    is_wcv,
    is_weakly_viable,
    viable_price_acyclic,
)

__version__ = "0.1.0"

__all__ = [
    "PriceSystem",
    "ProductionPlan",
    "ProductionSystem",
    "ValidationErrors",
    "ValidationIssue",
    "ZMatrix",
    "build_z_matrix",
    "incomes",
    "validate_system",
    "find_pqdd",
    "hawkins_simon",
    "leading_principal_minors",
    "ParseError",
    "format_rational",
    "parse_rational",
    "report_to_document",
    "system_from_document",
    "system_to_document",
    "GeneratorConfig",
    "generate_document",
    "generate_system",
    "delta_prime_hrep",
    "enumerate_vertices",
    "interior_point",
    "is_bounded",
    "determinant",
    "find_conversion_cycle",
    "is_acyclic",
    "is_coherent",
    "ClassificationReport",
    "classify",
    "is_cv",
    "is_viable",
    "is_wcv",
    "is_weakly_viable",
    "viable_price_acyclic",
    "__version__",
]
