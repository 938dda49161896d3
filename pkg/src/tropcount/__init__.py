"""Exact realizability and counting for tropical curves on a torus quotient.

The package decides whether a parametrized tropical curve in R^2 modulo a
rank-2 period lattice comes from a family of algebraic curves with the
multipliers attached to the periods, constructs the multiplicative gluing
data when it does, and counts the algebraic curves through generic marked
points.  All arithmetic is exact (integers, rationals, and a formal
multiplicative group with rational phases); a numeric mode with explicit
tolerances is available for concrete complex multipliers.
"""

from .curve import (Edge, MarkedPoint, PeriodLattice, TropicalCurve,
                    ValidationReport, Vertex, canonical_offset, crossings,
                    ensure_valid, offset_sequence, relift, subdivide,
                    transform, validate)
from .curvefile import (dumps_curve, load_curve, loads_curve, save_curve)
from .errors import (ConstraintError, DegeneracyError, InfeasibleError,
                     ParseError, TropcountError, ValidationError)
from .moduli import (CountReport, KernelOrder, build_D, build_F, count_curves,
                     deformation_ranks, dual_flag_space, edge_weight_product,
                     kernel_order_bruteforce, kernel_order_gcstar,
                     rigidity_check, smallest_maximal_minor)
from .prelog import (MonomialSolution, MonomialSystem, VertexModel,
                     assemble_system, prelog_exists, solve_monomial,
                     verify_assignment)
from .realize import (RealizabilityReport, is_realizable, parity_exponent,
                      realizability_target, sigma_cocycle, sigma_geometric)
from .valuegroup import (EqualityMode, MulValue, mv_eval_numeric, mv_is_one,
                         mv_pow, mv_root)

__version__ = "0.1.0"

__all__ = [
    "ConstraintError", "CountReport", "DegeneracyError", "Edge",
    "EqualityMode", "InfeasibleError", "KernelOrder", "MarkedPoint",
    "MonomialSolution", "MonomialSystem", "MulValue", "ParseError",
    "PeriodLattice", "RealizabilityReport", "TropcountError", "TropicalCurve",
    "ValidationError", "ValidationReport", "Vertex", "VertexModel",
    "assemble_system", "build_D", "build_F", "canonical_offset",
    "count_curves", "crossings", "deformation_ranks", "dual_flag_space",
    "dumps_curve", "edge_weight_product", "ensure_valid", "is_realizable",
    "kernel_order_bruteforce", "kernel_order_gcstar", "load_curve",
    "loads_curve", "mv_eval_numeric", "mv_is_one", "mv_pow", "mv_root",
    "offset_sequence", "parity_exponent", "prelog_exists",
    "realizability_target", "relift", "rigidity_check", "save_curve",
    "smallest_maximal_minor",
    "sigma_cocycle", "sigma_geometric", "solve_monomial", "subdivide",
    "transform", "validate", "verify_assignment",
]
