"""Exact membership tests and certified constructions for Terracini loci of
Veronese re-embeddings."""

from .errors import (InvalidInputError, PointCollisionError, ReductionError, RefusalError,
                     RetryBudgetExhausted, TerraciniError, UnsupportedCharacteristicError)
from .fields import GF, QQ, Fp
from .exact_linalg import Matrix, RankReport, RankStrategy, rank, rank_exact, rank_modular
from .polyspace import (BinaryForm, MonomialBasis, compose_with_rational_curve, dim_forms,
                        jet_row, monomial_basis)
from .terracini_core import (MembershipVerdict, PointSet, ProjectivePoint, TerraciniMatrix,
                             ah_probe, membership, random_point_set, terracini_matrix)
from .curves import (O, ECPoint, RationalCurve, WeierstrassCurve, cubic_conditions_matrix,
                     cubic_tangent_direction, curve_jet_conditions, ec_add, ec_neg,
                     ec_scalar_mul, ec_solve_last_point, line_curve, rational_normal_curve,
                     restriction_rank)
from .constructions import (CertifiedExample, ThresholdReport, construct_elliptic_even,
                            construct_on_rational_curve, probe_emptiness, surjection_check,
                            thresholds)
from .reports import ProbeReport

__version__ = "0.1.0"

__all__ = [
    "InvalidInputError", "PointCollisionError", "ReductionError", "RefusalError",
    "RetryBudgetExhausted", "TerraciniError", "UnsupportedCharacteristicError",
    "GF", "QQ", "Fp", "Matrix", "RankReport", "RankStrategy", "rank", "rank_exact",
    "rank_modular", "BinaryForm", "MonomialBasis", "compose_with_rational_curve",
    "dim_forms", "jet_row", "monomial_basis", "MembershipVerdict", "PointSet",
    "ProjectivePoint", "TerraciniMatrix", "ah_probe", "membership", "random_point_set",
    "terracini_matrix", "O", "ECPoint", "RationalCurve", "WeierstrassCurve",
    "cubic_conditions_matrix", "cubic_tangent_direction", "curve_jet_conditions",
    "ec_add", "ec_neg", "ec_scalar_mul", "ec_solve_last_point", "line_curve",
    "rational_normal_curve", "restriction_rank", "CertifiedExample", "ThresholdReport",
    "construct_elliptic_even", "construct_on_rational_curve", "probe_emptiness",
    "surjection_check", "thresholds", "ProbeReport",
]
