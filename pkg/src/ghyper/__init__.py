"""Annihilator systems, group covariance and decay-verified quadrature for
integrals of the exponential of a homogeneous form.

The package enumerates the monomial support of a degree-d form in n
variables, derives the binomial/Euler annihilator system of
J(a) = int exp(P(a; x)) dx, realizes the GL(n) action on coefficient space,
evaluates J and its moments by double-exponential tensor quadrature on
decay-verified real contours, and ships verification suites turning the
structural claims (system membership, covariance, singularity locus) into
reproducible numerical reports.
"""

from .errors import (CoefficientFileError, DecayError, DomainError,
                     GhyperError, NormalizationError, OddDegreeError,
                     SizeLimitError, StencilError, UnsupportedOrderError)
from .gaussian import gaussian_value
from .glaction import (InducedAction, chi0, group_action_matrix,
                       infinitesimal_action, lie_residual, substitute)
from .invariants import (InvariantValue, ProbeResult, binary_discriminant,
                         binary_quartic_invariants, quadratic_det,
                         singularity_probe)
from .kernel import active_kernel_name
from .monomials import (MonomialBasis, ToricRelation, enumerate_monomials,
                        kernel_basis, toric_relations, veronese_point)
from .operators import (ApplyResult, GkzSystem, LinearDifferentialOperator,
                        OperatorTerm, apply_operator, box_operator,
                        euler_operator, gkz_system)
from .quadrature import (DecayReport, IntegralValue, QuadratureConfig,
                         decay_check, integrate, moment, moment_batch)

__version__ = "0.1.0"

__all__ = [
    "ApplyResult", "CoefficientFileError", "DecayError", "DecayReport",
    "DomainError", "GhyperError", "GkzSystem", "InducedAction",
    "IntegralValue", "InvariantValue", "LinearDifferentialOperator",
    "MonomialBasis", "NormalizationError", "OddDegreeError", "OperatorTerm",
    "ProbeResult", "QuadratureConfig", "SizeLimitError", "StencilError",
    "ToricRelation", "UnsupportedOrderError", "active_kernel_name",
    "apply_operator", "binary_discriminant", "binary_quartic_invariants",
    "box_operator", "chi0", "decay_check", "enumerate_monomials",
    "euler_operator", "gaussian_value", "gkz_system", "group_action_matrix",
    "infinitesimal_action", "integrate", "kernel_basis", "lie_residual",
    "moment", "moment_batch", "quadratic_det", "singularity_probe",
    "substitute", "toric_relations", "veronese_point",
]
