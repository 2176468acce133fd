"""Rational and polynomial first integrals of plane polynomial foliations.

The foliation A dx + B dy on C^2 is extended to P^2 or to a Hirzebruch
surface F_delta, its dicritical singularities are resolved, and the
Neron-Severi lattice of the blown-up surface pins down the only possible
pencil of invariant curves.  See :mod:`folint.decide` for the entry points.
"""

__version__ = "0.1.0"

from .algebra import AFFINE, PROJECTIVE, GradingContext, MultiPoly, OneForm, ParseError, hirzebruch, parse_poly
from .extension import ExtensionResult, extend_to_hirzebruch, extend_to_p2
from .desingularize import DicriticalConfig, InfNearPoint, SurfacePoint, classify, curve_multiplicities, dicritical_reduction
from .lattice import DivisorClass, NSModel, TAlphaFamily, t_alpha_family
from .linsys import CurveSystem, LinearSystemBasis, complete_linear_system, conditions_matrix
from .decide import (
    FirstIntegral,
    Inconclusive,
    NoIntegralOfGenus,
    NotApplicable,
    NotIntegrable,
    algorithm2,
    algorithm3,
    algorithm3_restricted,
    analyze,
    genus_of,
    polynomial_first_integral,
    verify_first_integral,
)
