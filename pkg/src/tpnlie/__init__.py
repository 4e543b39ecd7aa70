"""Exact symbolic computations for n-Lie and transposed Poisson n-Lie algebras."""

from .exact_poly import Derivation, Polynomial, PolynomialRing, determinant
from .brackets import JacobianBracket, MuBracket, PolynomialModel, WBracket
from .identities import IdentityId, Sampler, verify_suite
from .free_tp3 import strong_membership_report

__version__ = "0.1.0"

__all__ = [
    "Derivation",
    "IdentityId",
    "JacobianBracket",
    "MuBracket",
    "Polynomial",
    "PolynomialModel",
    "PolynomialRing",
    "Sampler",
    "WBracket",
    "determinant",
    "strong_membership_report",
    "verify_suite",
]
