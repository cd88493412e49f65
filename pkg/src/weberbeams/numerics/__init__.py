"""Special functions, quadrature and finite-difference stencils."""

from .errors import AccuracyError, DomainError
from .gamma import complex_gamma
from .hyp1f1 import kummer_1f1, kummer_1f1_dz
from .quadrature import QuadratureRule, gauss_legendre
from .stencils import FDStencil, fd_apply

__all__ = [
    "AccuracyError",
    "DomainError",
    "FDStencil",
    "QuadratureRule",
    "complex_gamma",
    "fd_apply",
    "gauss_legendre",
    "kummer_1f1",
    "kummer_1f1_dz",
]
