"""Electromagnetic Weber beams: scalar and TE/TM modes in parabolic-cylindrical
coordinates, their dynamical constants and per-photon quantum numbers."""

__version__ = "0.1.0"

from .coords import CartesianPoint, ParabolicPoint, from_cartesian, to_cartesian
from .em import Polarization, eval_EB
from .scalar import ModeIndex, eval_psi, eval_traveling

__all__ = [
    "CartesianPoint",
    "ModeIndex",
    "ParabolicPoint",
    "Polarization",
    "__version__",
    "eval_EB",
    "eval_psi",
    "eval_traveling",
    "from_cartesian",
    "to_cartesian",
]
