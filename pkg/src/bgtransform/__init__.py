"""
bgtransform: coherent-state transforms from the Hardy space H^2_+(R) onto
Barut-Girardello spaces of entire functions.

The heavy lifting (Hardy basis tables and the closed-form transform kernel)
runs in a compiled extension when available, with a numpy fallback; see
``bgtransform.kernels.BACKEND``.
"""
from .errors import AccuracyError, DomainError, RangeError
from .specfun import Sigma, SeriesControl
from .quadrature import (
    PlanarRule,
    QuadratureRule,
    fourier_rule,
    planar_rule,
    real_line_rule,
)
from .hardy import (
    CoeffVector,
    HardyFunction,
    cauchy_extend,
    fourier,
    gram_report,
    hardy_basis,
    laguerre_fn,
    negative_frequency_energy,
)
from .bargir import (
    BGFunction,
    bg_basis,
    bg_gram_report,
    bg_kernel,
    bg_norm,
    bg_weight,
    log_omega,
    omega,
)
from .coherent import (
    CoherentState,
    cs_wavefunction,
    cs_wavefunction_series,
    generating_identity_residual,
    isometry_report,
    resolution_report,
    transform,
    transform_kernel,
)
from .report import VerificationReport
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "DomainError", "RangeError",
    "Sigma", "SeriesControl",
    "PlanarRule", "QuadratureRule", "fourier_rule", "planar_rule", "real_line_rule",
    "CoeffVector", "HardyFunction", "cauchy_extend", "fourier", "gram_report",
    "hardy_basis", "laguerre_fn", "negative_frequency_energy",
    "BGFunction", "bg_basis", "bg_gram_report", "bg_kernel", "bg_norm", "bg_weight",
    "log_omega", "omega",
    "CoherentState", "cs_wavefunction", "cs_wavefunction_series",
    "generating_identity_residual", "isometry_report", "resolution_report",
    "transform", "transform_kernel",
    "VerificationReport", "BACKEND",
]
