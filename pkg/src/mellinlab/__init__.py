"""Numerical laboratory for rapidly decreasing functions on the positive
half-line, their multiplicative convolution algebra, and the transform that
diagonalizes it.

The package is organized in layers:

- ``quadrature``: double-exponential integration with certified truncation,
- ``special_functions``: the exact-rational compactly supported smoothers,
- ``function_space``: seminorms, the metric, certificates, and the catalog,
- ``mellin_ops``: convolution (direct and FFT), transforms, norm inequalities,
- ``structure_space``: multiplicative functionals and exponent recovery,
- ``cli``: the ``mellinlab`` command.

Hot kernels run on a compiled backend when the extension module built; a
NumPy fallback with identical semantics is selected otherwise (see
``mellinlab.BACKEND``).
"""
from ._kernels import BACKEND
from .errors import (CapabilityError, CertificateGap, DegenerateBaseFunction,
                     MellinLabError, TailMassExceeded, ToleranceNotReached)
from .function_space import (DecayCertificate, SeminormIndex, SmoothFunction,
                             add, catalog, cutoff_function,
                             density_experiment, dilate, from_callable,
                             metric, metric_tail, multiply,
                             nonnormability_witness, scale, seminorm,
                             subtract, weighted_lp_bound_check,
                             zero_function)
from .mellin_ops import (ConvolutionResult, LogGridFunction,
                         convolution_derivative_residual,
                         convolution_theorem_residual, haar_norm,
                         mellin_convolve, mellin_convolve_fast,
                         mellin_transform, young_inequality_check)
from .quadrature import (DEFAULT_CONFIG, IntegralResult, QuadratureConfig,
                         integrate_abs_power, integrate_half_line_weighted,
                         integrate_real_line, integrate_window,
                         truncation_bounds, weighted_tail_window)
from .report import Check, VerificationReport, render_report, render_table
from .special_functions import (MAX_ORDER, eta, eta_derivative,
                                eta_extremal_check, exact_knots, fabius,
                                fabius_derivative)
from .structure_space import (FunctionalOracle, RecoveryReport,
                              additive_mixture_functional,
                              dilation_identity_residual, e_function,
                              e_function_result, e_monotonicity_check,
                              functional_ms, recover_exponent)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CapabilityError", "CertificateGap", "Check",
    "ConvolutionResult", "DEFAULT_CONFIG", "DecayCertificate",
    "DegenerateBaseFunction", "FunctionalOracle", "IntegralResult",
    "LogGridFunction", "MAX_ORDER", "MellinLabError", "QuadratureConfig",
    "RecoveryReport", "SeminormIndex", "SmoothFunction", "TailMassExceeded",
    "ToleranceNotReached", "VerificationReport", "add",
    "additive_mixture_functional", "catalog",
    "convolution_derivative_residual", "convolution_theorem_residual",
    "cutoff_function", "density_experiment", "dilate",
    "dilation_identity_residual", "e_function", "e_function_result",
    "e_monotonicity_check", "eta", "eta_derivative", "eta_extremal_check",
    "exact_knots", "fabius", "fabius_derivative", "from_callable",
    "functional_ms", "haar_norm", "integrate_abs_power",
    "integrate_half_line_weighted", "integrate_real_line",
    "integrate_window", "mellin_convolve", "mellin_convolve_fast",
    "mellin_transform", "metric", "metric_tail", "multiply",
    "nonnormability_witness", "recover_exponent", "render_report",
    "render_table", "scale", "seminorm", "subtract", "truncation_bounds",
    "weighted_lp_bound_check", "weighted_tail_window",
    "young_inequality_check", "zero_function",
]
