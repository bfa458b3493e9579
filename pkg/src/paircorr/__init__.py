"""Empirical pair correlations of fractional powers of integers, their
closed-form limit density, and quantitative convergence diagnostics."""

from ._kernels import backend, set_num_threads
from .approximations import (
    BoundReport,
    ExplicitConstants,
    check_linearization_bound,
    finite_lambda_gap,
    linearized_measure,
    riemann_gap,
    root_xNt,
    theta_N,
    theta_N_error_bound,
    theta_N_hat,
    theta_infinity,
    verify_effective_bound,
)
from .config import (
    CorrelationConfig,
    Custom,
    PowerBeta,
    Regime,
    ScaledPower,
    classify_regime,
)
from .density import DensityProfile, rho, rho_integral_against, rho_mass, rho_scaled
from .empirical import (
    AtomMeasure,
    Histogram,
    atom_count,
    brute_force_measure,
    count_in_shrinking_window,
    enumerate_window,
    evaluate,
    histogram,
    min_scaled_gap,
    p_bound_exact,
    stream_evaluate,
    stream_histogram,
    uniform_edges,
)
from .errors import (
    ConfigurationError,
    MemoryCapError,
    PairCorrError,
    PreconditionError,
    QuadratureError,
    RegimeError,
)
from .quadrature import adaptive_simpson, integrate_piecewise
from .testfun import TestFunction, eval_test_function, mirror
from .unfolding import UnfoldingMap, crosscheck_density, g_alpha, unfolded_integral

__version__ = "0.1.0"
