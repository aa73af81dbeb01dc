"""Operator-splitting solver for the slope-selecting thin-film growth equation.

The height u on a periodic box evolves by

    u_t = div((|grad u|^2 - 1) grad u) - delta * lap^2 u,

the gradient flow of E(u) = integral of (1/4)(|grad u|^2 - 1)^2
+ (delta/2)(lap u)^2.  Each step of size tau composes an exact spectral
solve of the stiff linear part with an explicit, adaptively subcycled
fourth-order finite-difference solve of the nonlinear convection part:
L(tau/2) N(tau) L(tau/2).
"""

from .diagnostics import (
    DiagnosticsRecord,
    energy,
    free_energy_density,
    make_record,
    max_gradient,
    roughness,
)
from .errors import (
    BlowUpError,
    ConfigurationError,
    FitError,
    GridMismatchError,
    RunawayError,
    SamplingError,
    SpectralResidueError,
)
from .grid import Field, Grid, discrete_l2_norm, make_grid, mean, sample_function
from .harness import (
    ConvergenceRow,
    Example2Result,
    PowerLawFit,
    Problem,
    ReferenceSpec,
    accuracy_problem,
    c0_from_anchor,
    convergence_study,
    error_vs_reference,
    fit_power_law,
    geometric_sample_times,
    relaxation_problem,
    restrict_to_coarse,
    run_example1,
    run_example2,
    run_problem,
    temporal_order_study,
)
from .spectral import (
    SpectralPropagator,
    build_propagator,
    lambda_mode,
    linear_substep,
    spectral_gradient,
    spectral_laplacian,
)
from .splitting import MemorySink, RunConfig, evolve, strang_step
from .stencil import (
    GradientSamples,
    SubcycleReport,
    amplification_symbol,
    flux,
    frozen_coefficient_A,
    gradient_samples,
    nonlinear_rhs,
    nonlinear_substep,
    ssp_rk3_step,
    stable_dt,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BlowUpError",
    "ConfigurationError",
    "ConvergenceRow",
    "DiagnosticsRecord",
    "Example2Result",
    "Field",
    "FitError",
    "GradientSamples",
    "Grid",
    "GridMismatchError",
    "MemorySink",
    "PowerLawFit",
    "Problem",
    "ReferenceSpec",
    "RunConfig",
    "RunawayError",
    "SamplingError",
    "SpectralPropagator",
    "SpectralResidueError",
    "SubcycleReport",
    "accuracy_problem",
    "amplification_symbol",
    "build_propagator",
    "c0_from_anchor",
    "convergence_study",
    "discrete_l2_norm",
    "energy",
    "error_vs_reference",
    "evolve",
    "fit_power_law",
    "flux",
    "free_energy_density",
    "frozen_coefficient_A",
    "geometric_sample_times",
    "gradient_samples",
    "lambda_mode",
    "linear_substep",
    "make_grid",
    "make_record",
    "max_gradient",
    "mean",
    "nonlinear_rhs",
    "nonlinear_substep",
    "relaxation_problem",
    "restrict_to_coarse",
    "roughness",
    "run_example1",
    "run_example2",
    "run_problem",
    "sample_function",
    "spectral_gradient",
    "spectral_laplacian",
    "ssp_rk3_step",
    "stable_dt",
    "strang_step",
    "temporal_order_study",
]
