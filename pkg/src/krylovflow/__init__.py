"""krylovflow: spectral measures, Krylov chains, Toda flows and their
observables.

The pipeline: build a spectral measure (thermodynamic model, random-matrix
sample, or explicit points), tridiagonalize it into a Krylov chain, move the
chain along deformation flows (directly on the measure or by integrating the
flow equations), and evaluate dynamical observables on the result.
"""
from .errors import (ConfigError, DomainError, InvalidParameter, KrylovflowError,
                     ResourceLimit, SchemaMismatch)
from .kernels import BACKEND
from .measure import (Deformation, SpectralMeasure, deform, fully_connected_degeneracies,
                      fully_connected_ising, ising_2d_degeneracies, ising_2d_dos,
                      log_partition)
from .krylov import (EigenSystem, KrylovState, TridiagonalOperator, eigendecompose,
                     evolve, evolve_grid, stieltjes_lanczos)
from .toda import (FixedPointReport, FlowResult, LaxPair, fixed_point_diagnostics, flow,
                   lax_pair, toda_derivatives)
from .exact import (AlgebraSpec, Family, TwoLevelExact, alternating_couplings,
                    exact_coefficients, exact_complexity, two_level_exact)
from .observables import (AveragedComplexity, TimeSeries, krylov_entropy,
                          lee_yang_beta_c, lee_yang_boundary, overlap_with_undeformed,
                          rate_function, spread_complexity, survival_amplitude,
                          time_averaged_complexity, time_averaged_complexity_quadrature)
from .rmt import (EnsembleFamily, EnsembleResult, EnsembleSpec, Experiment, PowerLawFit,
                  ensemble_average, fit_power_law, sample_spectrum, semicircle_density,
                  surmise_constants)
from .susy import (ShapeInvarianceReport, SusyChain, alternating_susy_complexity,
                   paired_evolution, sector_lax_pair, sector_operators,
                   shape_invariance_check, susy_from_b, zero_mode_count)

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec", "AveragedComplexity", "BACKEND", "ConfigError", "Deformation",
    "DomainError", "EigenSystem", "EnsembleFamily", "EnsembleResult", "EnsembleSpec",
    "Experiment", "Family", "FixedPointReport", "FlowResult", "InvalidParameter",
    "KrylovState", "KrylovflowError", "LaxPair", "PowerLawFit", "ResourceLimit",
    "SchemaMismatch", "ShapeInvarianceReport", "SpectralMeasure", "SusyChain",
    "TimeSeries", "TridiagonalOperator", "TwoLevelExact", "alternating_couplings",
    "alternating_susy_complexity", "deform", "eigendecompose", "ensemble_average",
    "evolve", "evolve_grid", "exact_coefficients", "exact_complexity",
    "fit_power_law", "fixed_point_diagnostics", "flow", "fully_connected_degeneracies",
    "fully_connected_ising", "ising_2d_degeneracies", "ising_2d_dos", "krylov_entropy",
    "lax_pair", "lee_yang_beta_c", "lee_yang_boundary", "log_partition",
    "overlap_with_undeformed", "paired_evolution", "rate_function", "sample_spectrum",
    "sector_lax_pair", "sector_operators", "semicircle_density",
    "shape_invariance_check", "spread_complexity", "stieltjes_lanczos",
    "surmise_constants", "survival_amplitude", "susy_from_b",
    "time_averaged_complexity", "time_averaged_complexity_quadrature", "toda_derivatives",
    "two_level_exact", "zero_mode_count",
]
