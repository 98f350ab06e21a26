"""Renormalization constants and Monte Carlo functionals for the
white-noise Schrödinger problem, backed by the C++ core."""

try:
    from ._core import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:  # in-tree test layout: extension next to the build dir
    from _core import *  # noqa: F401,F403

__all__ = [
    "MollifierSpec",
    "make_bump_eta",
    "eta_hat",
    "eval_R_tilde",
    "TemporalCovariance",
    "MCEstimate",
    "CovMatrixA",
    "ErrorBarred",
    "FunctionalSample",
    "FeynmanKacEngine",
    "compute_z1",
    "mean_growth_correction",
    "cross_section",
    "compute_z2",
    "limit_profile",
    "gaussian_phase_mean",
    "SpdeParams",
    "EnsembleResult",
    "initial_bump_hat",
    "potential_variance",
    "ensemble_mean_fourier",
]
