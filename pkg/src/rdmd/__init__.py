"""Robust dynamic mode decomposition.

Typical use::

    import rdmd
    series = rdmd.simulate(rdmd.make_system("linear2x2"), dt=0.01, steps=500)
    pair = rdmd.build_pair(series)
    est = rdmd.nrdmd(pair)
    rdmd.spectrum(est, pair.dt).eig_continuous
"""
from ._backend import BACKEND, available_backends
from .errors import (ConvergenceWarning, DegenerateDataWarning, DegenerateScaleWarning,
                     DivergenceError, DomainError, InsufficientDataError, MalformedInputError,
                     ParseError, RankDeficiencyError, RankWarning, RDMDError,
                     RobustnessConditionError, TruncationError)
from .estimators import (METHODS, HuberConfig, OperatorEstimate, exact_dmd, fit, huber_psi,
                         huber_rho, huber_weight, krdmd, nrdmd, robust_scale,
                         robust_standard_dmd, standard_dmd)
from .modal import ReconstructionResult, Spectrum, reconstruct, spectrum, to_continuous
from .robust_stats import (OutlierReport, ScaleEstimatorKind, chi2_quantile, direction_set,
                           lomed, mad, mahalanobis, median, projection_statistics, scale_s1,
                           scale_s2, snapshot_outlier_report, weights_from_ps)
from .rng import Stream
from .snapshots import SnapshotPair, TimeSeries, build_pair, read_csv, read_paired_csv, write_csv
from .systems import (ContaminationPlan, OutlierWindow, SpikeModel, contaminate, make_system,
                      simulate)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "available_backends", "__version__",
    "RDMDError", "MalformedInputError", "InsufficientDataError", "ParseError", "DomainError",
    "RankDeficiencyError", "TruncationError", "RobustnessConditionError", "DivergenceError",
    "DegenerateScaleWarning", "DegenerateDataWarning", "RankWarning", "ConvergenceWarning",
    "HuberConfig", "OperatorEstimate", "METHODS", "exact_dmd", "standard_dmd", "krdmd", "nrdmd",
    "robust_standard_dmd", "fit", "huber_rho", "huber_psi", "huber_weight", "robust_scale",
    "Spectrum", "ReconstructionResult", "spectrum", "reconstruct", "to_continuous",
    "OutlierReport", "ScaleEstimatorKind", "median", "lomed", "mad", "scale_s1", "scale_s2",
    "direction_set", "projection_statistics", "weights_from_ps", "chi2_quantile", "mahalanobis",
    "snapshot_outlier_report", "Stream",
    "TimeSeries", "SnapshotPair", "build_pair", "read_csv", "write_csv", "read_paired_csv",
    "make_system", "simulate", "contaminate", "ContaminationPlan", "OutlierWindow", "SpikeModel",
]
