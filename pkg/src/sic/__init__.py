"""Spectral information criterion (SIC) for error curves.

Sweeps the slope of a linear complexity penalty, measures for how much of
the slope range each model size is optimal, and reads elbows and a single
selection off the resulting weight spectrum.
"""

from .core import (
    DEFAULT_LEVELS,
    ErrorCurve,
    IntervalPartition,
    PenalizedCostPoint,
    WeightSpectrum,
    argmin_cost,
    compute_weights,
    cost,
    cumulative,
    elbow_set,
    interval_partition_exact,
    lambda_max,
    normalize,
    select,
    weights_exact,
    weights_grid,
    weights_mc,
)
from .criteria import CRITERIA, baseline_lambda, ic_select
from .errors import CurveError, DegenerateFitError, NumericalError, RankDeficientError, SICError
from .report import AnalysisConfig, SelectionReport, analyze

__version__ = "0.1.0"
