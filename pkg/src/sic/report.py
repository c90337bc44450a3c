"""End-to-end analysis of one curve: spectrum, elbows, selections, baselines."""

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_LEVELS,
    CurveLike,
    WeightSpectrum,
    as_curve,
    compute_weights,
    cumulative,
    elbow_set,
    normalize,
    select,
)
from .criteria import CRITERIA, NEEDS_N, baseline_lambda, ic_select
from .errors import CurveError


@dataclass(frozen=True)
class AnalysisConfig:
    method: str = "exact"
    M: int = 10**6
    seed: int = 0
    levels: tuple = DEFAULT_LEVELS
    normalize: bool = True
    tie_break: str = "smallest"

    def __post_init__(self):
        if self.method not in ("exact", "grid", "mc"):
            raise CurveError(f"unknown method {self.method!r}")
        if self.M < 1:
            raise CurveError("M must be >= 1")
        if not self.levels:
            raise CurveError("at least one confidence level is required")
        for lvl in self.levels:
            if not 0.0 < lvl <= 1.0:
                raise CurveError(f"confidence level {lvl} outside (0, 1]")
        if self.tie_break != "smallest":
            raise CurveError("only the 'smallest' tie-break is supported")


@dataclass
class SelectionReport:
    curve: np.ndarray
    spectrum: WeightSpectrum
    elbow_set: list
    cumulative: np.ndarray
    chosen: dict
    baselines: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)

    @property
    def J(self) -> int:
        return len(self.elbow_set)

    @property
    def K(self) -> int:
        return self.curve.size - 1

    @property
    def degenerate(self) -> bool:
        return self.spectrum.degenerate

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "lambda_max": self.spectrum.lambda_max,
            "method": self.spectrum.method,
            "samples": self.spectrum.samples,
            "seed": self.spectrum.seed,
            "values": self.curve.tolist(),
            "weights": self.spectrum.weights.tolist(),
            "cumulative": self.cumulative.tolist(),
            "elbow_set": list(self.elbow_set),
            "selections": {f"{lvl:g}": k for lvl, k in self.chosen.items()},
            "baselines": {
                name: {"lambda": lam, "k": k} for name, (lam, k) in self.baselines.items()
            },
            "degenerate": self.degenerate,
        }


def analyze(curve: CurveLike, config: AnalysisConfig = None, n_data: int = None) -> SelectionReport:
    """Run the full selection pipeline on a curve.

    Baselines are evaluated on the curve as given (AED reads the raw
    ``V(0)``); the weight spectrum uses the normalized curve when
    ``config.normalize`` is set, which does not change any minimizer.
    """
    config = config or AnalysisConfig()
    raw = as_curve(curve)
    work = normalize(raw) if config.normalize else raw
    spectrum = compute_weights(work, config.method, config.M, config.seed)
    chosen = {float(lvl): select(spectrum, lvl) for lvl in config.levels}

    baselines, skipped = {}, {}
    for name in CRITERIA:
        if name in NEEDS_N and n_data is None:
            skipped[name] = "needs --n-data"
            continue
        try:
            lam = baseline_lambda(name, n_data, raw)
            baselines[name] = (lam, ic_select(raw, name, n_data))
        except CurveError as exc:
            skipped[name] = str(exc)

    return SelectionReport(
        curve=raw.values,
        spectrum=spectrum,
        elbow_set=elbow_set(spectrum),
        cumulative=cumulative(spectrum),
        chosen=chosen,
        baselines=baselines,
        skipped=skipped,
    )
