"""Piecewise-linear test curves and accuracy-based curves."""

from dataclasses import dataclass

import numpy as np

from ..core import ErrorCurve
from ..errors import CurveError


@dataclass(frozen=True)
class PiecewiseLinearSpec:
    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        b = np.asarray(self.breakpoints)
        v = np.asarray(self.values, dtype=np.float64)
        if b.ndim != 1 or b.size < 2 or b.size != v.size:
            raise CurveError("need at least two breakpoints and one value per breakpoint")
        if not np.all(b == np.round(b)) or b[0] != 0:
            raise CurveError("breakpoints must be integers starting at 0")
        if np.any(np.diff(b) <= 0):
            raise CurveError("breakpoints must be strictly ascending")
        if not np.all(np.isfinite(v)):
            raise CurveError("breakpoint values must be finite")
        object.__setattr__(self, "breakpoints", tuple(int(x) for x in b))
        object.__setattr__(self, "values", tuple(float(x) for x in v))

    @property
    def K(self) -> int:
        return self.breakpoints[-1]


def piecewise_linear_curve(spec: PiecewiseLinearSpec) -> ErrorCurve:
    """Linear interpolation between breakpoints, sampled at ``k = 0..K``."""
    if not isinstance(spec, PiecewiseLinearSpec):
        spec = PiecewiseLinearSpec(*spec)
    k = np.arange(spec.K + 1, dtype=np.float64)
    return ErrorCurve(np.interp(k, spec.breakpoints, spec.values))


def convex_two_piece(s1, s2, k_b, K, v_end=0.0) -> ErrorCurve:
    """Two straight pieces with slopes ``-s1`` on ``[0, k_b]`` and ``-s2`` after."""
    v_b = v_end + s2 * (K - k_b)
    return piecewise_linear_curve(PiecewiseLinearSpec((0, k_b, K), (v_b + s1 * k_b, v_b, v_end)))


def accuracy_curve(accuracies) -> ErrorCurve:
    """``V(k) = 1 - accuracy(k)``; index 0 is the no-feature baseline."""
    a = np.asarray(accuracies, dtype=np.float64)
    if a.ndim != 1 or a.size == 0:
        raise CurveError("need a non-empty sequence of accuracies")
    bad = np.flatnonzero(~((a >= 0.0) & (a <= 1.0)))
    if bad.size:
        raise CurveError(f"accuracy at k={int(bad[0])} is outside [0, 1]")
    return ErrorCurve(1.0 - a)
