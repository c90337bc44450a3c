"""Classical information criteria as fixed penalty slopes."""

import math

import numpy as np

from .core import CurveLike, argmin_cost, as_curve
from .errors import CurveError

CRITERIA = ("BIC", "AIC", "HQIC", "AED")
# criteria whose slope depends on the number of observations
NEEDS_N = frozenset({"BIC", "HQIC"})


def baseline_lambda(criterion: str, n_data: int = None, curve: CurveLike = None) -> float:
    """Penalty slope of a classical criterion.

    BIC uses ``log N``, AIC ``2``, HQIC ``log(log N)`` and AED
    ``V(0) / k_min`` where ``k_min`` is the smallest index attaining
    ``min V``. AED should be given the raw, un-normalized curve.
    """
    name = criterion.upper()
    if name == "AIC":
        return 2.0
    if name in NEEDS_N:
        if n_data is None:
            raise CurveError(f"{name} needs the number of observations")
        n_data = int(n_data)
        if name == "BIC":
            if n_data < 2:
                raise CurveError("BIC needs N >= 2")
            return math.log(n_data)
        if n_data <= 2:
            raise CurveError("HQIC needs N >= 3 so that log(log N) > 0")
        return math.log(math.log(n_data))
    if name == "AED":
        if curve is None:
            raise CurveError("AED needs the error curve")
        v = as_curve(curve).values
        k_min = int(np.argmin(v))
        if k_min == 0:
            raise CurveError("AED is undefined when min V is attained at k=0")
        if v[0] < 0:
            raise CurveError("AED needs V(0) >= 0")
        return float(v[0] / k_min)
    raise CurveError(f"unknown criterion {criterion!r}; expected one of {', '.join(CRITERIA)}")


def ic_select(curve: CurveLike, criterion: str, n_data: int = None) -> int:
    lam = baseline_lambda(criterion, n_data, curve)
    return argmin_cost(curve, lam)
