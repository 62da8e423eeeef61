"""Goodness-of-fit metrics for both regression types.

Continuous fits are scored by mean squared error against two anchors: the
constant (mean) model and the saturated interpolant, whose MSE is zero.
Binary fits use log-likelihoods the same way, with the saturated model at
LL = 0. R^2 is the fraction of the baseline-to-saturated gap closed by the
fit; F additionally divides each gap by its degrees of freedom.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .dataset import DataSet, Kind
from .linreg import FittedModel, Link, WrongLinkError
from .logreg import BinaryRequiredError, cross_entropy


class DegenerateBaselineError(ValueError):
    pass


class InvalidDofError(ValueError):
    pass


class ContinuousRequiredError(ValueError):
    pass


@dataclass(frozen=True)
class FitReport:
    kind: Kind
    order: int
    n: int
    fit_score: float
    baseline_score: float
    r_squared: float
    f_factor: float | None
    rcond: float | None = None
    epochs: int | None = None
    updates: int | None = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        return d


def mse_fit(ds: DataSet, model: FittedModel) -> float:
    if ds.kind is not Kind.CONTINUOUS:
        raise ContinuousRequiredError("mse_fit needs a continuous dataset")
    if model.link is not Link.IDENTITY:
        raise WrongLinkError("mse_fit needs an identity-link model")
    resid = model.linear_predictor(ds.xs) - ds.ys
    return float(np.mean(resid ** 2))


def mse_mean(ds: DataSet) -> float:
    """Variance of y: the MSE of the best constant model."""
    y = ds.ys
    return float(np.mean((y - y.mean()) ** 2))


def r_squared(mse_mean: float, mse_fit: float) -> float:
    if mse_mean == 0:
        raise DegenerateBaselineError("baseline MSE is zero; R^2 undefined")
    return (mse_mean - mse_fit) / mse_mean


def _dof_ratio(gain: float, gap: float, order: int, n: int) -> float:
    if order < 2:
        raise InvalidDofError(f"F needs order >= 2, got {order}")
    if n < order:
        raise InvalidDofError(f"F needs n >= order, got n={n}, order={order}")
    if n == order:
        return 0.0
    return (gain / (order - 1)) / (gap / (n - order))


def f_factor(mse_mean: float, mse_fit: float, order: int, n: int) -> float:
    """``[(mean - fit)/(M - 1)] / [(mean - sat)/(N - M)]`` with ``sat = 0``.

    Saturated models (``M == N``) report 0.
    """
    if mse_mean == 0:
        raise DegenerateBaselineError("baseline MSE is zero; F undefined")
    return _dof_ratio(mse_mean - mse_fit, mse_mean, order, n)


def ll_fit(ds: DataSet, model: FittedModel) -> float:
    return -cross_entropy(ds, model)


def _class_counts(ds: DataSet) -> tuple[int, int]:
    if ds.kind is not Kind.BINARY:
        raise BinaryRequiredError("log-likelihood baselines need a binary dataset")
    ones = int(sum(ds.y))
    return ones, ds.n - ones


def ll_op(ds: DataSet) -> float:
    """Log-likelihood of the best constant probability, ``p = N1/N``."""
    ones, zeros = _class_counts(ds)
    if ones == 0 or zeros == 0:
        raise DegenerateBaselineError("single-class dataset has no LL baseline")
    n = ds.n
    return ones * math.log(ones / n) + zeros * math.log(zeros / n)


def ll_null(ds: DataSet) -> float:
    """Log-likelihood of ``p = 1/2`` everywhere (the zero-coefficient model)."""
    _class_counts(ds)
    return -ds.n * math.log(2.0)


def pseudo_r_squared(ll_fit: float, ll_op: float) -> float:
    """McFadden's pseudo R^2, ``1 - LL_fit / LL_op``."""
    if ll_op == 0:
        raise DegenerateBaselineError("LL baseline is zero; pseudo R^2 undefined")
    return (ll_fit - ll_op) / (0.0 - ll_op)


def f_factor_logistic(ll_fit: float, ll_op: float, order: int, n: int) -> float:
    if ll_op == 0:
        raise DegenerateBaselineError("LL baseline is zero; F undefined")
    return _dof_ratio(ll_fit - ll_op, 0.0 - ll_op, order, n)
