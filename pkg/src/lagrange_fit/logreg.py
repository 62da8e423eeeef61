"""Maximum-entropy logistic regression trained by stochastic gradient.

Maximising the summed Bernoulli entropy under kernel-moment constraints
gives a sigmoid of a kernel expansion. The multipliers have no closed form,
so they are learned by minimising the cross-entropy

    CE(lam) = -sum_n [y_n ln p_n + (1 - y_n) ln(1 - p_n)],
    p_n = sigmoid(sum_m lam_m phi_m(x_n)),

whose gradient ``-sum_n phi_m(x_n) (y_n - p_n)`` vanishes exactly when the
constraints hold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numba
import numpy as np

from .basis import BasisSpec, Family, design_matrix
from .dataset import DataSet, Kind
from .linreg import FittedModel, Link, WrongLinkError

DCT_ALPHA = 0.2
_POLY_ALPHA = {1: 1e-2, 2: 1e-2, 3: 1e-2, 4: 1e-3, 5: 1e-4}


class BinaryRequiredError(ValueError):
    pass


class InvalidThresholdError(ValueError):
    pass


class DivergenceError(ArithmeticError):
    def __init__(self, epoch: int):
        super().__init__(f"coefficients became non-finite in epoch {epoch}")
        self.epoch = epoch


class Mode(enum.Enum):
    SEQUENTIAL = "seq"
    BATCH = "batch"


def default_alpha(family: Family | str, order: int) -> float:
    """Step-size numerator; the effective step is ``alpha / order``.

    Polynomial kernels need a per-order value (1e-2 up to M=3, then one
    decade smaller per extra order); cosine kernels use 0.2 throughout.
    """
    if Family(family) is Family.DCT:
        return DCT_ALPHA
    if order in _POLY_ALPHA:
        return _POLY_ALPHA[order]
    return 10.0 ** (1 - order)


@dataclass(frozen=True)
class SgdConfig:
    alpha: float
    max_epochs: int = 1_000_000
    tolerance: float = 1e-6
    mode: Mode = Mode.SEQUENTIAL

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if int(self.max_epochs) != self.max_epochs or self.max_epochs < 1:
            raise ValueError(f"max_epochs must be an integer >= 1, got {self.max_epochs}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        object.__setattr__(self, "mode", Mode(self.mode))

    @classmethod
    def defaults(cls, spec: BasisSpec, **overrides) -> SgdConfig:
        alpha = overrides.pop("alpha", None)
        if alpha is None:
            alpha = default_alpha(spec.family, spec.order)
        return cls(alpha=alpha, **overrides)

    def step(self, order: int) -> float:
        return self.alpha / order


@dataclass(frozen=True)
class TrainTrace:
    epochs_run: int
    updates_run: int
    final_cross_entropy: float
    converged: bool


def sigmoid(t):
    """Logistic function, overflow-free for any finite ``t``."""
    t = np.asarray(t, dtype=float)
    e = np.exp(-np.abs(t))
    out = np.where(t >= 0, 1.0 / (1.0 + e), e / (1.0 + e))
    return float(out) if out.ndim == 0 else out


def _check_binary(ds: DataSet):
    if ds.kind is not Kind.BINARY:
        raise BinaryRequiredError("logistic regression requires a binary (0/1) dataset")


def _check_sigmoid(model: FittedModel):
    if model.link is not Link.SIGMOID:
        raise WrongLinkError("model does not have a sigmoid link")


def predict_proba(model: FittedModel, x):
    _check_sigmoid(model)
    return sigmoid(model.linear_predictor(x))


def classify(model: FittedModel, x: float, threshold: float = 0.5) -> tuple[int, float]:
    if not 0.0 < threshold < 1.0:
        raise InvalidThresholdError(f"threshold must lie in (0, 1), got {threshold}")
    p = float(predict_proba(model, x))
    if p >= threshold:
        return 1, p
    return 0, 1.0 - p


def _ce_from_logits(t: np.ndarray, y: np.ndarray) -> float:
    # -[y ln s(t) + (1-y) ln(1-s(t))] == log(1 + e^t) - y t
    return float(np.sum(np.logaddexp(0.0, t) - y * t))


def cross_entropy(ds: DataSet, model: FittedModel) -> float:
    _check_binary(ds)
    _check_sigmoid(model)
    t = design_matrix(ds, model.spec) @ np.asarray(model.coefficients)
    return _ce_from_logits(t, ds.ys)


def gradient(ds: DataSet, model: FittedModel) -> np.ndarray:
    _check_binary(ds)
    _check_sigmoid(model)
    phi = design_matrix(ds, model.spec)
    p = sigmoid(phi @ np.asarray(model.coefficients))
    return -(phi.T @ (ds.ys - p))


@numba.njit(cache=True)
def _ce_kernel(phi, y, lam):
    total = 0.0
    for n in range(phi.shape[0]):
        t = 0.0
        for m in range(phi.shape[1]):
            t += phi[n, m] * lam[m]
        total += max(t, 0.0) + math.log1p(math.exp(-abs(t))) - y[n] * t
    return total


@numba.njit(cache=True)
def _sigmoid_scalar(t):
    if t >= 0.0:
        return 1.0 / (1.0 + math.exp(-t))
    e = math.exp(t)
    return e / (1.0 + e)


@numba.njit(cache=True)
def _train_kernel(phi, y, lam, mu, max_epochs, tolerance, sequential):
    """Run epochs in place on ``lam``.

    Returns ``(epochs, final_ce, converged, bad_epoch)``; ``bad_epoch`` is
    the epoch in which a coefficient went non-finite, else 0.
    """
    n_samples, order = phi.shape
    prev = _ce_kernel(phi, y, lam)
    grad = np.zeros(order)
    for epoch in range(1, max_epochs + 1):
        if sequential:
            for n in range(n_samples):
                t = 0.0
                for m in range(order):
                    t += phi[n, m] * lam[m]
                g = mu * (y[n] - _sigmoid_scalar(t))
                for m in range(order):
                    lam[m] += g * phi[n, m]
        else:
            grad[:] = 0.0
            for n in range(n_samples):
                t = 0.0
                for m in range(order):
                    t += phi[n, m] * lam[m]
                r = y[n] - _sigmoid_scalar(t)
                for m in range(order):
                    grad[m] += phi[n, m] * r
            for m in range(order):
                lam[m] += mu * grad[m]
        for m in range(order):
            if not math.isfinite(lam[m]):
                return epoch, math.nan, False, epoch
        ce = _ce_kernel(phi, y, lam)
        if abs(prev - ce) < tolerance:
            return epoch, ce, True, 0
        prev = ce
    return max_epochs, prev, False, 0


def fit_sgd(ds: DataSet, spec: BasisSpec, config: SgdConfig | None = None) -> tuple[FittedModel, TrainTrace]:
    """Train a sigmoid-link model from zero coefficients.

    Sequential mode applies ``lam += mu * phi(x_n) * (y_n - p(x_n))`` for
    each sample in dataset order; batch mode applies the summed update once
    per epoch. Training stops once the cross-entropy changes by less than
    ``config.tolerance`` over an epoch, or after ``max_epochs``.
    """
    _check_binary(ds)
    if config is None:
        config = SgdConfig.defaults(spec)
    phi = np.ascontiguousarray(design_matrix(ds, spec))
    lam = np.zeros(spec.order)
    epochs, ce, converged, bad_epoch = _train_kernel(
        phi, ds.ys, lam, config.step(spec.order), int(config.max_epochs),
        float(config.tolerance), config.mode is Mode.SEQUENTIAL,
    )
    if bad_epoch:
        raise DivergenceError(bad_epoch)
    updates = epochs * ds.n if config.mode is Mode.SEQUENTIAL else epochs
    model = FittedModel(spec, tuple(lam), Link.SIGMOID)
    return model, TrainTrace(int(epochs), int(updates), float(ce), bool(converged))
