"""Minimum-energy regression solved through the normal equations.

Minimising ``sum f(x_n)**2`` subject to ``sum phi_m(x_n) f(x_n) =
sum phi_m(x_n) y_n`` makes ``f`` a linear combination of the constraint
kernels; the multipliers then solve ``Phi.T Phi lam = Phi.T y``, i.e. the
ordinary least-squares normal equations. The Gram matrix is formed
explicitly on purpose so that its conditioning can be reported.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .basis import BasisSpec, Family, features, normal_system
from .dataset import DataSet

SINGULAR_PIVOT = 1e-300


class SingularMatrixError(ArithmeticError):
    pass


class WrongLinkError(TypeError):
    pass


class Link(enum.Enum):
    IDENTITY = "identity"
    SIGMOID = "sigmoid"


@dataclass(frozen=True)
class FittedModel:
    spec: BasisSpec
    coefficients: tuple[float, ...]
    link: Link = Link.IDENTITY

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) != self.spec.order:
            raise ValueError(f"expected {self.spec.order} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "link", Link(self.link))

    def linear_predictor(self, x):
        return features(x, self.spec) @ np.asarray(self.coefficients)


def solve_linear(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n or b.shape != (n,):
        raise ValueError(f"shape mismatch: a {a.shape}, b {b.shape}")

    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) < SINGULAR_PIVOT:
            raise SingularMatrixError(f"zero pivot in column {k}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        b[k + 1:] -= factors * b[k]

    x = np.empty(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def inverse(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    eye = np.eye(a.shape[0])
    return np.column_stack([solve_linear(a, eye[:, j]) for j in range(a.shape[0])])


def rcond(a) -> float:
    """Reciprocal 1-norm condition number, 0.0 for singular matrices."""
    a = np.asarray(a, dtype=float)
    try:
        inv = inverse(a)
    except SingularMatrixError:
        return 0.0
    norm = np.abs(a).sum(axis=0).max()
    inv_norm = np.abs(inv).sum(axis=0).max()
    if not np.isfinite(inv_norm) or norm == 0.0:
        return 0.0
    return float(1.0 / (norm * inv_norm))


def fit(ds: DataSet, spec: BasisSpec) -> tuple[FittedModel, float]:
    """Fit ``spec`` to ``ds``; returns the model and the Gram matrix rcond."""
    if spec.family is Family.DCT and spec.domain_max < max(ds.x):
        warnings.warn(
            f"x_max={spec.domain_max} is below the largest sample x={max(ds.x)}",
            RuntimeWarning,
            stacklevel=2,
        )
    gram, moment = normal_system(ds, spec)
    coeffs = solve_linear(gram, moment)
    return FittedModel(spec, tuple(coeffs), Link.IDENTITY), rcond(gram)


def predict(model: FittedModel, x):
    if model.link is not Link.IDENTITY:
        raise WrongLinkError("predict needs an identity-link model; use predict_proba")
    out = model.linear_predictor(x)
    return float(out) if np.ndim(out) == 0 else out
