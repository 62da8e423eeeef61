"""Kernel families and normal-equation assembly.

Two families are supported:

* polynomial moments, ``phi_m(x) = x**(m-1)``
* DCT cosines, ``phi_m(x) = cos(pi*(m-1)*(2*z - 1) / (2*N_DCT))`` with the
  linear domain map ``z = (N_DCT - 1) / x_max * x``.

The cosine argument uses ``2z - 1`` rather than the textbook DCT-II
``2n + 1``. The two agree when ``z`` runs over ``1..N_DCT``, which is why the
orthogonal grid used in the tests places ``z`` at ``1..N_DCT``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .dataset import DataSet


class BasisError(ValueError):
    pass


class InvalidOrderError(BasisError):
    pass


class InvalidDomainError(BasisError):
    pass


class UnderdeterminedError(BasisError):
    pass


class Family(enum.Enum):
    POLYNOMIAL = "poly"
    DCT = "dct"


@dataclass(frozen=True)
class BasisSpec:
    family: Family
    order: int
    dct_length: int | None = None
    domain_max: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if int(self.order) != self.order or self.order < 1:
            raise InvalidOrderError(f"order must be an integer >= 1, got {self.order}")
        object.__setattr__(self, "order", int(self.order))
        if self.family is Family.DCT:
            if self.dct_length is None or self.domain_max is None:
                raise BasisError("DCT basis needs dct_length and domain_max")
            if int(self.dct_length) != self.dct_length or self.dct_length < 2:
                raise InvalidOrderError(f"dct_length must be an integer >= 2, got {self.dct_length}")
            if not (math.isfinite(self.domain_max) and self.domain_max > 0):
                raise InvalidDomainError(f"domain_max must be > 0, got {self.domain_max}")
            object.__setattr__(self, "dct_length", int(self.dct_length))
            object.__setattr__(self, "domain_max", float(self.domain_max))

    @classmethod
    def polynomial(cls, order: int) -> BasisSpec:
        return cls(Family.POLYNOMIAL, order)

    @classmethod
    def dct(cls, order: int, dct_length: int, domain_max: float) -> BasisSpec:
        return cls(Family.DCT, order, dct_length, domain_max)

    @classmethod
    def for_dataset(
        cls,
        family: Family | str,
        order: int,
        ds: DataSet,
        dct_length: int | None = None,
        domain_max: float | None = None,
    ) -> BasisSpec:
        """Build a spec, filling DCT defaults from the data.

        ``N_DCT`` defaults to the dataset size and ``x_max`` to its largest x.
        Both are ignored for the polynomial family.
        """
        family = Family(family)
        if family is Family.POLYNOMIAL:
            return cls(family, order)
        if dct_length is None:
            dct_length = ds.n
        if domain_max is None:
            domain_max = max(ds.x)
        return cls(family, order, dct_length, domain_max)

    @property
    def feature_count(self) -> int:
        return self.order

    def with_order(self, order: int) -> BasisSpec:
        return BasisSpec(self.family, order, self.dct_length, self.domain_max)


def poly_features(x, order: int) -> np.ndarray:
    """Return ``[x**0, ..., x**(order-1)]``; vectorises over array ``x``."""
    if order < 1:
        raise InvalidOrderError(f"order must be >= 1, got {order}")
    x = np.asarray(x, dtype=float)
    return x[..., None] ** np.arange(order)


def dct_map(x, dct_length: int, domain_max: float):
    if not domain_max > 0:
        raise InvalidDomainError(f"x_max must be > 0, got {domain_max}")
    if dct_length < 2:
        raise InvalidOrderError(f"N_DCT must be >= 2, got {dct_length}")
    return (dct_length - 1) / domain_max * np.asarray(x, dtype=float)


def dct_features(x, spec: BasisSpec) -> np.ndarray:
    if spec.family is not Family.DCT:
        raise BasisError("dct_features requires a DCT basis spec")
    z = dct_map(x, spec.dct_length, spec.domain_max)
    m = np.arange(spec.order)
    return np.cos(np.pi * m * (2.0 * z[..., None] - 1.0) / (2.0 * spec.dct_length))


def features(x, spec: BasisSpec) -> np.ndarray:
    """Feature vector(s) for ``x`` under ``spec``; shape ``x.shape + (M,)``."""
    if spec.family is Family.POLYNOMIAL:
        return poly_features(x, spec.order)
    return dct_features(x, spec)


def design_matrix(ds: DataSet, spec: BasisSpec) -> np.ndarray:
    return features(ds.xs, spec)


def normal_system(ds: DataSet, spec: BasisSpec) -> tuple[np.ndarray, np.ndarray]:
    """Gram matrix ``Phi.T @ Phi`` and moment vector ``Phi.T @ y``."""
    if ds.n < spec.order:
        raise UnderdeterminedError(f"{ds.n} samples cannot determine {spec.order} coefficients")
    phi = design_matrix(ds, spec)
    return phi.T @ phi, phi.T @ ds.ys
