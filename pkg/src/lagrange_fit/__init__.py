"""Polynomial and DCT-kernel regression as constrained variational problems."""

from .basis import BasisSpec, Family, design_matrix, dct_features, dct_map, features, normal_system, poly_features
from .dataset import DataSet, Kind, builtin, load_csv, read_csv, x_max
from .linreg import FittedModel, Link, fit, predict, rcond, solve_linear
from .logreg import (
    Mode,
    SgdConfig,
    TrainTrace,
    classify,
    cross_entropy,
    fit_sgd,
    gradient,
    predict_proba,
    sigmoid,
)

__all__ = [
    "BasisSpec", "DataSet", "Family", "FittedModel", "Kind", "Link", "Mode", "SgdConfig", "TrainTrace",
    "builtin", "classify", "cross_entropy", "dct_features", "dct_map", "design_matrix", "features", "fit",
    "fit_sgd", "gradient", "load_csv", "normal_system", "poly_features", "predict", "predict_proba",
    "rcond", "read_csv", "sigmoid", "solve_linear", "x_max",
]
