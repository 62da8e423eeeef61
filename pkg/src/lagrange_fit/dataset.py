"""Data model, CSV ingestion and the two built-in datasets.

A :class:`DataSet` is an immutable, ordered collection of ``(x, y)`` pairs.
Order matters: the stochastic trainer visits samples in dataset order.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass
from typing import BinaryIO, Iterable, TextIO

import numpy as np


class DatasetError(ValueError):
    """Raised for malformed, empty or unknown datasets."""


class ParseError(DatasetError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EmptyDatasetError(DatasetError):
    pass


class UnknownDatasetError(DatasetError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return self.args[0]


class Kind(enum.Enum):
    CONTINUOUS = "continuous"
    BINARY = "binary"


def _is_binary(ys: Iterable[float]) -> bool:
    return all(v == 0.0 or v == 1.0 for v in ys)


@dataclass(frozen=True)
class DataSet:
    """Ordered explanatory/dependent pairs.

    ``kind`` is inferred when omitted: the data is binary iff every ``y`` is
    exactly 0 or 1. Passing ``Kind.BINARY`` for non 0/1 labels is an error.
    """

    x: tuple[float, ...]
    y: tuple[float, ...]
    kind: Kind = None  # type: ignore[assignment]

    def __post_init__(self):
        xs = tuple(float(v) for v in self.x)
        ys = tuple(float(v) for v in self.y)
        if len(xs) != len(ys):
            raise DatasetError(f"x has {len(xs)} values but y has {len(ys)}")
        if not xs:
            raise EmptyDatasetError("dataset is empty")
        if not all(math.isfinite(v) for v in xs + ys):
            raise DatasetError("dataset contains non-finite values")
        binary = _is_binary(ys)
        kind = self.kind
        if kind is None:
            kind = Kind.BINARY if binary else Kind.CONTINUOUS
        elif kind is Kind.BINARY and not binary:
            raise DatasetError("binary dataset requires every y in {0, 1}")
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "y", ys)
        object.__setattr__(self, "kind", Kind(kind))

    @classmethod
    def from_points(cls, points: Iterable[tuple[float, float]], kind: Kind | None = None) -> DataSet:
        pts = list(points)
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts), kind)

    @property
    def n(self) -> int:
        return len(self.x)

    def __len__(self) -> int:
        return len(self.x)

    @property
    def points(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.x, self.y))

    @property
    def xs(self) -> np.ndarray:
        return np.array(self.x, dtype=float)

    @property
    def ys(self) -> np.ndarray:
        return np.array(self.y, dtype=float)

    def to_csv(self, header: bool = True) -> str:
        # repr() of a float is the shortest string that round-trips exactly
        lines = ["x,y"] if header else []
        lines += [f"{xv!r},{yv!r}" for xv, yv in self.points]
        return "\n".join(lines) + "\n"


def load_csv(source: BinaryIO | TextIO | bytes | str) -> DataSet:
    """Parse two-column ``x,y`` CSV data.

    ``source`` may be a binary or text stream, or raw ``bytes``/``str``
    content. A single ``x,y`` header row is optional. Blank lines are
    skipped; line numbers in errors are 1-based physical lines.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw

    xs: list[float] = []
    ys: list[float] = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line:
            continue
        cells = [c.strip() for c in line.split(",")]
        if lineno == 1 and not xs and [c.lower() for c in cells] == ["x", "y"]:
            continue
        if len(cells) != 2:
            raise ParseError(lineno, f"expected 2 columns, found {len(cells)}")
        try:
            xv, yv = float(cells[0]), float(cells[1])
        except ValueError:
            raise ParseError(lineno, f"non-numeric value in {line!r}") from None
        if not (math.isfinite(xv) and math.isfinite(yv)):
            raise ParseError(lineno, "non-finite value")
        xs.append(xv)
        ys.append(yv)
    if not xs:
        raise EmptyDatasetError("no data rows found")
    return DataSet(tuple(xs), tuple(ys))


def read_csv(path: str) -> DataSet:
    with open(path, "rb") as fh:
        return load_csv(fh)


# Hours of study vs. grade (0-10).
_GRADES = (
    (1.0, 1.7, 2.5, 3.4, 3.8, 4.1, 5.0, 5.5, 6.2),
    (1.2, 2.8, 1.2, 3.6, 5.3, 3.5, 3.2, 4.7, 6.5),
)

# Hours of study vs. pass (1) / fail (0).
_PASSFAIL = (
    (0.5, 0.7, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75,
     3.0, 3.25, 4.0, 4.25, 4.5, 4.75, 5.0, 5.5, 5.75),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 1,
     0, 1, 0, 1, 1, 1, 1, 1, 1),
)

BUILTINS = {
    "grades": DataSet(*_GRADES, Kind.CONTINUOUS),
    "passfail": DataSet(*_PASSFAIL, Kind.BINARY),
}


def builtin(name: str) -> DataSet:
    try:
        return BUILTINS[name]
    except KeyError:
        valid = ", ".join(sorted(BUILTINS))
        raise UnknownDatasetError(f"unknown dataset {name!r}; valid names: {valid}") from None


def x_max(ds: DataSet) -> float:
    return max(ds.x)
