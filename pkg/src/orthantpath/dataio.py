"""CSV ingestion, centering/scaling, and the plot-ready output tables.

Floats are written with 17 significant digits so that every table
round-trips bit-for-bit.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .errors import MissingColumn, ParseError
from .linalg import Dataset, orthant_string
from .path import RegPath


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    return f"{x:.17g}"


def _resolve_column(header: Sequence[str], response) -> int:
    if response is None:
        return len(header) - 1
    if isinstance(response, int):
        idx = response
    else:
        name = str(response).strip()
        if name in header:
            return header.index(name)
        try:
            idx = int(name)
        except ValueError:
            raise MissingColumn(f"response column {name!r} not found in header {list(header)}") from None
    if not -len(header) <= idx < len(header):
        raise MissingColumn(f"response column index {idx} out of range for {len(header)} columns")
    return idx % len(header)


def load_csv(path, response_column: Union[str, int, None] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Read a headed numeric CSV and split off the response column.

    ``response_column`` is a header name or a 0-based index (negative
    indices count from the end); default is the last column.  Remaining
    columns become X in file order.
    """
    with open(path, newline="", encoding="utf-8-sig") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(1, None, "file is empty")
    header = [h.strip() for h in rows[0]]
    if len(header) < 2:
        raise ParseError(1, None, "need at least two columns (one covariate and the response)")
    body = [r for r in rows[1:] if any(cell.strip() for cell in r)]
    if len(body) < 2:
        raise ParseError(len(rows), None, "need at least two data rows")
    values = np.empty((len(body), len(header)))
    k = 0
    for line, r in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in r):
            continue
        if len(r) != len(header):
            raise ParseError(line, None, f"expected {len(header)} fields, found {len(r)}")
        for j, cell in enumerate(r):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(line, header[j], f"not a number: {cell!r}") from None
            if not np.isfinite(v):
                raise ParseError(line, header[j], f"non-finite value: {cell!r}")
            values[k, j] = v
        k += 1
    y_idx = _resolve_column(header, response_column)
    X = np.delete(values, y_idx, axis=1)
    Y = values[:, y_idx]
    return X, Y


def has_nonzero_means(X, Y, rtol: float = 1e-10) -> bool:
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    return bool(
        np.any(np.abs(X.mean(axis=0)) > rtol * np.abs(X).max(axis=0))
        or abs(Y.mean()) > rtol * np.abs(Y).max()
    )


def prepare(X, Y, center: bool = True, scale: float = 1.0) -> Dataset:
    """Center (optionally) then divide everything by ``scale``.

    Scaling X and Y by ``1/k`` leaves the coefficients of every breakpoint
    unchanged and divides the breakpoint lambdas and criteria by ``k**2``.
    """
    if not scale > 0:
        raise ValueError("scale must be positive")
    X = np.array(X, dtype=float)
    Y = np.array(Y, dtype=float).ravel()
    if X.ndim == 1:
        X = X[:, None]
    if center:
        X = X - X.mean(axis=0)
        Y = Y - Y.mean()
    X = X / scale
    Y = Y / scale
    return Dataset(X, Y, centered=center, scale_factor=float(scale))


@dataclass
class BreakpointTable:
    header: List[str]
    rows: List[List[float]]

    @classmethod
    def from_path(cls, path: RegPath) -> "BreakpointTable":
        p = path.p
        header = ["lambda"] + [f"beta_{j + 1}" for j in range(p)] + ["criterion"]
        rows = [[b.lam, *b.beta.tolist(), b.criterion] for b in path.breakpoints]
        return cls(header, rows)

    def write(self, fh: TextIO) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(self.header)
        for r in self.rows:
            w.writerow([fmt(v) for v in r])

    @classmethod
    def read(cls, fh: TextIO) -> "BreakpointTable":
        rows = list(csv.reader(fh))
        return cls(rows[0], [[float(v) for v in r] for r in rows[1:] if r])

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)


def write_trajectory(samples: Iterable, fh: TextIO) -> None:
    """Long-format samples: one row per (lambda, coefficient)."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["lambda", "coef_index", "value", "orthant"])
    for lam, beta, orthant in samples:
        o = orthant_string(orthant)
        for j, v in enumerate(beta):
            w.writerow([fmt(lam), j + 1, fmt(v), o])


def write_oracle(fits: Sequence, fh: TextIO, p: Optional[int] = None) -> None:
    p = p if p is not None else fits[0].beta.size
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["lambda", "orthant"] + [f"beta_{j + 1}" for j in range(p)] + ["criterion"])
    for f in fits:
        w.writerow([fmt(f.lam), orthant_string(f.orthant), *(fmt(v) for v in f.beta), fmt(f.criterion)])
