"""CSV ingestion, min-max scaling, splitting and bundled synthetic datasets."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np


class DatasetError(ValueError):
    """Raised for unreadable or malformed dataset files."""


@dataclass
class Dataset:
    """Feature matrix ``(M, N)`` plus labels.

    ``x_min`` / ``x_max`` are set once min-max scaling has been applied; they
    are the bounds fitted on the training split.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] = ()
    x_min: np.ndarray | None = None
    x_max: np.ndarray | None = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        if self.features.ndim == 1:
            self.features = self.features[:, None]
        self.labels = np.asarray(self.labels, dtype=float).reshape(-1)
        if self.features.shape[0] != self.labels.size:
            raise ValueError(f"{self.features.shape[0]} feature rows but {self.labels.size} labels")

    def __len__(self) -> int:
        return self.labels.size

    @property
    def num_features(self) -> int:
        return self.features.shape[1]

    @property
    def scaled(self) -> bool:
        return self.x_min is not None

    def subset(self, index) -> Dataset:
        return replace(self, features=self.features[index], labels=self.labels[index])

    def int_labels(self) -> np.ndarray:
        labels = self.labels.astype(int)
        if not np.all((labels == 0) | (labels == 1)) or not np.array_equal(labels, self.labels):
            raise ValueError("labels must be binary (0/1)")
        return labels


@dataclass(frozen=True)
class MinMaxScaling:
    x_min: np.ndarray
    x_max: np.ndarray

    @classmethod
    def fit(cls, features) -> MinMaxScaling:
        x = np.asarray(features, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        return cls(x.min(axis=0), x.max(axis=0))

    def transform(self, features, clip: bool = True) -> np.ndarray:
        """Scale to [0, 1]; constant columns map to 0, out-of-range values are clipped."""
        x = np.asarray(features, dtype=float)
        span = self.x_max - self.x_min
        safe = np.where(span > 0, span, 1.0)
        out = np.where(span > 0, (x - self.x_min) / safe, 0.0)
        return np.clip(out, 0.0, 1.0) if clip else out

    def apply(self, data: Dataset, clip: bool = True) -> Dataset:
        return replace(data, features=self.transform(data.features, clip), x_min=self.x_min, x_max=self.x_max)


def min_max_scale(values) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    span = v.max() - v.min()
    return np.zeros_like(v) if span == 0 else (v - v.min()) / span


def train_test_split(data: Dataset, test_frac: float = 0.2, seed: int = 0) -> tuple[Dataset, Dataset]:
    """Seeded shuffle, then the first ``ceil(test_frac * M)`` rows become the test split."""
    if not 0.0 <= test_frac < 1.0:
        raise ValueError("test_frac must lie in [0, 1)")
    m = len(data)
    n_test = math.ceil(test_frac * m)
    order = np.random.Generator(np.random.PCG64(seed)).permutation(m)
    return data.subset(order[n_test:]), data.subset(order[:n_test])


def scale_split(train: Dataset, test: Dataset) -> tuple[Dataset, Dataset]:
    """Fit min-max bounds on ``train`` only and apply them to both splits."""
    scaling = MinMaxScaling.fit(train.features)
    return scaling.apply(train), scaling.apply(test)


def _resolve_column(header: list[str], column: str | int, path: Path) -> int:
    if isinstance(column, int) or (isinstance(column, str) and column.lstrip("-").isdigit() and column not in header):
        idx = int(column)
        if not -len(header) <= idx < len(header):
            raise DatasetError(f"{path}: column index {idx} out of range ({len(header)} columns)")
        return idx % len(header)
    if column not in header:
        raise DatasetError(f"{path}: missing column {column!r}; header has {header}")
    return header.index(column)


def load_csv_dataset(
    path: str | Path,
    feature_columns,
    label_column: str | int,
) -> Dataset:
    """Read a comma-separated file with a header row into an unscaled Dataset.

    Columns may be given by header name or integer position.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise DatasetError(f"{path}: file is empty")
    header = [h.strip() for h in rows[0]]
    if len(rows) < 2:
        raise DatasetError(f"{path}: no data rows after header")
    if isinstance(feature_columns, (str, int)):
        feature_columns = [feature_columns]
    feat_idx = [_resolve_column(header, c, path) for c in feature_columns]
    label_idx = _resolve_column(header, label_column, path)

    columns = feat_idx + [label_idx]
    table = np.empty((len(rows) - 1, len(columns)))
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DatasetError(f"{path}: row {r} has {len(row)} fields, expected {len(header)}")
        for out_col, idx in enumerate(columns):
            cell = row[idx].strip()
            try:
                table[r - 2, out_col] = float(cell)
            except ValueError:
                raise DatasetError(f"{path}: row {r}, column {header[idx]!r}: non-numeric value {cell!r}") from None
    features, labels = table[:, :-1], table[:, -1]
    return Dataset(features, labels, feature_names=tuple(header[i] for i in feat_idx))


def save_csv_dataset(data: Dataset, path: str | Path, label_name: str = "label") -> Path:
    path = Path(path)
    names = data.feature_names or tuple(f"x{j}" for j in range(data.num_features))
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([*names, label_name])
        for x, y in zip(data.features, data.labels):
            writer.writerow([*(repr(float(v)) for v in x), repr(float(y))])
    return path


# -- bundled synthetic data --------------------------------------------------


def synthetic_linear(
    n_train: int = 400,
    n_test: int = 10,
    slope: float = 0.8,
    intercept: float = 0.1,
    noise: float = 0.05,
    seed: int = 0,
) -> tuple[Dataset, Dataset]:
    """Single-feature regression set ``y = slope * x + intercept + noise``, x in [-1, 1].

    Returns (train, test) with the first ``n_train`` rows as training data.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    m = n_train + n_test
    x = rng.uniform(-1.0, 1.0, size=m)
    y = slope * x + intercept + noise * rng.standard_normal(m)
    full = Dataset(x[:, None], y, feature_names=("x",))
    return full.subset(slice(0, n_train)), full.subset(slice(m - n_test, m))


def synthetic_ads(n: int = 400, seed: int = 0) -> Dataset:
    """Two-feature purchase-style classification set (age, salary -> purchased).

    Buyers are mostly older and/or better paid; a few labels near the boundary
    are flipped so the set is separable up to label noise, like the public
    social-network-ads data it stands in for.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    age = rng.integers(18, 61, size=n).astype(float)
    salary = np.round(rng.uniform(15_000, 150_000, size=n), -3)
    a = (age - 18) / 42
    s = (salary - 15_000) / 135_000
    score = 1.6 * a + s - 1.6
    labels = (score > 0).astype(float)
    near = np.abs(score) < 0.08
    flip = near & (rng.random(n) < 0.3)
    labels[flip] = 1 - labels[flip]
    return Dataset(np.column_stack([age, salary]), labels, feature_names=("Age", "EstimatedSalary"))
