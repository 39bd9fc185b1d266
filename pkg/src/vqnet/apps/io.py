"""File ingestion: weighted graphs, Hamiltonian text, and CSV datasets."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DataError
from ..pauli import PauliOperator, parse

__all__ = ["Dataset", "CsvSpec", "load_graph", "load_hamiltonian", "load_csv"]


@dataclass
class Dataset:
    """Feature matrix plus labels: one-hot rows for classification, a single
    real column for regression."""

    features: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.float64)
        if self.features.shape[0] != self.labels.shape[0]:
            raise DataError(
                f"{self.features.shape[0]} feature rows vs {self.labels.shape[0]} label rows"
            )
        if self.labels.ndim == 2 and self.labels.shape[1] > 1:
            if not np.allclose(self.labels.sum(axis=1), 1.0):
                raise DataError("one-hot label rows must sum to 1")

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]


@dataclass
class CsvSpec:
    """Column selection and encoding rules for ``load_csv``.

    feature_columns: "all", "last10", or an explicit list of header names.
    one_hot: number of classes (0 keeps the label column as raw reals).
    scale_range: target range for feature scaling; the scaling itself is fit
    on the training split by the consumer, not at load time.
    """

    label_column: str
    feature_columns: str | list[str] = "all"
    one_hot: int = 2
    scale_range: tuple[float, float] = (0.0, float(np.pi))


def load_graph(path) -> "WeightedGraph":
    """Parse an edge-list file: lines ``u v w``, '#' comments allowed."""
    from .maxcut import WeightedGraph

    edges = []
    max_vertex = -1
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DataError(f"{path}:{lineno}: expected 'u v w', got {line!r}")
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise DataError(f"{path}:{lineno}: non-numeric entry in {line!r}") from None
        if u > v:
            u, v = v, u
        edges.append((u, v, w))
        max_vertex = max(max_vertex, v)
    return WeightedGraph(max_vertex + 1, edges)


def load_hamiltonian(path) -> PauliOperator:
    return parse(Path(path).read_text())


def load_csv(path, spec: CsvSpec) -> Dataset:
    """Read a header-first CSV into a Dataset per the column spec."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, header row required") from None
        rows = list(reader)
    if spec.label_column not in header:
        raise DataError(f"{path}: label column {spec.label_column!r} not in header")
    label_idx = header.index(spec.label_column)
    feature_names = [h for i, h in enumerate(header) if i != label_idx]
    if spec.feature_columns == "all":
        selected = feature_names
    elif spec.feature_columns == "last10":
        selected = feature_names[-10:]
    else:
        missing = [c for c in spec.feature_columns if c not in feature_names]
        if missing:
            raise DataError(f"{path}: unknown feature columns {missing}")
        selected = list(spec.feature_columns)
    col_idx = [header.index(c) for c in selected]

    features = np.empty((len(rows), len(selected)))
    raw_labels = []
    for r, row in enumerate(rows):
        if len(row) != len(header):
            raise DataError(f"{path}:{r + 2}: {len(row)} cells, header has {len(header)}")
        for j, c in enumerate(col_idx):
            try:
                features[r, j] = float(row[c])
            except ValueError:
                raise DataError(
                    f"{path}:{r + 2}: non-numeric cell {row[c]!r} in column {header[c]!r}"
                ) from None
        raw_labels.append(row[label_idx])

    if spec.one_hot == 0:
        try:
            labels = np.array([[float(v)] for v in raw_labels])
        except ValueError:
            raise DataError(f"{path}: non-numeric regression label") from None
    else:
        classes = sorted(set(raw_labels))
        if len(classes) > spec.one_hot:
            raise DataError(
                f"{path}: {len(classes)} distinct labels exceed one-hot width {spec.one_hot}"
            )
        index = {c: i for i, c in enumerate(classes)}
        labels = np.zeros((len(rows), spec.one_hot))
        for r, v in enumerate(raw_labels):
            labels[r, index[v]] = 1.0
    return Dataset(features, labels)
