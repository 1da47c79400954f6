"""Two-class maximum-entropy classifier over one-hot categorical features,
and the per-connective most-likely-class baseline."""

from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .corpus import Label
from .features import FEATURES, FeatureVector

__all__ = [
    "CLASSES",
    "BaselineModel",
    "FeatureIndex",
    "MaxEntModel",
    "TrainConfig",
    "TrainingError",
    "encode",
    "log_likelihood",
    "train_baseline",
    "train_maxent",
    "load_model",
]

CLASSES = (Label.DISCOURSE, Label.NON_DISCOURSE)
MODEL_FORMAT = "dcdisamb-maxent"
MODEL_VERSION = 1
ROUNDOFF = 1e-12


class TrainingError(RuntimeError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    l2: float = 1e-2
    max_iterations: int = 500
    tol: float = 1e-6
    seed: int = 42

    def __post_init__(self):
        if not (self.l2 >= 0 and math.isfinite(self.l2)):
            raise ValueError(f"l2 must be a finite non-negative number, got {self.l2}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be a positive integer, got {self.max_iterations}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")


class FeatureIndex:
    """Column ids for (feature, value) pairs; the last column is the intercept."""

    def __init__(self, features: Sequence[str], columns: Sequence[tuple[str, str]]):
        unknown = set(features) - set(FEATURES)
        if unknown:
            raise ValueError(f"unknown features {sorted(unknown)}")
        self.features = tuple(features)
        self.columns = [tuple(c) for c in columns]
        self.ids = {c: i for i, c in enumerate(self.columns)}

    @classmethod
    def fit(cls, vectors: Sequence[FeatureVector], features: Sequence[str] = FEATURES) -> FeatureIndex:
        if not vectors:
            raise ValueError("cannot encode an empty list of feature vectors")
        columns = []
        seen = set()
        for v in vectors:
            for f in features:
                key = (f, v.get(f))
                if key not in seen:
                    seen.add(key)
                    columns.append(key)
        return cls(features, columns)

    @property
    def vocabulary_size(self) -> int:
        return len(self.columns)

    @property
    def n_columns(self) -> int:
        return len(self.columns) + 1

    @property
    def intercept(self) -> int:
        return len(self.columns)

    def transform(self, vectors: Sequence[FeatureVector]) -> sp.csr_matrix:
        """Unseen values leave their block empty; the intercept is always on."""
        rows, cols = [], []
        for r, v in enumerate(vectors):
            for f in self.features:
                c = self.ids.get((f, v.get(f)))
                if c is not None:
                    rows.append(r)
                    cols.append(c)
            rows.append(r)
            cols.append(self.intercept)
        data = np.ones(len(rows))
        return sp.csr_matrix((data, (rows, cols)), shape=(len(vectors), self.n_columns))


def encode(vectors: Sequence[FeatureVector], features: Sequence[str] = FEATURES):
    index = FeatureIndex.fit(vectors, features)
    return index.transform(vectors), index


def _class_ids(labels: Sequence[Label]) -> np.ndarray:
    return np.array([0 if Label(y) is Label.DISCOURSE else 1 for y in labels], dtype=np.int64)


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def log_likelihood(weights: np.ndarray, X, y: np.ndarray, l2: float):
    """Regularized conditional log-likelihood and its gradient.

    ``sum_i log p(y_i | x_i) - l2/2 * ||W||^2`` for a softmax over
    ``X @ W``; ``y`` holds class ids.
    """
    z = X @ weights
    zmax = z.max(axis=1, keepdims=True)
    lse = zmax[:, 0] + np.log(np.exp(z - zmax).sum(axis=1))
    value = float(z[np.arange(len(y)), y].sum() - lse.sum() - 0.5 * l2 * np.sum(weights * weights))
    resid = -_softmax(z)
    resid[np.arange(len(y)), y] += 1.0
    grad = X.T @ resid - l2 * weights
    return value, np.asarray(grad)


@dataclass
class MaxEntModel:
    index: FeatureIndex
    weights: np.ndarray
    config: TrainConfig
    iterations: int = 0
    converged: bool = False
    lexicon: tuple[str, ...] = ()
    history: list = field(default_factory=list, repr=False)

    @property
    def features(self) -> tuple[str, ...]:
        return self.index.features

    def predict_proba(self, vectors: Sequence[FeatureVector]) -> np.ndarray:
        """Rows of (P(DISCOURSE), P(NON_DISCOURSE))."""
        return _softmax(np.asarray(self.index.transform(vectors) @ self.weights))

    def predict(self, vector: FeatureVector) -> tuple[Label, float]:
        return self.predict_many([vector])[0]

    def predict_many(self, vectors: Sequence[FeatureVector]) -> list[tuple[Label, float]]:
        out = []
        for p_dis, p_non in self.predict_proba(vectors):
            if p_dis >= p_non:
                out.append((Label.DISCOURSE, float(p_dis)))
            else:
                out.append((Label.NON_DISCOURSE, float(p_non)))
        return out

    def to_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "version": MODEL_VERSION,
            "classes": [c.value for c in CLASSES],
            "features": list(self.index.features),
            "columns": [list(c) for c in self.index.columns],
            "intercept_column": self.index.intercept,
            "weights": [[float(f"{w:.17g}") for w in row] for row in self.weights],
            "config": asdict(self.config),
            "training": {"iterations": self.iterations, "converged": self.converged},
            "lexicon": list(self.lexicon),
        }

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, ensure_ascii=False, indent=1)
            fh.write("\n")

    @classmethod
    def from_dict(cls, data: dict) -> MaxEntModel:
        if data.get("format") != MODEL_FORMAT:
            raise ValueError("not a dcdisamb model file")
        if data.get("version") != MODEL_VERSION:
            raise ValueError(f"unsupported model version {data.get('version')}")
        if data.get("classes") != [c.value for c in CLASSES]:
            raise ValueError("unexpected class list in model file")
        index = FeatureIndex(data["features"], [tuple(c) for c in data["columns"]])
        weights = np.array(data["weights"], dtype=float).reshape(index.n_columns, len(CLASSES))
        if not np.all(np.isfinite(weights)):
            raise ValueError("non-finite weights in model file")
        training = data.get("training", {})
        return cls(
            index,
            weights,
            TrainConfig(**data["config"]),
            training.get("iterations", 0),
            training.get("converged", False),
            tuple(data.get("lexicon", ())),
        )


def load_model(path) -> MaxEntModel:
    with open(Path(path), encoding="utf-8") as fh:
        return MaxEntModel.from_dict(json.load(fh))


def train_maxent(
    vectors: Sequence[FeatureVector],
    labels: Sequence[Label],
    config: TrainConfig = TrainConfig(),
    features: Sequence[str] = FEATURES,
) -> MaxEntModel:
    """Fit the model by full-batch gradient ascent.

    Each column gets the fixed step ``1 / (0.5 * m * count + l2)`` where
    ``m`` is the number of active columns per row.  That diagonal bounds the
    curvature of the objective, so every step is an ascent step; a halving
    backtrack guards against rounding.  Stops when the largest gradient
    component drops below ``config.tol`` or after ``max_iterations``.
    """
    if len(vectors) != len(labels):
        raise ValueError("vectors and labels differ in length")
    if not vectors:
        raise TrainingError("no training data")
    y = _class_ids(labels)
    if len(set(y.tolist())) < 2:
        raise TrainingError("training data contains a single class")

    X, index = encode(vectors, features)
    counts = np.asarray(X.sum(axis=0)).ravel()
    active = len(index.features) + 1
    step = 1.0 / (0.5 * active * counts + config.l2)
    step = step[:, None]

    W = np.zeros((index.n_columns, len(CLASSES)))
    value, grad = log_likelihood(W, X, y, config.l2)
    history = [value]
    it = 0
    while it < config.max_iterations:
        if not math.isfinite(value) or not np.all(np.isfinite(grad)):
            raise TrainingError("non-finite objective during training")
        if np.max(np.abs(grad)) < config.tol:
            break
        # the curvature bound guarantees ascent; the slack only absorbs round-off
        floor = value - ROUNDOFF * max(1.0, abs(value))
        scale = 1.0
        while True:
            W_new = W + scale * step * grad
            new_value, new_grad = log_likelihood(W_new, X, y, config.l2)
            if new_value >= floor or scale < 1.0 / 64:
                break
            scale *= 0.5
        if not math.isfinite(new_value):
            raise TrainingError("non-finite objective during training")
        if new_value < floor:
            break
        W, value, grad = W_new, new_value, new_grad
        history.append(value)
        it += 1
    converged = bool(np.max(np.abs(grad)) < config.tol)

    return MaxEntModel(index, W, config, it, converged, history=history)


@dataclass(frozen=True)
class BaselineModel:
    """Majority label per connective string, with a global fallback."""

    per_conn: dict
    default: Label

    def predict(self, conn: str) -> Label:
        return self.per_conn.get(conn, self.default)


def _majority(counter: Counter) -> Label:
    # ties go to DISCOURSE
    if counter[Label.DISCOURSE] >= counter[Label.NON_DISCOURSE]:
        return Label.DISCOURSE
    return Label.NON_DISCOURSE


def train_baseline(conns: Sequence[str], labels: Sequence[Label]) -> BaselineModel:
    if len(conns) != len(labels):
        raise ValueError("conns and labels differ in length")
    if not conns:
        raise ValueError("cannot train a baseline on no data")
    per: dict[str, Counter] = defaultdict(Counter)
    total: Counter = Counter()
    for c, y in zip(conns, labels):
        per[c][Label(y)] += 1
        total[Label(y)] += 1
    return BaselineModel({c: _majority(cnt) for c, cnt in per.items()}, _majority(total))
