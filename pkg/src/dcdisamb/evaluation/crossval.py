"""k-fold cross-validation, feature ablation and per-connective analysis."""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..classifier import BaselineModel, TrainConfig, TrainingError, train_baseline, train_maxent
from ..corpus import Label
from ..features import FEATURES, FeatureVector
from .significance import TTestResult, paired_t_test
from .stats import Metrics, binary_entropy, metrics

__all__ = [
    "CVResult",
    "AblationRow",
    "ConnectiveRow",
    "fold_assignment",
    "fold_sizes",
    "cross_validate",
    "ablation",
    "per_connective_report",
]


def fold_sizes(n: int, k: int) -> list[int]:
    """Near-equal split: the first ``n % k`` folds get one extra item."""
    return [n // k + (1 if f < n % k else 0) for f in range(k)]


def fold_assignment(n: int, k: int, seed: int, labels: Optional[Sequence[Label]] = None) -> np.ndarray:
    """Fold id for each of ``n`` items, from a seeded shuffle.

    With ``labels`` the shuffled items are grouped by class before being cut
    into folds, so each fold gets close to the overall class ratio.
    """
    if k < 2:
        raise ValueError("need at least 2 folds")
    if n < k:
        raise ValueError(f"cannot split {n} instances into {k} folds")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    folds = np.empty(n, dtype=np.int64)
    if labels is None:
        pos = 0
        for f, size in enumerate(fold_sizes(n, k)):
            folds[order[pos:pos + size]] = f
            pos += size
    else:
        ranked = sorted(order.tolist(), key=lambda i: Label(labels[i]) is not Label.DISCOURSE)
        for j, i in enumerate(ranked):
            folds[i] = j % k
    return folds


@dataclass
class CVResult:
    k: int
    folds: np.ndarray
    gold: list
    conns: list
    predicted: list
    probability: list
    baseline_predicted: list
    fold_metrics: list
    baseline_fold_metrics: list
    features: tuple

    @property
    def pooled(self) -> Metrics:
        total = Metrics(0, 0, 0, 0)
        for m in self.fold_metrics:
            total = total + m
        return total

    @property
    def baseline_pooled(self) -> Metrics:
        total = Metrics(0, 0, 0, 0)
        for m in self.baseline_fold_metrics:
            total = total + m
        return total

    @property
    def fold_accuracies(self) -> list[float]:
        return [m.accuracy for m in self.fold_metrics]

    @property
    def baseline_fold_accuracies(self) -> list[float]:
        return [m.accuracy for m in self.baseline_fold_metrics]


def _run_fold(args):
    fold, train_idx, test_idx, vectors, labels, conns, config, features = args
    tr_v = [vectors[i] for i in train_idx]
    tr_y = [labels[i] for i in train_idx]
    try:
        model = train_maxent(tr_v, tr_y, config, features)
    except TrainingError as exc:
        raise TrainingError(f"fold {fold}: {exc}") from None
    preds = model.predict_many([vectors[i] for i in test_idx])
    base = train_baseline([conns[i] for i in train_idx], tr_y)
    base_preds = [base.predict(conns[i]) for i in test_idx]
    return fold, preds, base_preds


def cross_validate(
    vectors: Sequence[FeatureVector],
    labels: Sequence[Label],
    k: int = 10,
    config: TrainConfig = TrainConfig(),
    features: Sequence[str] = FEATURES,
    conns: Optional[Sequence[str]] = None,
    stratify: bool = False,
    jobs: int = 1,
) -> CVResult:
    """Train on k-1 folds and predict the held-out one, for every fold.

    The most-likely-class baseline is trained and applied on the same split.
    Results do not depend on ``jobs``.
    """
    n = len(vectors)
    if n != len(labels):
        raise ValueError("vectors and labels differ in length")
    labels = [Label(y) for y in labels]
    if conns is None:
        conns = [v.conn for v in vectors]
    folds = fold_assignment(n, k, config.seed, labels if stratify else None)
    tasks = []
    for f in range(k):
        test_idx = np.flatnonzero(folds == f).tolist()
        train_idx = np.flatnonzero(folds != f).tolist()
        tasks.append((f, train_idx, test_idx, vectors, labels, conns, config, tuple(features)))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_fold, tasks))
    else:
        results = [_run_fold(t) for t in tasks]

    predicted = [None] * n
    prob = [0.0] * n
    base_pred = [None] * n
    fold_m, base_m = [], []
    for (f, preds, bpreds), task in zip(sorted(results, key=lambda r: r[0]), tasks):
        test_idx = task[2]
        for i, (lab, p), b in zip(test_idx, preds, bpreds):
            predicted[i] = lab
            prob[i] = p
            base_pred[i] = b
        gold_f = [labels[i] for i in test_idx]
        fold_m.append(metrics([predicted[i] for i in test_idx], gold_f))
        base_m.append(metrics([base_pred[i] for i in test_idx], gold_f))
    return CVResult(k, folds, labels, list(conns), predicted, prob, base_pred, fold_m, base_m, tuple(features))


@dataclass(frozen=True)
class AblationRow:
    features: tuple
    accuracy: float
    fold_accuracies: tuple
    test: Optional[TTestResult]


def ablation(
    vectors: Sequence[FeatureVector],
    labels: Sequence[Label],
    ordered_features: Sequence[str],
    k: int = 10,
    config: TrainConfig = TrainConfig(),
    stratify: bool = False,
    jobs: int = 1,
) -> list[AblationRow]:
    """Add one feature at a time; row i is t-tested against row i-1 on the same folds."""
    if not ordered_features:
        raise ValueError("no features to ablate")
    if len(set(ordered_features)) != len(ordered_features) or not set(ordered_features) <= set(FEATURES):
        raise ValueError(f"invalid feature order {ordered_features!r}")
    rows = []
    prev = None
    for i in range(1, len(ordered_features) + 1):
        subset = tuple(ordered_features[:i])
        cv = cross_validate(vectors, labels, k, config, subset, stratify=stratify, jobs=jobs)
        accs = tuple(cv.fold_accuracies)
        test = paired_t_test(accs, prev) if prev is not None else None
        rows.append(AblationRow(subset, cv.pooled.accuracy, accs, test))
        prev = accs
    return rows


@dataclass(frozen=True)
class ConnectiveRow:
    conn: str
    frequency: int
    entropy: float
    baseline_accuracy: float
    accuracy: float
    test: Optional[TTestResult]

    @property
    def difference(self) -> float:
        return self.accuracy - self.baseline_accuracy

    @property
    def assessable(self) -> bool:
        return self.test is not None


def per_connective_report(
    cv: CVResult,
    baseline: Optional[BaselineModel] = None,
    min_freq: int = 20,
    sort: str = "diff",
) -> list[ConnectiveRow]:
    """Classifier vs. baseline accuracy for each connective.

    Accuracies come from the pooled cross-validation predictions.  The
    baseline is the per-fold one stored in ``cv`` unless a fixed
    ``baseline`` model is given.  Significance is a paired t-test over the
    per-fold accuracies restricted to the connective; folds without it are
    skipped and fewer than two usable folds leave ``test`` as None.

    ``sort`` is ``"diff"`` (largest improvement first) or ``"accuracy"``
    (lowest classifier accuracy first).
    """
    if baseline is not None:
        base_pred = [baseline.predict(c) for c in cv.conns]
    else:
        base_pred = cv.baseline_predicted
    groups: dict[str, list[int]] = defaultdict(list)
    for i, c in enumerate(cv.conns):
        groups[c].append(i)

    rows = []
    for conn, idx in groups.items():
        if len(idx) < min_freq:
            continue
        pos = sum(1 for i in idx if cv.gold[i] is Label.DISCOURSE)
        ok = [cv.predicted[i] is cv.gold[i] for i in idx]
        bok = [base_pred[i] is cv.gold[i] for i in idx]
        per_fold = defaultdict(lambda: [0, 0, 0])
        for i, a, b in zip(idx, ok, bok):
            cell = per_fold[int(cv.folds[i])]
            cell[0] += 1
            cell[1] += a
            cell[2] += b
        test = None
        if len(per_fold) >= 2:
            fs = sorted(per_fold)
            test = paired_t_test(
                [per_fold[f][1] / per_fold[f][0] for f in fs],
                [per_fold[f][2] / per_fold[f][0] for f in fs],
            )
        rows.append(
            ConnectiveRow(conn, len(idx), binary_entropy(pos / len(idx)), sum(bok) / len(idx), sum(ok) / len(idx), test)
        )
    if sort == "diff":
        rows.sort(key=lambda r: (-r.difference, -r.frequency, r.conn))
    elif sort == "accuracy":
        rows.sort(key=lambda r: (r.accuracy, -r.frequency, r.conn))
    else:
        raise ValueError(f"unknown sort key {sort!r}")
    return rows
