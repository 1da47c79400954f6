"""Classification metrics, connective entropy, frequency buckets and
information gain."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence

from ..corpus import Label

__all__ = [
    "Metrics",
    "ConnectiveStats",
    "EntropyTable",
    "FrequencyBucket",
    "binary_entropy",
    "label_entropy",
    "metrics",
    "connective_entropy",
    "frequency_distribution",
    "information_gain",
]


@dataclass(frozen=True)
class Metrics:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def precision(self) -> float:
        d = self.tp + self.fp
        return self.tp / d if d else 0.0

    @property
    def recall(self) -> float:
        d = self.tp + self.fn
        return self.tp / d if d else 0.0

    @property
    def f_measure(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total if self.total else 0.0

    def __add__(self, other: Metrics) -> Metrics:
        return Metrics(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn)


def metrics(predicted: Sequence[Label], gold: Sequence[Label]) -> Metrics:
    """Confusion counts with DISCOURSE as the positive class."""
    if len(predicted) != len(gold):
        raise ValueError(f"length mismatch: {len(predicted)} predictions vs {len(gold)} gold labels")
    if not gold:
        raise ValueError("no labels to score")
    tp = fp = fn = tn = 0
    for p, g in zip(predicted, gold):
        pos_p = Label(p) is Label.DISCOURSE
        pos_g = Label(g) is Label.DISCOURSE
        if pos_p and pos_g:
            tp += 1
        elif pos_p:
            fp += 1
        elif pos_g:
            fn += 1
        else:
            tn += 1
    return Metrics(tp, fp, fn, tn)


def binary_entropy(p: float) -> float:
    """H(p) in bits, with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    h = 0.0
    for q in (p, 1.0 - p):
        if q > 0.0:
            h -= q * math.log2(q)
    return max(h, 0.0)


def label_entropy(counts: Iterable[int]) -> float:
    counts = [c for c in counts if c > 0]
    n = sum(counts)
    if n == 0:
        return 0.0
    return max(0.0, -sum(c / n * math.log2(c / n) for c in counts))


@dataclass(frozen=True)
class ConnectiveStats:
    conn: str
    frequency: int
    positives: int

    @property
    def p(self) -> float:
        return self.positives / self.frequency

    @property
    def entropy(self) -> float:
        return binary_entropy(self.p)


@dataclass(frozen=True)
class EntropyTable:
    rows: tuple[ConnectiveStats, ...]
    weighted_average: float
    min_freq: int

    def reported(self) -> list[ConnectiveStats]:
        """Rows at or above the frequency threshold."""
        return [r for r in self.rows if r.frequency >= self.min_freq]

    def by_conn(self) -> dict[str, ConnectiveStats]:
        return {r.conn: r for r in self.rows}


def _weighted_entropy(rows: Sequence[ConnectiveStats]) -> float:
    total = sum(r.frequency for r in rows)
    if not total:
        return 0.0
    return sum(r.frequency * r.entropy for r in rows) / total


def connective_entropy(instances, min_freq: int = 20, filter_average: bool = False) -> EntropyTable:
    """Per-connective entropy over all candidate occurrences.

    Rows are ordered by decreasing entropy, then decreasing frequency.  The
    frequency-weighted average covers every connective unless
    ``filter_average`` is set.
    """
    freq: Counter = Counter()
    pos: Counter = Counter()
    for inst in instances:
        freq[inst.connective] += 1
        if inst.label is Label.DISCOURSE:
            pos[inst.connective] += 1
    if not freq:
        raise ValueError("no instances")
    rows = [ConnectiveStats(c, freq[c], pos[c]) for c in freq]
    rows.sort(key=lambda r: (-round(r.entropy, 12), -r.frequency, r.conn))
    avg_rows = [r for r in rows if r.frequency >= min_freq] if filter_average else rows
    return EntropyTable(tuple(rows), _weighted_entropy(avg_rows), min_freq)


@dataclass(frozen=True)
class FrequencyBucket:
    name: str
    types: int
    percent: float


def frequency_distribution(instances) -> list[FrequencyBucket]:
    """Connective types bucketed by discourse-usage frequency (f=1, 1<f<10, f>=10)."""
    freq: Counter = Counter(i.connective for i in instances if i.label is Label.DISCOURSE)
    buckets = [("f=1", 0), ("1<f<10", 0), ("f>=10", 0)]
    counts = [0, 0, 0]
    for f in freq.values():
        counts[0 if f == 1 else 1 if f < 10 else 2] += 1
    total = sum(counts)
    return [
        FrequencyBucket(name, c, 100.0 * c / total if total else 0.0)
        for (name, _), c in zip(buckets, counts)
    ]


def information_gain(values: Sequence[Hashable], labels: Sequence[Label]) -> float:
    """H(label) - sum_v P(v) H(label | v), in bits."""
    if len(values) != len(labels):
        raise ValueError("values and labels differ in length")
    n = len(labels)
    if n == 0:
        raise ValueError("no instances")
    by_value: dict = defaultdict(Counter)
    for v, y in zip(values, labels):
        by_value[v][y] += 1
    h = label_entropy(Counter(labels).values())
    cond = sum(sum(c.values()) / n * label_entropy(c.values()) for c in by_value.values())
    return max(0.0, h - cond)
