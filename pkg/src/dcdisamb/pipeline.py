"""Corpus -> instances -> features -> statistics / cross-validated evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .classifier import TrainConfig
from .corpus import Document, Instance, Label, build_instances
from .evaluation import (
    AblationRow,
    ConnectiveRow,
    CVResult,
    EntropyTable,
    FrequencyBucket,
    ablation,
    connective_entropy,
    cross_validate,
    frequency_distribution,
    information_gain,
    paired_t_test,
    per_connective_report,
)
from .features import FEATURE_TITLES, FEATURES, FeatureVector, featurize
from .lexicon import Lexicon
from .report import Section, num, pct

__all__ = ["Dataset", "prepare", "StatsResult", "EvalResult", "run_stats", "run_evaluation", "rank_features"]

PER_CONNECTIVE_NOTE = (
    "per-connective significance: paired t-test (P < 0.05, two-tailed) of per-fold classifier accuracy "
    "against per-fold most-likely-class baseline accuracy on that connective; folds without it are skipped"
)


@dataclass
class Dataset:
    documents: list[Document]
    lexicon: Lexicon
    instances: list[Instance]
    vectors: list[FeatureVector]

    @property
    def labels(self) -> list[Label]:
        return [i.label for i in self.instances]

    @property
    def conns(self) -> list[str]:
        return [i.connective for i in self.instances]

    @property
    def n_sentences(self) -> int:
        return sum(len(d.sentences) for d in self.documents)

    @property
    def n_words(self) -> int:
        return sum(len(s.tokens) for d in self.documents for s in d.sentences)


def prepare(documents: Sequence[Document], lexicon: Lexicon) -> Dataset:
    instances = build_instances(documents, lexicon)
    return Dataset(list(documents), lexicon, instances, featurize(instances, documents))


def _sign(test) -> str:
    if test is None:
        return "n/a"
    if test.improved:
        return "up"
    if test.significant_at_05:
        return "down"
    return "ns"


def dataset_section(ds: Dataset) -> Section:
    pos = sum(1 for i in ds.instances if i.label is Label.DISCOURSE)
    return (
        Section("dataset")
        .add("documents", len(ds.documents))
        .add("sentences", ds.n_sentences)
        .add("words", ds.n_words)
        .add("lexicon_forms", len(ds.lexicon))
        .add("instances", len(ds.instances))
        .add("positive", pos)
        .add("negative", len(ds.instances) - pos)
        .add("gold_only", sum(1 for i in ds.instances if i.gold_only))
        .add("connective_types", len(set(ds.conns)))
        .add("discourse_connective_types", len({i.connective for i in ds.instances if i.label is Label.DISCOURSE}))
    )


@dataclass
class StatsResult:
    dataset: Dataset
    distribution: list[FrequencyBucket]
    entropy: EntropyTable

    def sections(self) -> list[Section]:
        dist = Section("frequency_distribution").add("total_types", sum(b.types for b in self.distribution))
        dist.table(["bucket", "types", "percent"], [(b.name, b.types, pct(b.percent / 100)) for b in self.distribution])
        ent = (
            Section("connective_entropy")
            .add("min_freq", self.entropy.min_freq)
            .add("weighted_average_entropy", num(self.entropy.weighted_average))
            .add("reported_connectives", len(self.entropy.reported()))
        )
        ent.table(
            ["conn", "entropy", "frequency", "discourse"],
            [(r.conn, num(r.entropy), r.frequency, r.positives) for r in self.entropy.reported()],
        )
        return [dataset_section(self.dataset), dist, ent]


def run_stats(ds: Dataset, min_freq: int = 20) -> StatsResult:
    if not ds.instances:
        raise ValueError("corpus yields no instances")
    return StatsResult(ds, frequency_distribution(ds.instances), connective_entropy(ds.instances, min_freq))


def rank_features(gains: dict) -> list[str]:
    """Features by decreasing information gain; ties keep the canonical order."""
    return sorted(FEATURES, key=lambda f: (-round(gains[f], 12), FEATURES.index(f)))


@dataclass
class EvalResult:
    dataset: Dataset
    config: TrainConfig
    cv: CVResult
    gains: dict
    per_connective: list[ConnectiveRow]
    ablation: Optional[list[AblationRow]] = None
    min_freq: int = 20
    extra: dict = field(default_factory=dict)

    def sections(self) -> list[Section]:
        cv = self.cv
        pooled = cv.pooled
        base = cv.baseline_pooled
        vs_base = paired_t_test(cv.fold_accuracies, cv.baseline_fold_accuracies)
        overall = (
            Section("overall")
            .add("folds", cv.k)
            .add("precision", pct(pooled.precision))
            .add("recall", pct(pooled.recall))
            .add("f_measure", pct(pooled.f_measure))
            .add("accuracy", pct(pooled.accuracy))
            .add("tp", pooled.tp)
            .add("fp", pooled.fp)
            .add("fn", pooled.fn)
            .add("tn", pooled.tn)
            .add("baseline_accuracy", pct(base.accuracy))
            .add("vs_baseline_t", num(vs_base.t_statistic))
            .add("vs_baseline_significance", _sign(vs_base))
        )
        folds = Section("folds").table(
            ["fold", "size", "precision", "recall", "f_measure", "accuracy", "baseline_accuracy"],
            [
                (f, m.total, pct(m.precision), pct(m.recall), pct(m.f_measure), pct(m.accuracy), pct(b.accuracy))
                for f, (m, b) in enumerate(zip(cv.fold_metrics, cv.baseline_fold_metrics))
            ],
        )
        ig = Section("information_gain").table(
            ["feature", "information_gain"],
            [(FEATURE_TITLES[f], num(self.gains[f], 3)) for f in rank_features(self.gains)],
        )
        per = (
            Section("per_connective")
            .add("min_freq", self.min_freq)
            .add("rows", len(self.per_connective))
            .table(
                ["conn", "freq", "entropy", "baseline", "accuracy", "diff", "t", "significance"],
                [
                    (
                        r.conn,
                        r.frequency,
                        num(r.entropy, 2),
                        pct(r.baseline_accuracy),
                        pct(r.accuracy),
                        pct(r.difference),
                        num(r.test.t_statistic) if r.test else "n/a",
                        _sign(r.test),
                    )
                    for r in self.per_connective
                ],
            )
        )
        out = [dataset_section(self.dataset), overall, folds, ig]
        if self.ablation is not None:
            out.append(
                Section("ablation").table(
                    ["features", "accuracy", "t", "significance"],
                    [
                        (
                            " + ".join(FEATURE_TITLES[f] for f in row.features),
                            pct(row.accuracy),
                            num(row.test.t_statistic) if row.test else "",
                            _sign(row.test) if row.test else "",
                        )
                        for row in self.ablation
                    ],
                )
            )
        out.append(per)
        return out


def run_evaluation(
    ds: Dataset,
    k: int = 10,
    config: TrainConfig = TrainConfig(),
    ablate: bool = False,
    stratify: bool = False,
    jobs: int = 1,
    min_freq: int = 20,
) -> EvalResult:
    labels = ds.labels
    cv = cross_validate(ds.vectors, labels, k, config, FEATURES, ds.conns, stratify, jobs)
    gains = {f: information_gain([v.get(f) for v in ds.vectors], labels) for f in FEATURES}
    per = per_connective_report(cv, min_freq=min_freq)
    rows = None
    if ablate:
        rows = ablation(ds.vectors, labels, rank_features(gains), k, config, stratify, jobs)
    return EvalResult(ds, config, cv, gains, per, rows, min_freq)
