"""Figures written next to the text report when an output directory is given."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .features import FEATURE_TITLES  # noqa: E402

__all__ = ["stats_figures", "evaluation_figures"]

# no Software/date metadata, so reruns give the same bytes
_PNG_META = {"Software": None}

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.dpi": 100,
}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_META)
    plt.close(fig)
    return path


def plot_frequency_distribution(buckets, path):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4, 3))
        ax.bar([b.name for b in buckets], [b.types for b in buckets], color="0.45")
        for i, b in enumerate(buckets):
            ax.annotate(f"{b.percent:.0f}%", (i, b.types), ha="center", va="bottom")
        ax.set_xlabel("discourse-usage frequency")
        ax.set_ylabel("connective types")
        return _save(fig, path)


def plot_entropy(table, path):
    rows = table.reported()
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4, 3))
        ax.hist([r.entropy for r in rows], bins=10, range=(0, 1), color="0.45", edgecolor="white")
        ax.axvline(table.weighted_average, color="k", ls="--", lw=1, label=f"weighted avg {table.weighted_average:.2f}")
        ax.set_xlabel("entropy (bits)")
        ax.set_ylabel(f"connectives (f >= {table.min_freq})")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_folds(cv, path):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5, 3))
        xs = range(cv.k)
        ax.plot(xs, [100 * a for a in cv.fold_accuracies], "o-", color="k", label="maxent")
        ax.plot(xs, [100 * a for a in cv.baseline_fold_accuracies], "s--", color="0.5", label="baseline")
        ax.set_xlabel("fold")
        ax.set_ylabel("accuracy (%)")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_ablation(rows, path):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5, 3))
        labels = ["+" + FEATURE_TITLES[r.features[-1]] if i else FEATURE_TITLES[r.features[0]] for i, r in enumerate(rows)]
        acc = [100 * r.accuracy for r in rows]
        ax.plot(range(len(rows)), acc, "o-", color="k")
        for i, r in enumerate(rows):
            if r.test is not None and r.test.improved:
                ax.annotate("*", (i, acc[i]), textcoords="offset points", xytext=(0, 4), ha="center")
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels(labels, rotation=30, ha="right")
        ax.set_ylabel("accuracy (%)")
        return _save(fig, path)


def plot_per_connective(rows, path, top=15):
    rows = rows[:top]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5, 0.3 * len(rows) + 1.2))
        ys = range(len(rows))
        ax.barh([y + 0.2 for y in ys], [100 * r.accuracy for r in rows], height=0.4, color="k", label="maxent")
        ax.barh([y - 0.2 for y in ys], [100 * r.baseline_accuracy for r in rows], height=0.4, color="0.6", label="baseline")
        ax.set_yticks(list(ys))
        ax.set_yticklabels([r.conn for r in rows])
        ax.invert_yaxis()
        ax.set_xlabel("accuracy (%)")
        ax.legend(frameon=False, loc="lower right")
        return _save(fig, path)


def stats_figures(result, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    return [
        plot_frequency_distribution(result.distribution, out_dir / "frequency_distribution.png"),
        plot_entropy(result.entropy, out_dir / "connective_entropy.png"),
    ]


def evaluation_figures(result, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    paths = [plot_folds(result.cv, out_dir / "folds.png")]
    if result.ablation:
        paths.append(plot_ablation(result.ablation, out_dir / "ablation.png"))
    if result.per_connective:
        paths.append(plot_per_connective(result.per_connective, out_dir / "per_connective.png"))
    return paths
