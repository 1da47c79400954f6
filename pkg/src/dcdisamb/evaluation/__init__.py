from .crossval import (
    AblationRow,
    ConnectiveRow,
    CVResult,
    ablation,
    cross_validate,
    fold_assignment,
    fold_sizes,
    per_connective_report,
)
from .significance import TTestResult, critical_value, paired_t_test
from .stats import (
    ConnectiveStats,
    EntropyTable,
    FrequencyBucket,
    Metrics,
    binary_entropy,
    connective_entropy,
    frequency_distribution,
    information_gain,
    label_entropy,
    metrics,
)

__all__ = [
    "AblationRow",
    "ConnectiveRow",
    "ConnectiveStats",
    "CVResult",
    "EntropyTable",
    "FrequencyBucket",
    "Metrics",
    "TTestResult",
    "ablation",
    "binary_entropy",
    "connective_entropy",
    "critical_value",
    "cross_validate",
    "fold_assignment",
    "fold_sizes",
    "frequency_distribution",
    "information_gain",
    "label_entropy",
    "metrics",
    "paired_t_test",
    "per_connective_report",
]
