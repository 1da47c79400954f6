"""Paired Student t-test at the 5% level (two-tailed)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = ["T_CRITICAL_05", "TTestResult", "critical_value", "paired_t_test"]

# Two-tailed critical values of Student's t at alpha = 0.05, df = 1..30.
T_CRITICAL_05 = (
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
    2.201, 2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
    2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
)


def critical_value(df: int) -> float:
    """Beyond df=30 the df=30 value is used, which is slightly conservative."""
    if df < 1:
        raise ValueError("degrees of freedom must be >= 1")
    return T_CRITICAL_05[min(df, len(T_CRITICAL_05)) - 1]


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    degrees_of_freedom: int
    significant_at_05: bool
    degenerate: bool
    mean_difference: float = 0.0

    @property
    def improved(self) -> bool:
        """Significant and in favour of the first sample."""
        return self.significant_at_05 and self.mean_difference > 0


def paired_t_test(a: Sequence[float], b: Sequence[float]) -> TTestResult:
    """Test the mean of ``a[i] - b[i]`` against zero.

    When every difference is equal the statistic is undefined: a non-zero
    constant difference counts as significant (t = +/-inf), an all-zero one
    as not significant (t = 0).
    """
    if len(a) != len(b):
        raise ValueError(f"paired samples differ in length ({len(a)} vs {len(b)})")
    n = len(a)
    if n < 2:
        raise ValueError("paired t-test needs at least two pairs")
    d = [x - y for x, y in zip(a, b)]
    mean = math.fsum(d) / n
    var = math.fsum((x - mean) ** 2 for x in d) / (n - 1)
    df = n - 1
    # differences identical up to rounding count as zero variance
    if var <= (1e-12 * max(1.0, abs(mean))) ** 2:
        if all(x == 0 for x in d) or abs(mean) < 1e-15:
            return TTestResult(0.0, df, False, True, 0.0)
        return TTestResult(math.copysign(math.inf, mean), df, True, True, mean)
    t = mean / math.sqrt(var / n)
    return TTestResult(t, df, abs(t) > critical_value(df), False, mean)
