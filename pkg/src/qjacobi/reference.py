"""Published reference values, copied digit for digit.

These are the only hard-coded numbers that tests and the ``table1``
command compare against. Each value keeps the number of digits it was
printed with; nothing here is recomputed or rounded.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BoundRow:
    """Printed bounds for the smallest zero of ``P_15^(alpha, beta)``.

    ``anomaly`` names a printed column that is known to contradict the
    ordering ``tight_lower < zero < upper < -1``; that column is compared
    against the ordering, not against the printed digits.
    """

    alpha: float
    beta: float
    tight_lower: float
    zero: float
    upper: float
    anomaly: str | None = None


TABLE1_DEGREE = 15

# Columns: -1 + D_n/C_n, smallest zero, -B_n at n = 15.
TABLE1 = (
    BoundRow(0.93, -1.9, -1.0044, -1.00287, -1.00085),
    BoundRow(-0.93, -1.9, -1.005, -1.00327, -1.00097),
    # printed upper -1.0045 lies below the printed zero -1.0004635
    BoundRow(-0.93, -1.05, -1.0004636, -1.0004635, -1.0045, anomaly="upper"),
    BoundRow(0.93, -1.05, -1.0004094, -1.0004088, -1.0004001),
    BoundRow(8.3, -1.55, -1.00235, -1.00231, -1.00151),
)

TABLE1_TOL = 1e-4


@dataclass(frozen=True)
class ThresholdExample:
    """Threshold ``delta`` and second-smallest zero at one parameter pair."""

    n: int
    alpha: float
    beta: float
    delta: float
    x2: float
    condition: bool  # delta < x2


# n = 5, alpha = 2.35: the condition holds at beta = -1.5 and fails at beta = -1.9.
THRESHOLD_EXAMPLES = (
    ThresholdExample(5, 2.35, -1.5, -0.922179, -0.885666, True),
    ThresholdExample(5, 2.35, -1.9, -0.855422, -0.961637, False),
)

THRESHOLD_TOL = 1e-5
