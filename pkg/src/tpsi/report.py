"""Residual statistics shared by all identity checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FULL_SWEEP = "full-sweep"
SAMPLED = "sampled"

# Entries with |rhs| below this fraction of the overall scale are left
# out of the ratio statistics (the ratio is meaningless near zero).
RATIO_FLOOR = 1e-6


@dataclass(frozen=True)
class ResidualReport:
    """Summary of an LHS-vs-RHS comparison over many spin assignments."""

    max_abs_diff: float
    rel_diff: float
    ratio_mean: complex
    ratio_spread: float
    entries_checked: int
    mode: str

    def passed(self, tolerance):
        return self.rel_diff <= tolerance

    def to_dict(self):
        return {
            "max_abs_diff": self.max_abs_diff,
            "rel_diff": self.rel_diff,
            "ratio_mean": [self.ratio_mean.real, self.ratio_mean.imag],
            "ratio_spread": self.ratio_spread,
            "entries_checked": self.entries_checked,
            "mode": self.mode,
        }


def residual_report(lhs, rhs, mode):
    """Compare two equally shaped complex arrays entrywise.

    rel_diff normalizes by the largest entry magnitude of either side, so
    a uniform scalar mismatch shows up as ratio_mean far from 1 with a
    small ratio_spread rather than as a huge rel_diff.
    """
    lhs = np.asarray(lhs, dtype=complex).ravel()
    rhs = np.asarray(rhs, dtype=complex).ravel()
    if lhs.shape != rhs.shape:
        raise ValueError(f"shape mismatch {lhs.shape} vs {rhs.shape}")
    if lhs.size == 0:
        return ResidualReport(0.0, 0.0, 0j, 0.0, 0, mode)
    max_abs_diff = float(np.abs(lhs - rhs).max())
    scale = float(max(np.abs(lhs).max(), np.abs(rhs).max()))
    rel_diff = max_abs_diff / scale if scale > 0 else 0.0
    mask = np.abs(rhs) > RATIO_FLOOR * scale if scale > 0 else None
    if mask is not None and mask.any():
        ratios = lhs[mask] / rhs[mask]
        ratio_mean = complex(ratios.mean())
        ratio_spread = float(np.abs(ratios - ratio_mean).max())
    else:
        ratio_mean = 0j
        ratio_spread = 0.0
    return ResidualReport(
        max_abs_diff, rel_diff, ratio_mean, ratio_spread, int(lhs.size), mode
    )
