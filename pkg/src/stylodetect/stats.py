"""Distribution comparison between human and machine authors.

For every feature we run a two-sided Mann-Whitney U test and compute
Cliff's delta.  A feature counts as discriminating only when both agree:
p below alpha and a non-negligible magnitude.  Direction comes from the
medians, with the sign of delta breaking exact median ties.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .metrics import FEATURE_NAMES, format_number

log = logging.getLogger(__name__)


class EmptySample(ValueError):
    """A statistical sample with no observations."""


class LengthMismatch(ValueError):
    """Paired samples of different lengths."""


class SchemaMismatch(ValueError):
    """Feature matrix does not match the expected column schema."""


NEGLIGIBLE = "Negligible"
SMALL = "Small"
MEDIUM = "Medium"
LARGE = "Large"


def magnitude_label(delta: float) -> str:
    """Qualitative effect size bin for a Cliff's delta."""
    ad = abs(delta)
    if ad <= 0.147:
        return NEGLIGIBLE
    if ad <= 0.33:
        return SMALL
    if ad <= 0.474:
        return MEDIUM
    return LARGE


@dataclass
class ComparisonConfig:
    alpha: float = 0.01
    method: str = "auto"  # exact | normal-approximation | auto

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0,1), got {self.alpha}")
        if self.method not in ("exact", "normal-approximation", "auto"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class FeatureComparison:
    feature: str
    u_statistic: float
    p_value: float
    delta: float
    magnitude: str
    direction: str  # human-higher | llm-higher | none
    significant: bool


def cliffs_delta(a, b) -> tuple[float, str]:
    """Cliff's d of a over b, with its magnitude bin."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise EmptySample("cliffs_delta needs non-empty samples")
    greater, less = kernels.pair_counts(np.sort(a, kind="mergesort"), np.sort(b, kind="mergesort"))
    d = (greater - less) / (a.size * b.size)
    return d, magnitude_label(d)


def _rank_with_ties(values: np.ndarray) -> tuple[np.ndarray, float]:
    order = np.argsort(values, kind="mergesort")
    ranks_sorted, tie_term = kernels.rank_sorted(values[order])
    ranks = np.empty_like(ranks_sorted)
    ranks[order] = ranks_sorted
    return ranks, tie_term


def _u_count_table(n: int, m: int) -> list[float]:
    """counts[u] = number of rank arrangements of n vs m samples with U = u.

    Builds N(u | j, i) by peeling off the overall maximum element: when it
    belongs to the first sample it contributes i (first > second) pairs,
    when it belongs to the second sample it contributes none.
    """
    max_u = n * m
    table = [[1.0] + [0.0] * max_u for _ in range(n + 1)]  # i = 0
    for i in range(1, m + 1):
        new = [[0.0] * (max_u + 1) for _ in range(n + 1)]
        new[0][0] = 1.0
        for j in range(1, n + 1):
            prev_i = table[j]
            prev_j = new[j - 1]
            row = new[j]
            for u in range(j * i + 1):
                val = prev_i[u]
                if u >= i:
                    val += prev_j[u - i]
                row[u] = val
        table = new
    return table[n]


def mann_whitney_u(a, b, method: str = "auto") -> tuple[float, float]:
    """Two-sided Mann-Whitney test; returns (U of sample a, p-value)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na, nb = a.size, b.size
    if na == 0 or nb == 0:
        raise EmptySample("mann_whitney_u needs non-empty samples")
    combined = np.concatenate((a, b))
    ranks, tie_term = _rank_with_ties(combined)
    ra = float(ranks[:na].sum())
    u1 = ra - na * (na + 1) / 2.0
    has_ties = tie_term > 0.0

    if method == "auto":
        use_exact = na <= 10 and nb <= 10 and not has_ties
    elif method == "exact":
        if has_ties:
            raise ValueError("exact method requires tie-free samples")
        use_exact = True
    else:
        use_exact = False

    if use_exact:
        counts = _u_count_table(na, nb)
        total = sum(counts)
        u_int = int(round(u1))
        cdf_lo = sum(counts[: u_int + 1]) / total
        cdf_hi = sum(counts[u_int:]) / total
        return u1, min(1.0, 2.0 * min(cdf_lo, cdf_hi))

    n = na + nb
    mu = na * nb / 2.0
    var = na * nb / 12.0 * ((n + 1) - tie_term / (n * (n - 1))) if n > 1 else 0.0
    if var <= 0.0:
        return u1, 1.0
    z = (abs(u1 - mu) - 0.5) / math.sqrt(var)
    if z < 0.0:
        z = 0.0
    return u1, min(1.0, math.erfc(z / math.sqrt(2.0)))


def spearman_rho(a, b) -> float:
    """Rank correlation with average ranks; 0 for constant input."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size != b.size:
        raise LengthMismatch(f"paired samples differ: {a.size} vs {b.size}")
    if a.size < 2:
        raise LengthMismatch("spearman_rho needs at least 2 pairs")
    ra, _ = _rank_with_ties(a)
    rb, _ = _rank_with_ties(b)
    da = ra - ra.mean()
    db = rb - rb.mean()
    denom = math.sqrt(float(da @ da) * float(db @ db))
    if denom == 0.0:
        log.warning("spearman_rho: constant input, returning 0")
        return 0.0
    rho = float(da @ db) / denom
    return max(-1.0, min(1.0, rho))


def compare_features(
    human_matrix: np.ndarray,
    llm_matrix: np.ndarray,
    config: ComparisonConfig | None = None,
    feature_names: list[str] | None = None,
) -> list[FeatureComparison]:
    """One FeatureComparison per column, in canonical feature order."""
    config = config or ComparisonConfig()
    names = feature_names if feature_names is not None else FEATURE_NAMES
    human_matrix = np.asarray(human_matrix, dtype=np.float64)
    llm_matrix = np.asarray(llm_matrix, dtype=np.float64)
    if human_matrix.ndim != 2 or llm_matrix.ndim != 2:
        raise SchemaMismatch("feature matrices must be 2-D")
    if human_matrix.shape[1] != len(names) or llm_matrix.shape[1] != len(names):
        raise SchemaMismatch(
            f"expected {len(names)} feature columns, got "
            f"{human_matrix.shape[1]} and {llm_matrix.shape[1]}"
        )
    method = {"normal-approximation": "normal-approximation"}.get(
        config.method, config.method
    )
    out = []
    for col, name in enumerate(names):
        h = human_matrix[:, col]
        m = llm_matrix[:, col]
        u, p = mann_whitney_u(h, m, method=method)
        d, mag = cliffs_delta(h, m)
        if d == 0.0:
            direction = "none"
        else:
            med_h = float(np.median(h))
            med_m = float(np.median(m))
            if med_h > med_m:
                direction = "human-higher"
            elif med_m > med_h:
                direction = "llm-higher"
            else:
                direction = "human-higher" if d > 0 else "llm-higher"
        out.append(
            FeatureComparison(
                feature=name,
                u_statistic=u,
                p_value=p,
                delta=d,
                magnitude=mag,
                direction=direction,
                significant=bool(p < config.alpha and mag != NEGLIGIBLE),
            )
        )
    return out


def write_effects_csv(comparisons: list[FeatureComparison], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["feature", "u", "p", "delta", "magnitude", "direction", "significant"]
        )
        for c in comparisons:
            writer.writerow(
                [
                    c.feature,
                    format_number(c.u_statistic),
                    format_number(c.p_value),
                    format_number(c.delta),
                    c.magnitude,
                    c.direction,
                    "true" if c.significant else "false",
                ]
            )


def render_effects_text(comparisons: list[FeatureComparison]) -> str:
    """Aligned text table of the effect comparison."""
    rows = [["Feature", "Delta", "Magnitude", "Direction", "p", "Significant"]]
    for c in comparisons:
        rows.append(
            [
                c.feature,
                f"{c.delta:+.3f}",
                c.magnitude,
                c.direction,
                f"{c.p_value:.3g}",
                "yes" if c.significant else "no",
            ]
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def read_effects_csv(path: str | Path) -> list[FeatureComparison]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            out.append(
                FeatureComparison(
                    feature=row["feature"],
                    u_statistic=float(row["u"]),
                    p_value=float(row["p"]),
                    delta=float(row["delta"]),
                    magnitude=row["magnitude"],
                    direction=row["direction"],
                    significant=row["significant"] == "true",
                )
            )
    return out
