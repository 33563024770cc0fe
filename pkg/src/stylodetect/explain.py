"""Model-agnostic Shapley attributions by permutation sampling.

For each sampled feature ordering, features are switched one at a time
from a background row's values to the instance's values; the output
change at each switch is that feature's marginal contribution.  Sampled
orderings are paired with background rows round-robin and the sample
count is rounded up to a whole number of background cycles, so the
attributions telescope to f(x) minus the background mean exactly (up to
float rounding) rather than only in expectation.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .models import TrainedModel, predict_proba
from .stats import SchemaMismatch, spearman_rho

log = logging.getLogger(__name__)


class EmptyBackground(ValueError):
    """Shapley estimation needs at least one background row."""


@dataclass
class AttributionSet:
    """Per-feature Shapley values for one explained instance."""

    instance_id: str
    feature_names: list[str]
    values: np.ndarray  # the instance's feature values, raw units
    phi: np.ndarray  # probability units
    baseline: float  # mean model output over the background sample
    fx: float  # model output for the instance
    n_samples: int  # permutations actually used
    seed: int


@dataclass
class GlobalImportance:
    feature_names: list[str]  # canonical order of the explained schema
    mean_abs_phi: np.ndarray
    rank: np.ndarray  # 1 = most important; a permutation of 1..p
    direction: list  # Spearman rho of (feature value, phi), None if < 3 instances


def shapley(
    model: TrainedModel,
    instance,
    background,
    n_samples: int = 2000,
    seed: int = 0,
    instance_id: str = "0",
) -> AttributionSet:
    """Estimate Shapley values of predict_proba for one instance."""
    x = np.asarray(instance, dtype=np.float64)
    bg = np.asarray(background, dtype=np.float64)
    p = len(model.feature_names)
    if x.shape != (p,):
        raise SchemaMismatch(f"instance shape {x.shape}, expected ({p},)")
    if bg.ndim != 2 or bg.shape[1] != p:
        raise SchemaMismatch(f"background shape {bg.shape}, expected (*, {p})")
    if bg.shape[0] == 0:
        raise EmptyBackground("background sample is empty")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    m = bg.shape[0]
    cycles = -(-n_samples // m)  # ceil
    n_eff = cycles * m

    rng = np.random.default_rng(seed)
    perms = rng.permuted(
        np.tile(np.arange(p, dtype=np.int64), (n_eff, 1)), axis=1
    )
    # position[s, j] = index of feature j within ordering s
    position = np.empty_like(perms)
    position[np.arange(n_eff)[:, None], perms] = np.arange(p, dtype=np.int64)[None, :]
    paired = np.tile(bg, (cycles, 1))

    evals = np.empty((p + 1, n_eff))
    for k in range(p + 1):
        z = np.where(position < k, x[None, :], paired)
        evals[k] = predict_proba(model, z)
    phi = np.zeros(p)
    for k in range(p):
        np.add.at(phi, perms[:, k], evals[k + 1] - evals[k])
    phi /= n_eff

    fx = float(predict_proba(model, x))
    baseline = float(np.asarray(predict_proba(model, bg)).mean())
    return AttributionSet(
        instance_id=str(instance_id),
        feature_names=list(model.feature_names),
        values=x.copy(),
        phi=phi,
        baseline=baseline,
        fx=fx,
        n_samples=n_eff,
        seed=seed,
    )


def global_importance(sets: list[AttributionSet]) -> GlobalImportance:
    """Mean |phi| per feature with ranks and value-vs-phi direction."""
    if not sets:
        raise SchemaMismatch("need at least one attribution set")
    names = sets[0].feature_names
    for s in sets:
        if s.feature_names != names:
            raise SchemaMismatch("attribution sets disagree on feature schema")
    phis = np.stack([s.phi for s in sets])
    values = np.stack([s.values for s in sets])
    mean_abs = np.abs(phis).mean(axis=0)
    order = sorted(range(len(names)), key=lambda i: (-mean_abs[i], names[i]))
    rank = np.empty(len(names), dtype=np.int64)
    for r, i in enumerate(order, start=1):
        rank[i] = r
    direction: list = []
    for i in range(len(names)):
        if len(sets) >= 3:
            direction.append(spearman_rho(values[:, i], phis[:, i]))
        else:
            direction.append(None)
    return GlobalImportance(
        feature_names=list(names), mean_abs_phi=mean_abs, rank=rank, direction=direction
    )


def emit_violin_data(sets: list[AttributionSet], path: str | Path) -> GlobalImportance:
    """CSV of (feature, instance, value, phi) ordered by global importance."""
    if not sets:
        raise SchemaMismatch("need at least one attribution set")
    gi = global_importance(sets)
    by_rank = sorted(range(len(gi.feature_names)), key=lambda i: gi.rank[i])
    ordered_sets = sorted(sets, key=lambda s: s.instance_id)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["feature", "instance_id", "feature_value", "phi"])
        for i in by_rank:
            for s in ordered_sets:
                writer.writerow(
                    [
                        gi.feature_names[i],
                        s.instance_id,
                        repr(float(s.values[i])),
                        repr(float(s.phi[i])),
                    ]
                )
    return gi


def emit_importance_svg(gi: GlobalImportance, path: str | Path) -> None:
    """Horizontal bar chart of mean |phi|, one bar per feature."""
    by_rank = sorted(range(len(gi.feature_names)), key=lambda i: gi.rank[i])
    bar_max = 360.0
    row_h = 22
    label_x = 230
    top = 34
    height = top + row_h * len(by_rank) + 12
    peak = float(gi.mean_abs_phi.max())
    scale = bar_max / peak if peak > 0 else 0.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="640" height="{height}" '
        f'font-family="sans-serif" font-size="12">',
        '<text x="8" y="18" font-size="14">Mean |phi| per feature</text>',
    ]
    for row, i in enumerate(by_rank):
        y = top + row * row_h
        w = gi.mean_abs_phi[i] * scale
        parts.append(
            f'<text x="{label_x - 6}" y="{y + 14}" text-anchor="end">'
            f"{gi.feature_names[i]}</text>"
        )
        parts.append(
            f'<rect x="{label_x}" y="{y + 3}" width="{w:.3f}" height="{row_h - 8}" '
            'fill="#4878a8"/>'
        )
        parts.append(
            f'<text x="{label_x + w + 4:.3f}" y="{y + 14}">{gi.mean_abs_phi[i]:.4f}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def importance_to_dict(gi: GlobalImportance) -> dict:
    by_rank = sorted(range(len(gi.feature_names)), key=lambda i: gi.rank[i])
    return {
        gi.feature_names[i]: {
            "mean_abs_phi": float(gi.mean_abs_phi[i]),
            "rank": int(gi.rank[i]),
            "direction": gi.direction[i],
        }
        for i in by_rank
    }


def write_importance_json(gi: GlobalImportance, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(importance_to_dict(gi), fh, indent=2)
        fh.write("\n")


def attribution_to_dict(s: AttributionSet) -> dict:
    return {
        "instance_id": s.instance_id,
        "feature_names": s.feature_names,
        "values": s.values.tolist(),
        "phi": s.phi.tolist(),
        "baseline": s.baseline,
        "fx": s.fx,
        "n_samples": s.n_samples,
        "seed": s.seed,
    }
