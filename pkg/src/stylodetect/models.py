"""Feature pruning, five classifier families, and cross-validated scoring.

Every model is trained from scratch on z-scored features and exposes a
probability of the positive (machine-generated) class.  Training is a
pure function of (kind, data, hyperparameters, seed): artifacts are
byte-reproducible.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import trees
from .stats import NEGLIGIBLE, FeatureComparison, SchemaMismatch, _rank_with_ties, spearman_rho

log = logging.getLogger(__name__)

MODEL_KINDS = ("logistic", "knn", "svm-linear", "random-forest", "gradient-boosting")

DEFAULT_HYPERPARAMETERS = {
    "logistic": {"l2": 1e-3, "epochs": 500, "learning_rate": 0.1},
    "knn": {"k": 5},
    "svm-linear": {"l2": 1e-3, "epochs": 500, "learning_rate": 0.1},
    "random-forest": {"n_trees": 100, "max_depth": 12, "min_leaf": 1},
    "gradient-boosting": {
        "n_trees": 200,
        "max_depth": 3,
        "learning_rate": 0.1,
        "min_leaf": 1,
    },
}

ARTIFACT_VERSION = 1


class DegenerateLabels(ValueError):
    """Training labels contain fewer than two classes."""


class NonFiniteFeature(ValueError):
    """A feature value is NaN or infinite."""


class TooFewSamples(ValueError):
    """Not enough samples per class for the requested fold count."""


@dataclass
class PruneReport:
    kept: list[str]
    dropped_correlated: list[tuple[str, str, float]]  # (dropped, kept against, rho)
    dropped_negligible: list[str]


@dataclass
class TrainedModel:
    kind: str
    hyperparameters: dict
    feature_names: list[str]
    mean: np.ndarray
    std: np.ndarray
    parameters: dict
    seed: int


@dataclass
class EvalReport:
    kind: str
    k: int
    seed: int
    precision: list[float]
    recall: list[float]
    accuracy: list[float]
    f1: list[float]
    auc_roc: list[float]
    confusion: list[tuple[int, int, int, int]]  # (tp, fp, tn, fn) per fold
    aggregate: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.aggregate:
            self.aggregate = {
                name: sum(vals) / len(vals)
                for name, vals in (
                    ("precision", self.precision),
                    ("recall", self.recall),
                    ("accuracy", self.accuracy),
                    ("f1", self.f1),
                    ("auc_roc", self.auc_roc),
                )
            }


def prune_features(matrix: np.ndarray, comparisons: list[FeatureComparison]) -> PruneReport:
    """Drop negligible-effect features, then greedily de-correlate.

    Survivors are ordered by descending |delta| (name as tie-break); a
    feature stays only while its |Spearman rho| against every kept one
    is below 0.8.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != len(comparisons):
        raise SchemaMismatch(
            f"matrix has {matrix.shape[1] if matrix.ndim == 2 else 'bad'} columns, "
            f"expected {len(comparisons)}"
        )
    col_of = {c.feature: i for i, c in enumerate(comparisons)}
    dropped_negligible = [c.feature for c in comparisons if c.magnitude == NEGLIGIBLE]
    survivors = [c for c in comparisons if c.magnitude != NEGLIGIBLE]
    survivors.sort(key=lambda c: (-abs(c.delta), c.feature))
    kept: list[str] = []
    dropped_correlated: list[tuple[str, str, float]] = []
    for cand in survivors:
        blocker = None
        for name in kept:
            rho = spearman_rho(matrix[:, col_of[cand.feature]], matrix[:, col_of[name]])
            if abs(rho) >= 0.8:
                blocker = (cand.feature, name, rho)
                break
        if blocker is None:
            kept.append(cand.feature)
        else:
            dropped_correlated.append(blocker)
            log.info(
                "prune: dropped %s (rho=%.3f against %s)", blocker[0], blocker[2], blocker[1]
            )
    return PruneReport(kept, dropped_correlated, dropped_negligible)


def stratified_folds(labels, k: int, seed: int) -> np.ndarray:
    """Fold id per sample; per-class counts across folds differ by <= 1."""
    labels = np.asarray(labels)
    if k < 2:
        raise TooFewSamples(f"need k >= 2, got {k}")
    rng = np.random.default_rng(seed)
    folds = np.empty(labels.size, dtype=np.int64)
    position = 0
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        if idx.size < k:
            raise TooFewSamples(f"class {cls!r} has {idx.size} samples, need >= {k}")
        rng.shuffle(idx)
        for i in idx:
            folds[i] = position % k
            position += 1
    return folds


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -60.0, 60.0)))


def _standardize_fit(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    return mean, std


def _standardize_apply(x: np.ndarray, mean: np.ndarray, std: np.ndarray) -> np.ndarray:
    safe = np.where(std == 0.0, 1.0, std)
    return (x - mean) / safe


def _fit_logistic_1d(z: np.ndarray, y: np.ndarray, epochs: int = 200, lr: float = 0.1):
    """Sigmoid calibration a*z + c on raw scores z."""
    a, c = 1.0, 0.0
    n = z.size
    for _ in range(epochs):
        p = _sigmoid(a * z + c)
        g = p - y
        ga = float(g @ z) / n
        gc = float(g.sum()) / n
        a -= lr * ga
        c -= lr * gc
    return a, c


def _train_logistic(x, y, hp, rng):
    n, p = x.shape
    w = np.zeros(p)
    b = 0.0
    lr, lam = hp["learning_rate"], hp["l2"]
    for _ in range(hp["epochs"]):
        g = _sigmoid(x @ w + b) - y
        w -= lr * (x.T @ g / n + lam * w)
        b -= lr * float(g.sum()) / n
    return {"weights": w.tolist(), "bias": b}


def _train_svm(x, y, hp, rng):
    n, p = x.shape
    ypm = 2.0 * y - 1.0
    w = np.zeros(p)
    b = 0.0
    lr, lam = hp["learning_rate"], hp["l2"]
    for _ in range(hp["epochs"]):
        margin = (x @ w + b) * ypm
        active = margin < 1.0
        gw = -(x[active] * ypm[active, None]).sum(axis=0) / n + lam * w
        gb = -float(ypm[active].sum()) / n
        w -= lr * gw
        b -= lr * gb
    cal_a, cal_b = _fit_logistic_1d(x @ w + b, y)
    return {"weights": w.tolist(), "bias": b, "cal_a": cal_a, "cal_b": cal_b}


def _train_knn(x, y, hp, rng):
    return {"k": hp["k"], "train_x": x.tolist(), "train_y": y.tolist()}


def _train_forest(x, y, hp, rng):
    n, p = x.shape
    mtry = max(1, int(math.sqrt(p)))
    cap = trees.node_capacity(n, hp["max_depth"], hp["min_leaf"])
    ones = np.ones(n)
    grown = []
    for _ in range(hp["n_trees"]):
        boot = rng.integers(0, n, size=n)
        stream = trees.feature_subsets(cap, p, mtry, rng)
        tree = trees.grow(x, y, ones, boot, stream, 0, hp["max_depth"], hp["min_leaf"])
        grown.append(tree.to_dict())
    return {"trees": grown}


def _train_boosting(x, y, hp, rng):
    n, p = x.shape
    pbar = float(y.sum()) / n
    base = math.log(pbar / (1.0 - pbar))
    cap = trees.node_capacity(n, hp["max_depth"], hp["min_leaf"])
    stream = trees.feature_subsets(cap, p, p)
    rows = np.arange(n, dtype=np.int64)
    scores = np.full(n, base)
    lr = hp["learning_rate"]
    grown = []
    for _ in range(hp["n_trees"]):
        prob = _sigmoid(scores)
        residual = y - prob
        hess = prob * (1.0 - prob)
        tree = trees.grow(x, residual, hess, rows, stream, 1, hp["max_depth"], hp["min_leaf"])
        scores = scores + lr * tree.leaf_values(x)
        grown.append(tree.to_dict())
    return {"base_score": base, "trees": grown}


_TRAINERS = {
    "logistic": _train_logistic,
    "knn": _train_knn,
    "svm-linear": _train_svm,
    "random-forest": _train_forest,
    "gradient-boosting": _train_boosting,
}


def train(
    kind: str,
    rows,
    labels,
    hyperparameters: dict | None = None,
    seed: int = 0,
    feature_names: list[str] | None = None,
) -> TrainedModel:
    """Fit one classifier on z-scored rows; labels are 0 (human) / 1 (llm)."""
    if kind not in _TRAINERS:
        raise ValueError(f"unknown model kind {kind!r}; choose from {MODEL_KINDS}")
    x = np.asarray(rows, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64)
    if x.ndim != 2:
        raise SchemaMismatch("rows must be a 2-D matrix")
    if y.shape != (x.shape[0],):
        raise SchemaMismatch(f"{x.shape[0]} rows but {y.size} labels")
    if not np.isfinite(x).all():
        raise NonFiniteFeature("rows contain NaN or infinite values")
    if np.unique(y).size < 2:
        raise DegenerateLabels("training labels contain a single class")
    hp = dict(DEFAULT_HYPERPARAMETERS[kind])
    for key, value in (hyperparameters or {}).items():
        if key not in hp:
            raise ValueError(f"unknown hyperparameter {key!r} for {kind}")
        hp[key] = value
    names = list(feature_names) if feature_names is not None else [
        f"f{i}" for i in range(x.shape[1])
    ]
    if len(names) != x.shape[1]:
        raise SchemaMismatch(f"{len(names)} feature names for {x.shape[1]} columns")
    mean, std = _standardize_fit(x)
    xs = _standardize_apply(x, mean, std)
    rng = np.random.default_rng(seed)
    params = _TRAINERS[kind](xs, y, hp, rng)
    return TrainedModel(
        kind=kind,
        hyperparameters=hp,
        feature_names=names,
        mean=mean,
        std=std,
        parameters=params,
        seed=seed,
    )


def _scores_standardized(model: TrainedModel, xs: np.ndarray) -> np.ndarray:
    p = model.parameters
    if model.kind == "logistic":
        return _sigmoid(xs @ np.asarray(p["weights"]) + p["bias"])
    if model.kind == "svm-linear":
        margin = xs @ np.asarray(p["weights"]) + p["bias"]
        return _sigmoid(p["cal_a"] * margin + p["cal_b"])
    if model.kind == "knn":
        from . import kernels

        return kernels.knn_vote(
            np.asarray(p["train_x"], dtype=np.float64),
            np.asarray(p["train_y"], dtype=np.float64),
            xs,
            int(p["k"]),
        )
    if model.kind == "random-forest":
        acc = np.zeros(xs.shape[0])
        for td in p["trees"]:
            acc += trees.Tree.from_dict(td).leaf_values(xs)
        return acc / len(p["trees"])
    if model.kind == "gradient-boosting":
        acc = np.full(xs.shape[0], p["base_score"])
        lr = model.hyperparameters["learning_rate"]
        for td in p["trees"]:
            acc += lr * trees.Tree.from_dict(td).leaf_values(xs)
        return _sigmoid(acc)
    raise ValueError(f"unknown model kind {model.kind!r}")


def predict_proba(model: TrainedModel, vector) -> float | np.ndarray:
    """Probability of the positive class; 0.5 is the hard-label threshold."""
    x = np.asarray(vector, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != len(model.feature_names):
        raise SchemaMismatch(
            f"expected {len(model.feature_names)} features, got vector of shape {x.shape}"
        )
    xs = _standardize_apply(x, model.mean, model.std)
    out = _scores_standardized(model, np.ascontiguousarray(xs))
    return float(out[0]) if single else out


def auc_roc(scores, labels) -> float:
    """Rank-statistic AUC: U over n+ * n-, ties counting one half."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    pos = labels == 1
    n_pos = int(pos.sum())
    n_neg = labels.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabels("AUC needs both classes")
    ranks, _ = _rank_with_ties(scores)
    u = float(ranks[pos].sum()) - n_pos * (n_pos + 1) / 2.0
    return u / (n_pos * n_neg)


def confusion_counts(pred: np.ndarray, truth: np.ndarray) -> tuple[int, int, int, int]:
    tp = int(((pred == 1) & (truth == 1)).sum())
    fp = int(((pred == 1) & (truth == 0)).sum())
    tn = int(((pred == 0) & (truth == 0)).sum())
    fn = int(((pred == 0) & (truth == 1)).sum())
    return tp, fp, tn, fn


def classification_metrics(tp: int, fp: int, tn: int, fn: int) -> dict:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    accuracy = (tp + tn) / (tp + fp + tn + fn)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return {"precision": precision, "recall": recall, "accuracy": accuracy, "f1": f1}


def evaluate_cv(
    kind: str,
    rows,
    labels,
    k: int = 10,
    seed: int = 0,
    hyperparameters: dict | None = None,
    feature_names: list[str] | None = None,
) -> EvalReport:
    """Stratified k-fold evaluation; aggregate metrics are fold means."""
    x = np.asarray(rows, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    folds = stratified_folds(y, k, seed)
    per = {m: [] for m in ("precision", "recall", "accuracy", "f1", "auc_roc")}
    confusion = []
    for f in range(k):
        test = folds == f
        model = train(
            kind, x[~test], y[~test], hyperparameters, seed, feature_names
        )
        scores = predict_proba(model, x[test])
        pred = (scores >= 0.5).astype(np.int64)
        tp, fp, tn, fn = confusion_counts(pred, y[test])
        m = classification_metrics(tp, fp, tn, fn)
        for name in ("precision", "recall", "accuracy", "f1"):
            per[name].append(m[name])
        per["auc_roc"].append(auc_roc(scores, y[test]))
        confusion.append((tp, fp, tn, fn))
    return EvalReport(
        kind=kind,
        k=k,
        seed=seed,
        precision=per["precision"],
        recall=per["recall"],
        accuracy=per["accuracy"],
        f1=per["f1"],
        auc_roc=per["auc_roc"],
        confusion=confusion,
    )


def model_to_dict(model: TrainedModel) -> dict:
    return {
        "version": ARTIFACT_VERSION,
        "kind": model.kind,
        "hyperparameters": model.hyperparameters,
        "feature_names": model.feature_names,
        "standardization": {"mean": model.mean.tolist(), "std": model.std.tolist()},
        "parameters": model.parameters,
        "seed": model.seed,
    }


def save_model(model: TrainedModel, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")


def load_model(path: str | Path) -> TrainedModel:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != ARTIFACT_VERSION:
        raise ValueError(f"unsupported model artifact version {doc.get('version')!r}")
    return TrainedModel(
        kind=doc["kind"],
        hyperparameters=doc["hyperparameters"],
        feature_names=doc["feature_names"],
        mean=np.asarray(doc["standardization"]["mean"], dtype=np.float64),
        std=np.asarray(doc["standardization"]["std"], dtype=np.float64),
        parameters=doc["parameters"],
        seed=doc["seed"],
    )


def eval_report_to_dict(report: EvalReport) -> dict:
    return {
        "kind": report.kind,
        "k": report.k,
        "seed": report.seed,
        "aggregate": report.aggregate,
        "folds": [
            {
                "fold": i,
                "precision": report.precision[i],
                "recall": report.recall[i],
                "accuracy": report.accuracy[i],
                "f1": report.f1[i],
                "auc_roc": report.auc_roc[i],
                "tp": report.confusion[i][0],
                "fp": report.confusion[i][1],
                "tn": report.confusion[i][2],
                "fn": report.confusion[i][3],
            }
            for i in range(report.k)
        ],
    }


def write_eval_json(report: EvalReport, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(eval_report_to_dict(report), fh, indent=2)
        fh.write("\n")


def write_eval_csv(report: EvalReport, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["fold", "precision", "recall", "accuracy", "f1", "auc_roc", "tp", "fp", "tn", "fn"]
        )
        for row in eval_report_to_dict(report)["folds"]:
            writer.writerow(
                [
                    row["fold"],
                    repr(row["precision"]),
                    repr(row["recall"]),
                    repr(row["accuracy"]),
                    repr(row["f1"]),
                    repr(row["auc_roc"]),
                    row["tp"],
                    row["fp"],
                    row["tn"],
                    row["fn"],
                ]
            )
        agg = report.aggregate
        writer.writerow(
            [
                "mean",
                repr(agg["precision"]),
                repr(agg["recall"]),
                repr(agg["accuracy"]),
                repr(agg["f1"]),
                repr(agg["auc_roc"]),
                "",
                "",
                "",
                "",
            ]
        )
