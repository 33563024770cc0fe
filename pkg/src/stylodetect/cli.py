"""Pipeline driver: file-based stages from raw corpus to reports.

Every stage reads artifacts from the run directory, writes its own, and
records a manifest of input and output hashes.  A config file fully
determines a run; a handful of flags override single config keys.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import corpus, explain, llmgen, metrics, models, stats

log = logging.getLogger(__name__)

STAGES = (
    "ingest",
    "extract-classes",
    "filter",
    "generate",
    "metrics",
    "compare",
    "prune",
    "train",
    "evaluate",
    "explain",
    "report",
)

GRANULARITIES = ("function", "class")


class ConfigError(ValueError):
    """The config file or flag values are unusable."""


class StageFailure(RuntimeError):
    """A stage could not produce its artifacts."""


class MissingInput(StageFailure):
    """A required input artifact does not exist yet."""


class IncompleteRun(StageFailure):
    """The run directory lacks the stages the report needs."""


@dataclass
class RunConfig:
    """Everything a run needs; relative paths resolve against the config file."""

    corpus_dir: str = "corpus"
    run_dir: str = "run"
    granularity: str = "function"
    seed: int = 0
    alpha: float = 0.01
    ratio_threshold: float = 0.4
    k_folds: int = 10
    model_kinds: list[str] = field(default_factory=lambda: list(models.MODEL_KINDS))
    sample: int = 0
    model_id: str = ""
    max_tokens: int = llmgen.DEFAULT_MAX_TOKENS
    cache_dir: str = ""
    concurrency: int = 4
    live: bool = False
    shap_samples: int = 2000
    background_size: int = 100
    explain_count: int = 20
    explain_model: str = "gradient-boosting"


def load_config(path: str | Path) -> RunConfig:
    """Parse a config JSON file over the defaults."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = sorted(set(payload) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return RunConfig(**payload)


def validate_config(cfg: RunConfig) -> None:
    if cfg.granularity not in GRANULARITIES:
        raise ConfigError(f"granularity must be one of {GRANULARITIES}")
    if not 0.0 < cfg.alpha < 1.0:
        raise ConfigError(f"alpha must be in (0, 1), got {cfg.alpha}")
    if cfg.ratio_threshold < 0:
        raise ConfigError(f"ratio_threshold must be nonnegative, got {cfg.ratio_threshold}")
    if cfg.k_folds < 2:
        raise ConfigError(f"k_folds must be at least 2, got {cfg.k_folds}")
    if cfg.sample < 0:
        raise ConfigError(f"sample must be nonnegative, got {cfg.sample}")
    if cfg.max_tokens < 1:
        raise ConfigError(f"max_tokens must be positive, got {cfg.max_tokens}")
    if cfg.concurrency < 1:
        raise ConfigError(f"concurrency must be at least 1, got {cfg.concurrency}")
    if cfg.shap_samples < 1:
        raise ConfigError(f"shap_samples must be positive, got {cfg.shap_samples}")
    if cfg.background_size < 1:
        raise ConfigError(f"background_size must be positive, got {cfg.background_size}")
    if cfg.explain_count < 1:
        raise ConfigError(f"explain_count must be positive, got {cfg.explain_count}")
    if not cfg.model_kinds:
        raise ConfigError("model_kinds must name at least one model")
    bad = [k for k in cfg.model_kinds if k not in models.MODEL_KINDS]
    if bad:
        raise ConfigError(f"unknown model kinds: {', '.join(bad)}")
    if cfg.explain_model not in models.MODEL_KINDS:
        raise ConfigError(f"unknown explain_model: {cfg.explain_model}")


def _resolve_paths(cfg: RunConfig, base: Path) -> None:
    for name in ("corpus_dir", "run_dir", "cache_dir"):
        value = getattr(cfg, name)
        if value and not Path(value).is_absolute():
            setattr(cfg, name, str((base / value).resolve()))


def resolve_config(path: str | Path, args: argparse.Namespace | None = None) -> RunConfig:
    """Load a config file, apply flag overrides, validate, fix paths."""
    cfg = load_config(path)
    if args is not None:
        if args.seed is not None:
            cfg.seed = args.seed
        if args.alpha is not None:
            cfg.alpha = args.alpha
        if args.ratio is not None:
            cfg.ratio_threshold = args.ratio
        if args.k is not None:
            cfg.k_folds = args.k
        if args.models is not None:
            cfg.model_kinds = [m.strip() for m in args.models.split(",") if m.strip()]
        if args.sample is not None:
            cfg.sample = args.sample
    validate_config(cfg)
    _resolve_paths(cfg, Path(path).resolve().parent)
    return cfg


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _hash_input(path: Path) -> str:
    """Content hash of a file, or a tree hash of a directory."""
    if path.is_dir():
        digest = hashlib.sha256()
        for member in sorted(p for p in path.rglob("*") if p.is_file()):
            rel = member.relative_to(path).as_posix()
            digest.update(f"{rel}\n{_sha256_file(member)}\n".encode("utf-8"))
        return digest.hexdigest()
    return _sha256_file(path)


def _token_path(path: Path, cfg: RunConfig) -> str:
    """Location-independent label for a manifest entry."""
    resolved = path.resolve()
    roots = [("$run", Path(cfg.run_dir))]
    if cfg.cache_dir:
        roots.append(("$cache", Path(cfg.cache_dir)))
    roots.append(("$corpus", Path(cfg.corpus_dir)))
    for token, root in roots:
        root = root.resolve()
        if resolved == root:
            return token
        try:
            return f"{token}/{resolved.relative_to(root).as_posix()}"
        except ValueError:
            continue
    return path.name


def _write_manifest(cfg: RunConfig, stage: str, inputs: list[Path], outputs: list[Path]) -> None:
    mdir = Path(cfg.run_dir) / "manifests"
    mdir.mkdir(parents=True, exist_ok=True)
    payload = {
        "stage": stage,
        "inputs": {_token_path(p, cfg): _hash_input(p) for p in inputs},
        "outputs": {_token_path(p, cfg): _hash_input(p) for p in outputs},
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    (mdir / f"{stage}.json").write_text(text, encoding="utf-8")


def _require(path: Path, stage: str, producer: str) -> Path:
    if not path.exists():
        raise MissingInput(f"{stage}: missing {path.name}; run '{producer}' first")
    return path


def _run_dir(cfg: RunConfig) -> Path:
    run = Path(cfg.run_dir)
    run.mkdir(parents=True, exist_ok=True)
    return run


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _stage_ingest(cfg: RunConfig) -> None:
    src = Path(cfg.corpus_dir)
    if not src.exists():
        raise MissingInput(f"ingest: corpus path {src} does not exist")
    try:
        snippets = corpus.ingest(src)
    except (corpus.EmptyCorpus, corpus.IoFailure) as exc:
        raise StageFailure(f"ingest: {exc}") from exc
    out = _run_dir(cfg) / "snippets.jsonl"
    corpus.write_snippets(snippets, out)
    log.info("ingest: %d snippets from %s", len(snippets), src.name)
    _write_manifest(cfg, "ingest", [src], [out])


def _stage_extract_classes(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    src = _require(run / "snippets.jsonl", "extract-classes", "ingest")
    snippets = corpus.read_snippets(src)
    graph = corpus.build_inheritance_graph(snippets)
    names = corpus.standalone_classes(graph)
    keep = set(names)
    standalone = [
        s
        for s in snippets
        if s.kind == "class"
        and corpus.class_name(s) in keep
        and graph.nodes.get(corpus.class_name(s)) == s.origin
    ]
    graph_out = run / "inheritance.json"
    _write_json(
        graph_out,
        {
            "nodes": graph.nodes,
            "edges": [list(edge) for edge in graph.edges],
            "standalone": names,
        },
    )
    class_out = run / "standalone.jsonl"
    corpus.write_snippets(standalone, class_out)
    log.info("extract-classes: %d standalone of %d classes",
             len(standalone), sum(1 for s in snippets if s.kind == "class"))
    _write_manifest(cfg, "extract-classes", [src], [graph_out, class_out])


def _stage_filter(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    if cfg.granularity == "function":
        src = _require(run / "snippets.jsonl", "filter", "ingest")
        pool = [s for s in corpus.read_snippets(src) if s.kind == "function"]
    else:
        src = _require(run / "standalone.jsonl", "filter", "extract-classes")
        pool = corpus.read_snippets(src)
    kept = corpus.filter_by_ratio(pool, cfg.ratio_threshold)
    if cfg.sample > 0:
        kept = corpus.reservoir_sample(kept, cfg.sample, cfg.seed)
    out = run / "filtered.jsonl"
    corpus.write_snippets(kept, out)
    log.info("filter: kept %d of %d %s snippets", len(kept), len(pool), cfg.granularity)
    _write_manifest(cfg, "filter", [src], [out])


def _stage_generate(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    src = _require(run / "filtered.jsonl", "generate", "filter")
    if not cfg.model_id:
        raise StageFailure("generate: model_id is not set in the config")
    snippets = corpus.read_snippets(src)
    cache = Path(cfg.cache_dir) if cfg.cache_dir else run / "cache"
    try:
        transport = llmgen.HttpTransport() if cfg.live else None
    except llmgen.TransportFailure as exc:
        raise StageFailure(f"generate: {exc}") from exc
    client = llmgen.GenerationClient(cache, transport=transport)
    reqs: list[llmgen.GenerationRequest] = []
    parents: list[corpus.CodeSnippet] = []
    skipped = 0
    for s in snippets:
        if not s.docstring.strip():
            skipped += 1
            continue
        reqs.append(llmgen.GenerationRequest(s.kind, s.docstring, cfg.model_id, cfg.max_tokens))
        parents.append(s)
    if skipped:
        log.info("generate: skipped %d snippets without docstrings", skipped)
    records = llmgen.batch_generate(reqs, client, cfg.concurrency)
    author = f"llm:{cfg.model_id}"
    generated: list[corpus.CodeSnippet] = []
    record_rows: list[dict] = []
    for s, rec in zip(parents, records):
        record_rows.append(
            {
                "parent_id": s.id,
                "request_hash": rec.request_hash,
                "status": rec.status,
                "timestamp": rec.timestamp,
            }
        )
        if rec.status != "ok":
            continue
        source = rec.code if rec.code.endswith("\n") else rec.code + "\n"
        origin = corpus.GENERATED_ORIGIN_PREFIX + s.id
        gid = corpus.snippet_id(origin, (1, source.count("\n")), author)
        generated.append(corpus.CodeSnippet(gid, origin, s.kind, author, s.docstring, source))
    out = run / "generated.jsonl"
    corpus.write_snippets(generated, out)
    rec_out = run / "generation_records.jsonl"
    with open(rec_out, "w") as fh:
        for row in record_rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    log.info("generate: %d ok of %d requests", len(generated), len(records))
    _write_manifest(cfg, "generate", [src], [out, rec_out])


def _stage_metrics(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    hsrc = _require(run / "filtered.jsonl", "metrics", "filter")
    gsrc = _require(run / "generated.jsonl", "metrics", "generate")
    human = corpus.read_snippets(hsrc)
    generated = corpus.read_snippets(gsrc)
    try:
        rows = corpus.pair(human, generated)
    except corpus.NoPairs as exc:
        raise StageFailure(f"metrics: {exc}") from exc
    table, failures = metrics.metric_matrix([s for s, _ in rows])
    for sid, reason in failures:
        log.warning("metrics: dropped %s (%s)", sid, reason)
    out = run / "metrics.csv"
    table.to_csv(out)
    log.info("metrics: %d rows, %d failures", len(table.ids), len(failures))
    _write_manifest(cfg, "metrics", [hsrc, gsrc], [out])


def _split_by_label(table: metrics.MetricTable) -> tuple[np.ndarray, np.ndarray]:
    x = table.matrix()
    labels = np.asarray(table.labels)
    return x[labels == 0], x[labels == 1]


def _stage_compare(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    src = _require(run / "metrics.csv", "compare", "metrics")
    table = metrics.MetricTable.from_csv(src)
    human, llm = _split_by_label(table)
    if human.shape[0] == 0 or llm.shape[0] == 0:
        raise StageFailure("compare: need both human and generated rows")
    comps = stats.compare_features(human, llm, stats.ComparisonConfig(alpha=cfg.alpha))
    csv_out = run / "effects.csv"
    txt_out = run / "effects.txt"
    stats.write_effects_csv(comps, csv_out)
    txt_out.write_text(stats.render_effects_text(comps), encoding="utf-8")
    significant = sum(1 for c in comps if c.significant)
    log.info("compare: %d of %d features significant", significant, len(comps))
    _write_manifest(cfg, "compare", [src], [csv_out, txt_out])


def _stage_prune(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    msrc = _require(run / "metrics.csv", "prune", "metrics")
    esrc = _require(run / "effects.csv", "prune", "compare")
    table = metrics.MetricTable.from_csv(msrc)
    comps = stats.read_effects_csv(esrc)
    report = models.prune_features(table.matrix(), comps)
    out = run / "prune.json"
    _write_json(
        out,
        {
            "kept": report.kept,
            "dropped_negligible": report.dropped_negligible,
            "dropped_correlated": [
                {"dropped": dropped, "against": against, "rho": rho}
                for dropped, against, rho in report.dropped_correlated
            ],
        },
    )
    log.info("prune: kept %d of %d features", len(report.kept), len(comps))
    _write_manifest(cfg, "prune", [msrc, esrc], [out])


def _load_training_data(run: Path, stage: str) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Metric rows restricted to the pruned feature set."""
    msrc = _require(run / "metrics.csv", stage, "metrics")
    psrc = _require(run / "prune.json", stage, "prune")
    table = metrics.MetricTable.from_csv(msrc)
    kept = json.loads(psrc.read_text(encoding="utf-8"))["kept"]
    if not kept:
        raise StageFailure(f"{stage}: no features survived pruning")
    idx = [metrics.FEATURE_NAMES.index(name) for name in kept]
    x = table.matrix()[:, idx]
    y = np.asarray(table.labels, dtype=np.int64)
    return x, y, kept


def _stage_train(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    x, y, kept = _load_training_data(run, "train")
    mdir = run / "models"
    mdir.mkdir(parents=True, exist_ok=True)
    outs = []
    for kind in cfg.model_kinds:
        try:
            model = models.train(kind, x, y, seed=cfg.seed, feature_names=kept)
        except (ValueError, models.DegenerateLabels, models.TooFewSamples) as exc:
            raise StageFailure(f"train: {kind}: {exc}") from exc
        path = mdir / f"{kind}.json"
        models.save_model(model, path)
        outs.append(path)
        log.info("train: %s fitted on %d rows x %d features", kind, len(y), len(kept))
    _write_manifest(cfg, "train", [run / "metrics.csv", run / "prune.json"], outs)


def _stage_evaluate(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    x, y, kept = _load_training_data(run, "evaluate")
    edir = run / "eval"
    edir.mkdir(parents=True, exist_ok=True)
    outs = []
    for kind in cfg.model_kinds:
        try:
            report = models.evaluate_cv(
                kind, x, y, k=cfg.k_folds, seed=cfg.seed, feature_names=kept
            )
        except (ValueError, models.DegenerateLabels, models.TooFewSamples) as exc:
            raise StageFailure(f"evaluate: {kind}: {exc}") from exc
        json_out = edir / f"{kind}.json"
        csv_out = edir / f"{kind}.csv"
        models.write_eval_json(report, json_out)
        models.write_eval_csv(report, csv_out)
        outs.extend([json_out, csv_out])
        log.info("evaluate: %s mean AUC %.4f", kind, report.aggregate["auc_roc"])
    _write_manifest(cfg, "evaluate", [run / "metrics.csv", run / "prune.json"], outs)


def _stage_explain(cfg: RunConfig) -> None:
    run = _run_dir(cfg)
    msrc = _require(run / "metrics.csv", "explain", "metrics")
    mpath = _require(run / "models" / f"{cfg.explain_model}.json", "explain", "train")
    model = models.load_model(mpath)
    table = metrics.MetricTable.from_csv(msrc)
    idx = [metrics.FEATURE_NAMES.index(name) for name in model.feature_names]
    x = table.matrix()[:, idx]
    n = x.shape[0]
    rng = np.random.default_rng(cfg.seed)
    chosen = np.sort(rng.choice(n, size=min(cfg.background_size, n), replace=False))
    background = x[chosen]
    count = min(cfg.explain_count, n)
    sets = []
    for i in range(count):
        sets.append(
            explain.shapley(
                model,
                x[i],
                background,
                n_samples=cfg.shap_samples,
                seed=cfg.seed + i,
                instance_id=table.ids[i],
            )
        )
    adir = run / "explain"
    adir.mkdir(parents=True, exist_ok=True)
    att_out = adir / "attributions.jsonl"
    with open(att_out, "w") as fh:
        for s in sets:
            fh.write(json.dumps(explain.attribution_to_dict(s), sort_keys=True) + "\n")
    violin_out = adir / "violin.csv"
    gi = explain.emit_violin_data(sets, violin_out)
    svg_out = adir / "importance.svg"
    explain.emit_importance_svg(gi, svg_out)
    json_out = adir / "importance.json"
    explain.write_importance_json(gi, json_out)
    log.info("explain: %d instances, %d background rows", count, background.shape[0])
    _write_manifest(
        cfg, "explain", [msrc, mpath], [att_out, violin_out, svg_out, json_out]
    )


def _format_model_table(evals: dict[str, dict]) -> list[str]:
    header = f"{'model':<20} {'accuracy':>9} {'precision':>10} {'recall':>8} {'f1':>8} {'auc':>8}"
    lines = [header, "-" * len(header)]
    for kind in sorted(evals):
        agg = evals[kind]["aggregate"]
        lines.append(
            f"{kind:<20} {agg['accuracy']:>9.4f} {agg['precision']:>10.4f}"
            f" {agg['recall']:>8.4f} {agg['f1']:>8.4f} {agg['auc_roc']:>8.4f}"
        )
    return lines


def _render_report_text(
    cfg: RunConfig,
    comps: list,
    prune_payload: dict,
    evals: dict[str, dict],
    importance: dict | None,
) -> str:
    lines = ["Detection pipeline report", "=" * 25, ""]
    lines.append(
        f"granularity={cfg.granularity} alpha={cfg.alpha} k_folds={cfg.k_folds} seed={cfg.seed}"
    )
    lines.extend(["", "Effect sizes", "------------"])
    lines.append(stats.render_effects_text(comps).rstrip("\n"))
    kept = prune_payload["kept"]
    lines.extend(["", f"Kept features ({len(kept)} of {len(comps)})", "-" * 24])
    for name in kept:
        lines.append(f"  {name}")
    dropped_neg = prune_payload["dropped_negligible"]
    lines.append(f"Dropped as negligible: {len(dropped_neg)}")
    for entry in prune_payload["dropped_correlated"]:
        lines.append(
            f"Dropped as correlated: {entry['dropped']}"
            f" (vs {entry['against']}, rho={entry['rho']:.3f})"
        )
    lines.extend(["", "Model performance (CV means)", "-" * 28])
    lines.extend(_format_model_table(evals))
    lines.extend(["", "Top feature importance", "-" * 22])
    if importance is None:
        lines.append("explain stage not run; no importance data")
    else:
        ranked = sorted(importance.items(), key=lambda kv: kv[1]["rank"])[:5]
        for name, info in ranked:
            rho = info["direction"]
            direction = f"{rho:+.3f}" if rho is not None else "n/a"
            lines.append(
                f"  {info['rank']}. {name:<28} mean|phi|={info['mean_abs_phi']:.6f}"
                f" value-phi rho={direction}"
            )
    return "\n".join(lines) + "\n"


def _stage_report(cfg: RunConfig) -> None:
    run = Path(cfg.run_dir)
    if not run.is_dir() or not any(run.iterdir()):
        raise IncompleteRun("report: run directory is empty")
    inputs = []
    effects_csv = run / "effects.csv"
    prune_json = run / "prune.json"
    for path, producer in ((effects_csv, "compare"), (prune_json, "prune")):
        if not path.exists():
            raise IncompleteRun(f"report: missing {path.name}; run '{producer}' first")
        inputs.append(path)
    evals: dict[str, dict] = {}
    for kind in cfg.model_kinds:
        path = run / "eval" / f"{kind}.json"
        if not path.exists():
            raise IncompleteRun(f"report: missing eval/{kind}.json; run 'evaluate' first")
        evals[kind] = json.loads(path.read_text(encoding="utf-8"))
        inputs.append(path)
    comps = stats.read_effects_csv(effects_csv)
    prune_payload = json.loads(prune_json.read_text(encoding="utf-8"))
    imp_path = run / "explain" / "importance.json"
    importance = None
    if imp_path.exists():
        importance = json.loads(imp_path.read_text(encoding="utf-8"))
        inputs.append(imp_path)
    else:
        log.info("report: no importance data, explain stage not run")
    txt_out = run / "report.txt"
    txt_out.write_text(
        _render_report_text(cfg, comps, prune_payload, evals, importance), encoding="utf-8"
    )
    json_out = run / "report.json"
    _write_json(
        json_out,
        {
            "granularity": cfg.granularity,
            "alpha": cfg.alpha,
            "k_folds": cfg.k_folds,
            "seed": cfg.seed,
            "effects": [dataclasses.asdict(c) for c in comps],
            "kept_features": prune_payload["kept"],
            "dropped_negligible": prune_payload["dropped_negligible"],
            "dropped_correlated": prune_payload["dropped_correlated"],
            "models": {kind: evals[kind]["aggregate"] for kind in evals},
            "importance": importance,
        },
    )
    _write_manifest(cfg, "report", inputs, [txt_out, json_out])


_STAGE_FUNCS = {
    "ingest": _stage_ingest,
    "extract-classes": _stage_extract_classes,
    "filter": _stage_filter,
    "generate": _stage_generate,
    "metrics": _stage_metrics,
    "compare": _stage_compare,
    "prune": _stage_prune,
    "train": _stage_train,
    "evaluate": _stage_evaluate,
    "explain": _stage_explain,
    "report": _stage_report,
}


def run_stage(name: str, cfg: RunConfig) -> None:
    """Run one pipeline stage against a resolved config."""
    if name not in _STAGE_FUNCS:
        raise ConfigError(f"unknown stage {name!r}; choose from {', '.join(STAGES)}")
    _STAGE_FUNCS[name](cfg)


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="detect", description="Machine-generated code detection pipeline.")
    parser.add_argument("stage", choices=STAGES, help="pipeline stage to run")
    parser.add_argument("--config", required=True, help="path to the run config JSON")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--alpha", type=float, help="override the significance level")
    parser.add_argument("--ratio", type=float, help="override the comment-to-code threshold")
    parser.add_argument("--k", type=int, help="override the fold count")
    parser.add_argument("--models", help="comma-separated model kinds to use")
    parser.add_argument("--sample", type=int, help="override the subsample size")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = resolve_config(args.config, args)
    except ConfigError as exc:
        print(f"detect: {exc}", file=sys.stderr)
        return 1
    try:
        run_stage(args.stage, cfg)
    except ConfigError as exc:
        print(f"detect: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        if args.verbose:
            log.exception("stage %s failed", args.stage)
        print(f"detect: {args.stage}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
