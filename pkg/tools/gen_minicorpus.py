"""Build the bundled mini corpus, its replay cache, and golden hashes.

Writes 200 human-styled functions plus a handful of classes under
tests/data/mini_corpus, one cached completion per function docstring
under tests/data/mini_cache, and pins the byte hashes of a full
pipeline run in tests/data/golden_hashes.json.  Everything is seeded,
so rerunning this script reproduces identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from stylodetect import cli, corpus, llmgen  # noqa: E402

MODEL_ID = "mini-llm"
CACHE_STAMP = "2025-06-01T00:00:00Z"
GOLDEN_CONFIG = {
    "granularity": "function",
    "seed": 7,
    "alpha": 0.01,
    "ratio_threshold": 0.0,
    "k_folds": 10,
    "model_kinds": list(cli.models.MODEL_KINDS),
    "sample": 0,
    "model_id": MODEL_ID,
    "concurrency": 4,
    "live": False,
    "shap_samples": 200,
    "background_size": 40,
    "explain_count": 10,
    "explain_model": "gradient-boosting",
}

VERBS = [
    "Compute", "Collect", "Merge", "Validate", "Normalize", "Split",
    "Render", "Count", "Filter", "Resolve", "Encode", "Summarize",
]
NOUNS = [
    "invoice totals", "log records", "user sessions", "retry delays",
    "config overrides", "cache entries", "path segments", "queue depths",
    "word frequencies", "batch windows", "header fields", "checksum digests",
]
TAILS = [
    "for the daily rollup",
    "before the batch is flushed",
    "across all shards",
    "with stale entries skipped",
]


def _docstrings(rng: np.random.Generator, count: int) -> list[str]:
    combos = [f"{v} the {n} {t}." for v in VERBS for n in NOUNS for t in TAILS]
    idx = rng.permutation(len(combos))[:count]
    return [combos[i] for i in sorted(idx)]


def _human_function(rng: np.random.Generator, name: str, doc: str) -> str:
    """One human-styled function: comments, blank lines, varied shape."""
    a, b = f"{name.split('_')[0]}_items", "limit"
    lines = [f"def {name}({a}, {b}=0):"]
    if rng.random() < 0.3:
        lines += ['    """' + doc, "", f"    Stops early once {b} is hit.", '    """']
    else:
        lines.append(f'    """{doc}"""')
    style = int(rng.integers(0, 4))
    commented = rng.random() > 0.15
    if style == 0:
        if commented:
            lines.append("    # running total, shortcuts ignored")
        lines.append("    total = 0")
        lines.append(f"    for item in {a}:")
        if rng.random() < 0.5:
            lines.append("        # guard against sentinel rows")
            lines.append("        if item is None:")
            lines.append("            continue")
        lines.append("        total += item")
        if rng.random() < 0.6:
            lines.append("")
        lines.append(f"    if {b} and total > {b}:")
        lines.append(f"        return {b}")
        lines.append("    return total")
    elif style == 1:
        lines.append("    seen = set()")
        if commented:
            lines.append("    # first pass keeps insertion order")
        lines.append("    kept = []")
        lines.append(f"    for item in {a}:")
        lines.append("        if item in seen:")
        lines.append("            continue")
        lines.append("        seen.add(item)")
        lines.append("        kept.append(item)")
        if rng.random() < 0.5:
            lines.append("")
            lines.append("    # trim to the requested window")
        lines.append(f"    return kept[:{b}] if {b} else kept")
    elif style == 2:
        lines.append(f"    if not {a}:")
        if commented:
            lines.append("        # empty input means an empty rollup")
        lines.append("        return {}")
        lines.append("")
        lines.append("    counts = {}")
        lines.append(f"    for item in {a}:")
        lines.append("        counts[item] = counts.get(item, 0) + 1")
        if commented and rng.random() < 0.5:
            lines.append("    # callers rely on plain dicts here")
        lines.append("    return counts")
    else:
        if commented:
            lines.append("    # walk pairs, newest first")
        lines.append(f"    out = list({a})")
        lines.append("    out.reverse()")
        lines.append(f"    while {b} and len(out) > {b}:")
        lines.append("        out.pop()")
        if rng.random() < 0.4:
            lines.append("")
            lines.append("    # a copy keeps the input intact")
        lines.append("    return out")
    return "\n".join(lines) + "\n"


def _machine_response(rng: np.random.Generator, doc: str) -> str:
    """One machine-styled reply: fenced, uniform, comment-free."""
    words = [w.strip(".,").lower() for w in doc.split()[:3]]
    fn = "_".join(w for w in words if w.isalpha()) or "process_items"
    body = [
        f"def {fn}(items, limit=0):",
        f'    """{doc}"""',
        "    result = []",
        "    for item in items:",
        "        if item is None:",
        "            continue",
        "        result.append(item)",
    ]
    variant = int(rng.integers(0, 3))
    if variant == 0:
        body += ["    if limit and len(result) > limit:",
                 "        return result[:limit]",
                 "    return result"]
    elif variant == 1:
        body += ["    total = sum(1 for _ in result)",
                 "    if limit and total > limit:",
                 "        return result[:limit]",
                 "    return result"]
    else:
        body += ["    result.sort()",
                 "    if limit:",
                 "        return result[:limit]",
                 "    return result"]
    code = "\n".join(body)
    if rng.random() < 0.85:
        return f"```python\n{code}\n```"
    return code


CLASS_BLOCKS = [
    '''class TallyBoard:
    """Tracks per-key counters for the rollup views."""

    def __init__(self):
        # counters stay plain ints
        self.counts = {}

    def bump(self, key):
        self.counts[key] = self.counts.get(key, 0) + 1
''',
    '''class RetryBudget:
    """Caps how many retries a worker may spend."""

    def __init__(self, limit):
        self.limit = limit
        self.spent = 0

    def allow(self):
        # spend one slot if any remain
        if self.spent >= self.limit:
            return False
        self.spent += 1
        return True
''',
    '''class WindowClock:
    """Rounds timestamps down to batch windows."""

    def __init__(self, width):
        self.width = width

    def floor(self, stamp):
        return stamp - stamp % self.width
''',
    '''class PathCursor:
    """Steps through path segments one at a time."""

    def __init__(self, parts):
        self.parts = list(parts)
        self.pos = 0

    def step(self):
        # consume the next segment, if any
        if self.pos >= len(self.parts):
            return None
        part = self.parts[self.pos]
        self.pos += 1
        return part
''',
    '''class HeaderBag:
    """Case-insensitive lookup over header fields."""

    def __init__(self):
        self.fields = {}

    def put(self, name, value):
        self.fields[name.lower()] = value

    def get(self, name):
        return self.fields.get(name.lower())
''',
    '''class DigestSink:
    """Feeds chunks into a rolling checksum."""

    def __init__(self):
        self.parts = []

    def push(self, chunk):
        # chunks are joined lazily at the end
        self.parts.append(chunk)

    def value(self):
        return "".join(self.parts)
''',
    '''class QueueProbe:
    """Samples queue depths on a fixed cadence."""

    def __init__(self, cadence):
        self.cadence = cadence
        self.samples = []

    def record(self, depth):
        self.samples.append(depth)
''',
    '''class SessionLedger:
    """Remembers which user sessions stayed active."""

    def __init__(self):
        self.active = set()

    def open(self, sid):
        self.active.add(sid)

    def close(self, sid):
        self.active.discard(sid)
''',
]

INHERIT_BLOCKS = '''\
class BaseEmitter:
    """Common plumbing for the emitters below."""

    def emit(self, row):
        raise NotImplementedError


class JsonEmitter(BaseEmitter):
    """Writes rows as JSON lines."""

    def emit(self, row):
        return str(row)


class CsvEmitter(BaseEmitter):
    """Writes rows as comma-joined text."""

    def emit(self, row):
        return ",".join(str(v) for v in row)


class MetricsBridge(statsd.Client):
    """Pushes counters at an external aggregator."""

    def push(self, name, value):
        self.incr(name, value)
'''


def write_corpus(root: Path, rng: np.random.Generator, count: int = 200) -> None:
    if root.exists():
        shutil.rmtree(root)
    docs = _docstrings(rng, count)
    packages = ["rollup", "sessions", "transport", "storage"]
    per_file = 4
    functions = []
    for i, doc in enumerate(docs):
        name = f"handle_case_{i:03d}"
        functions.append(_human_function(rng, name, doc))
    file_index = 0
    for start in range(0, len(functions), per_file):
        pkg = packages[file_index % len(packages)]
        mod_dir = root / pkg
        mod_dir.mkdir(parents=True, exist_ok=True)
        chunk = functions[start : start + per_file]
        (mod_dir / f"mod_{file_index:02d}.py").write_text(
            "\n\n".join(chunk), encoding="utf-8"
        )
        file_index += 1
    for i, block in enumerate(CLASS_BLOCKS):
        pkg = packages[i % len(packages)]
        (root / pkg / f"types_{i:02d}.py").write_text(block, encoding="utf-8")
    (root / "transport" / "emitters.py").write_text(INHERIT_BLOCKS, encoding="utf-8")


def write_cache(corpus_dir: Path, cache_dir: Path, rng: np.random.Generator) -> int:
    if cache_dir.exists():
        shutil.rmtree(cache_dir)
    cache_dir.mkdir(parents=True)
    snippets = [s for s in corpus.ingest(corpus_dir) if s.kind == "function"]
    kept = corpus.filter_by_ratio(snippets, GOLDEN_CONFIG["ratio_threshold"])
    for s in kept:
        prompt = llmgen.build_prompt(s.kind, s.docstring)
        digest = llmgen.request_hash(MODEL_ID, prompt)
        raw = _machine_response(rng, s.docstring)
        code, status = llmgen.classify_response(raw)
        if status != "ok":
            raise RuntimeError(f"template produced a {status} response for {s.id}")
        record = llmgen.GenerationRecord(digest, raw, code, status, CACHE_STAMP)
        llmgen._write_cache(cache_dir / f"{digest}.json", record)
    return len(kept)


def run_golden(data_dir: Path) -> tuple[dict, str]:
    """Run the full pipeline on the bundled data; return hashes and report."""
    build = Path(tempfile.mkdtemp(prefix="golden"))
    cfg = dict(GOLDEN_CONFIG)
    cfg["corpus_dir"] = str(data_dir / "mini_corpus")
    cfg["cache_dir"] = str(data_dir / "mini_cache")
    cfg["run_dir"] = str(build / "run")
    cfg_path = build / "config.json"
    cfg_path.write_text(json.dumps(cfg, indent=2), encoding="utf-8")
    for stage in cli.STAGES:
        rc = cli.main([stage, "--config", str(cfg_path)])
        if rc != 0:
            raise RuntimeError(f"golden stage {stage} exited {rc}")
    run = build / "run"
    hashes = {}
    for path in sorted(run.rglob("*")):
        if path.is_file():
            rel = path.relative_to(run).as_posix()
            hashes[rel] = hashlib.sha256(path.read_bytes()).hexdigest()
    report = (run / "report.txt").read_text(encoding="utf-8")
    shutil.rmtree(build)
    return hashes, report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--data-dir", default=str(REPO / "tests" / "data"))
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--skip-golden", action="store_true",
                        help="regenerate corpus and cache only")
    args = parser.parse_args(argv)
    data_dir = Path(args.data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    write_corpus(data_dir / "mini_corpus", rng)
    cached = write_cache(data_dir / "mini_corpus", data_dir / "mini_cache", rng)
    print(f"corpus written, {cached} completions cached")
    if not args.skip_golden:
        hashes, report = run_golden(data_dir)
        (data_dir / "golden_hashes.json").write_text(
            json.dumps(hashes, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        (data_dir / "golden_report.txt").write_text(report, encoding="utf-8")
        print(f"golden run pinned, {len(hashes)} artifacts hashed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
