"""Corpus handling: snippet ingestion, standalone-class extraction,
ratio filtering, pairing, and sampling.

A corpus is a directory or archive of Python files.  Every top-level
documented function becomes a function snippet; every top-level class
becomes a class candidate.  Class candidates are narrowed to standalone
classes (no bases, no subclasses in the corpus) via a textual
inheritance graph.
"""

from __future__ import annotations

import ast
import hashlib
import io
import json
import logging
import tarfile
import tokenize
import zipfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import pyparse
from .metrics import comment_to_code_ratio

log = logging.getLogger(__name__)

GENERATED_ORIGIN_PREFIX = "llmgen:"


class IoFailure(OSError):
    """Corpus input could not be read."""


class EmptyCorpus(ValueError):
    """Ingestion produced no snippets."""


class NoPairs(ValueError):
    """Pairing produced no matched human/generated rows."""


@dataclass
class CodeSnippet:
    id: str
    origin: str  # source path, or llmgen:<parent id> for generated code
    kind: str  # function | class
    author: str  # "human" or "llm:<model>"
    docstring: str
    source: str

    @property
    def label(self) -> int:
        return 0 if self.author == "human" else 1


@dataclass
class InheritanceGraph:
    nodes: dict  # class name -> defining origin, or None for external names
    edges: list  # (subclass name, base name as written)


def snippet_id(origin: str, span: tuple[int, int], author: str) -> str:
    """Deterministic 16-hex id from provenance."""
    text = f"{origin}|{span[0]}-{span[1]}|{author}"
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _iter_corpus_files(path: Path, manifest=None):
    """Yield (relative name, text) for UTF-8 Python files, sorted by name."""
    wanted = set(manifest) if manifest is not None else None

    def keep(name: str) -> bool:
        return name.endswith(".py") and (wanted is None or name in wanted)

    try:
        if path.is_dir():
            for p in sorted(path.rglob("*.py")):
                rel = p.relative_to(path).as_posix()
                if not keep(rel):
                    continue
                try:
                    yield rel, p.read_text(encoding="utf-8")
                except UnicodeDecodeError:
                    log.warning("skipping non-UTF-8 file %s", rel)
        elif zipfile.is_zipfile(path):
            with zipfile.ZipFile(path) as zf:
                for name in sorted(zf.namelist()):
                    if not keep(name):
                        continue
                    try:
                        yield name, zf.read(name).decode("utf-8")
                    except UnicodeDecodeError:
                        log.warning("skipping non-UTF-8 member %s", name)
        elif tarfile.is_tarfile(path):
            with tarfile.open(path) as tf:
                for member in sorted(tf.getmembers(), key=lambda m: m.name):
                    if not member.isfile() or not keep(member.name):
                        continue
                    data = tf.extractfile(member).read()
                    try:
                        yield member.name, data.decode("utf-8")
                    except UnicodeDecodeError:
                        log.warning("skipping non-UTF-8 member %s", member.name)
        else:
            raise IoFailure(f"{path} is neither a directory nor a known archive")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def _entity_docstring(analysis: pyparse.Analysis, entity: pyparse.Entity, lines) -> str | None:
    """Text of the entity's own docstring, or None."""
    first_child = min((c.span[0] for c in entity.children), default=entity.span[1] + 1)
    for stmt in analysis.statements:
        if not stmt.is_docstring:
            continue
        if entity.span[0] < stmt.span[0] <= entity.span[1] and stmt.span[0] < first_child:
            raw = "\n".join(lines[stmt.span[0] - 1 : stmt.span[1]])
            try:
                value = ast.literal_eval(raw.strip())
            except (ValueError, SyntaxError):
                return None
            return value if isinstance(value, str) else None
    return None


def ingest(path: str | Path, manifest=None) -> list[CodeSnippet]:
    """Collect top-level snippets from a directory or archive.

    Functions require a docstring (they seed generation prompts);
    classes are kept as candidates regardless.  Files that fail to lex
    are excluded and logged, never zero-filled.
    """
    path = Path(path)
    root_name = path.name
    for suffix in (".tar.gz", ".tgz", ".tar", ".zip"):
        if root_name.endswith(suffix):
            root_name = root_name[: -len(suffix)]
            break
    snippets: list[CodeSnippet] = []
    for rel, text in _iter_corpus_files(path, manifest):
        try:
            analysis = pyparse.analyze(text)
        except pyparse.ParseFailure as exc:
            log.warning("skipping unparseable file %s: %s", rel, exc)
            continue
        lines = text.splitlines()
        origin = f"{root_name}/{rel}"
        for entity in analysis.entities:
            doc = _entity_docstring(analysis, entity, lines)
            if entity.kind == "function" and not doc:
                continue
            source = "\n".join(lines[entity.span[0] - 1 : entity.span[1]]) + "\n"
            snippets.append(
                CodeSnippet(
                    id=snippet_id(origin, entity.span, "human"),
                    origin=origin,
                    kind=entity.kind,
                    author="human",
                    docstring=doc or "",
                    source=source,
                )
            )
    if not snippets:
        raise EmptyCorpus(f"no snippets found under {path}")
    return snippets


def _class_header(source: str) -> tuple[str | None, list[str]]:
    """(class name, textual base list) from a class snippet's header."""
    try:
        tokens = list(tokenize.generate_tokens(io.StringIO(source).readline))
    except (tokenize.TokenError, IndentationError, SyntaxError):
        return None, []
    name = None
    bases: list[str] = []
    depth = 0
    current: list[str] = []
    seen_class = False
    in_bases = False
    for tok in tokens:
        if tok.type == tokenize.NAME and tok.string == "class" and not seen_class:
            seen_class = True
            continue
        if seen_class and name is None:
            if tok.type == tokenize.NAME:
                name = tok.string
            continue
        if name is None:
            continue
        if tok.type == tokenize.OP:
            if tok.string == "(":
                depth += 1
                if depth == 1:
                    in_bases = True
                    continue
            elif tok.string == ")":
                depth -= 1
                if depth == 0:
                    if current:
                        bases.append("".join(current))
                    break
            elif tok.string == "," and depth == 1:
                if current:
                    bases.append("".join(current))
                current = []
                continue
            elif tok.string == ":" and depth == 0:
                break
        if in_bases and depth >= 1:
            current.append(tok.string.strip())
    cleaned = []
    for base in bases:
        if "=" in base or base.startswith("*") or base == "object" or not base:
            continue  # keyword args, unpacking, and the implicit root
        cleaned.append(base)
    return name, cleaned


def build_inheritance_graph(snippets: list[CodeSnippet]) -> InheritanceGraph:
    """Textual inheritance graph over the corpus's class snippets."""
    nodes: dict = {}
    edges: list = []
    pending: list[tuple[str, str]] = []
    for s in snippets:
        if s.kind != "class":
            continue
        name, bases = _class_header(s.source)
        if name is None:
            log.warning("could not read class header for snippet %s", s.id)
            continue
        if name in nodes and nodes[name] is not None:
            log.info("duplicate class name %s (keeping first at %s)", name, nodes[name])
        else:
            nodes[name] = s.origin
        for base in bases:
            pending.append((name, base))
    for sub, base in pending:
        if base not in nodes:
            nodes.setdefault(base, None)  # external name
        edges.append((sub, base))
    return InheritanceGraph(nodes=nodes, edges=edges)


def standalone_classes(graph: InheritanceGraph) -> list[str]:
    """Classes with no bases and no subclasses in the corpus.

    Any base disqualifies the subclass, whether the base resolves inside
    the corpus or not (unknown bases are treated as inheritance, the
    conservative reading).  Dotted bases match corpus classes by their
    final component.
    """
    has_base = {sub for sub, _ in graph.edges}
    has_subclass = set()
    internal = {n for n, loc in graph.nodes.items() if loc is not None}
    for _, base in graph.edges:
        tail = base.rsplit(".", 1)[-1]
        if base in internal:
            has_subclass.add(base)
        elif tail in internal:
            has_subclass.add(tail)
    return sorted(internal - has_base - has_subclass)


def class_name(snippet: CodeSnippet) -> str | None:
    """Declared name of a class snippet, None for functions or odd headers."""
    if snippet.kind != "class":
        return None
    name, _ = _class_header(snippet.source)
    return name


def filter_by_ratio(snippets: list[CodeSnippet], threshold: float = 0.4) -> list[CodeSnippet]:
    """Keep snippets with comment-to-code ratio at or above the threshold."""
    if threshold < 0:
        raise ValueError(f"threshold must be nonnegative, got {threshold}")
    return [s for s in snippets if comment_to_code_ratio(s.source) >= threshold]


def parent_id(generated: CodeSnippet) -> str | None:
    if generated.origin.startswith(GENERATED_ORIGIN_PREFIX):
        return generated.origin[len(GENERATED_ORIGIN_PREFIX) :]
    return None


def pair(human: list[CodeSnippet], generated: list[CodeSnippet]) -> list[tuple[CodeSnippet, int]]:
    """Balanced labeled dataset of matched (human, generated) snippets.

    Generated snippets point at their prompt source via origin
    "llmgen:<id>".  Humans without a surviving generation are dropped
    to keep the classes balanced; duplicate generations for one parent
    keep the last occurrence (generation emits records oldest first).
    """
    by_parent: dict = {}
    for g in generated:
        pid = parent_id(g)
        if pid is None:
            log.warning("generated snippet %s lacks a parent origin, skipped", g.id)
            continue
        if pid in by_parent:
            log.info("duplicate generation for %s, keeping the newest", pid)
        by_parent[pid] = g
    rows: list[tuple[CodeSnippet, int]] = []
    for h in human:
        g = by_parent.get(h.id)
        if g is None:
            continue
        rows.append((h, 0))
        rows.append((g, 1))
    if not rows:
        raise NoPairs("no matched human/generated snippet pairs")
    return rows


def reservoir_sample(snippets: list[CodeSnippet], n: int, seed: int) -> list[CodeSnippet]:
    """Uniform sample of n snippets, original order preserved."""
    if n >= len(snippets):
        return list(snippets)
    rng = np.random.default_rng(seed)
    chosen = list(range(n))
    for i in range(n, len(snippets)):
        j = int(rng.integers(0, i + 1))
        if j < n:
            chosen[j] = i
    return [snippets[i] for i in sorted(chosen)]


def write_snippets(snippets: list[CodeSnippet], path: str | Path) -> None:
    with open(path, "w") as fh:
        for s in snippets:
            fh.write(
                json.dumps(
                    {
                        "id": s.id,
                        "origin": s.origin,
                        "kind": s.kind,
                        "author": s.author,
                        "docstring": s.docstring,
                        "source": s.source,
                    }
                )
                + "\n"
            )


def read_snippets(path: str | Path) -> list[CodeSnippet]:
    out = []
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            doc = json.loads(line)
            out.append(
                CodeSnippet(
                    id=doc["id"],
                    origin=doc["origin"],
                    kind=doc["kind"],
                    author=doc["author"],
                    docstring=doc["docstring"],
                    source=doc["source"],
                )
            )
    return out
