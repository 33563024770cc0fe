"""The 22 software metrics measured on one snippet.

Seventeen stylometric counts (lines, statements, comments, entities) and
five complexity numbers (nesting, cyclomatic family).  Aggregate fields
(`avg_*`) are means over every def in the snippet, nested ones included;
a snippet without defs reports 0 for them.  Cyclomatic complexity is
1 + decision points, computed once for the whole snippet and once per
def, where a nested def's decision points never count toward its parent.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable

import numpy as np

from . import pyparse

#: Display names in canonical order; every table, report, and model
#: artifact orders features this way.
FEATURE_NAMES = [
    "Average Lines",
    "Average Blank Lines",
    "Average Code Lines",
    "Average Comment Lines",
    "Classes",
    "Executable Units",
    "Functions",
    "Lines",
    "Blank Lines",
    "Code Lines",
    "Declarative Code Lines",
    "Executable Code Lines",
    "Comment Lines",
    "Statements",
    "Declarative Statements",
    "Executable Statements",
    "Comment to Code Ratio",
    "Max Nesting",
    "Cyclomatic Complexity",
    "Max Cyclomatic Complexity",
    "Average Cyclomatic Complexity",
    "Sum Cyclomatic Complexity",
]

_FIELD_ORDER = [
    "avg_lines",
    "avg_blank_lines",
    "avg_code_lines",
    "avg_comment_lines",
    "classes",
    "executable_units",
    "functions",
    "lines",
    "blank_lines",
    "code_lines",
    "declarative_code_lines",
    "executable_code_lines",
    "comment_lines",
    "statements",
    "declarative_statements",
    "executable_statements",
    "comment_to_code_ratio",
    "max_nesting",
    "cyclomatic",
    "max_cyclomatic",
    "avg_cyclomatic",
    "sum_cyclomatic",
]

FIELD_FOR_NAME = dict(zip(FEATURE_NAMES, _FIELD_ORDER))
NAME_FOR_FIELD = dict(zip(_FIELD_ORDER, FEATURE_NAMES))


@dataclass
class MetricVector:
    """All 22 features of one snippet."""

    avg_lines: float
    avg_blank_lines: float
    avg_code_lines: float
    avg_comment_lines: float
    classes: int
    executable_units: int
    functions: int
    lines: int
    blank_lines: int
    code_lines: int
    declarative_code_lines: int
    executable_code_lines: int
    comment_lines: int
    statements: int
    declarative_statements: int
    executable_statements: int
    comment_to_code_ratio: float
    max_nesting: int
    cyclomatic: int
    max_cyclomatic: int
    avg_cyclomatic: float
    sum_cyclomatic: int

    def as_array(self) -> np.ndarray:
        return np.array([float(getattr(self, f)) for f in _FIELD_ORDER])

    def as_dict(self) -> dict:
        return {NAME_FOR_FIELD[f]: getattr(self, f) for f in _FIELD_ORDER}


def _entity_list(roots: list[pyparse.Entity]) -> list[pyparse.Entity]:
    out = []
    stack = list(reversed(roots))
    while stack:
        e = stack.pop()
        out.append(e)
        stack.extend(reversed(e.children))
    return out


def compute_metrics(source: str) -> MetricVector:
    """Measure one snippet; raises ParseFailure on damaged input."""
    analysis = pyparse.analyze(source)
    records = analysis.records
    stmts = analysis.statements

    lines = len(records)
    blank = sum(1 for r in records if r.is_blank)
    code = sum(1 for r in records if r.has_code)
    comment = sum(1 for r in records if r.has_comment)

    decl_stmts = sum(1 for s in stmts if s.is_declarative)
    exec_stmts = len(stmts) - decl_stmts

    # Physical lines owned by statements; the first statement starting on
    # a line owns it, so a `decl; exec` line counts once, as declarative.
    owner: dict[int, pyparse.Statement] = {}
    for s in stmts:
        if s.is_docstring:
            continue
        for row in range(s.span[0], s.span[1] + 1):
            owner.setdefault(row, s)
    decl_code = sum(1 for s in owner.values() if s.is_declarative)
    exec_code = len(owner) - decl_code

    entities = _entity_list(analysis.entities)
    defs = [e for e in entities if e.kind == "function"]
    n_classes = sum(1 for e in entities if e.kind == "class")

    # Innermost containment by span start: spans nest, so among entities
    # whose span covers a row, the latest-starting one is the innermost.
    def innermost(row: int, pool: list[pyparse.Entity]) -> pyparse.Entity | None:
        best = None
        for e in pool:
            if e.span[0] <= row <= e.span[1]:
                if best is None or e.span[0] > best.span[0]:
                    best = e
        return best

    per_def_dp: dict[int, int] = {id(d): 0 for d in defs}
    for s in stmts:
        home = innermost(s.span[0], defs)
        if home is not None:
            per_def_dp[id(home)] += s.decision_points

    body_exec: dict[int, list[pyparse.Statement]] = {id(e): [] for e in entities}
    for s in stmts:
        if s.is_declarative or s.is_docstring:
            continue
        home = innermost(s.span[0], entities)
        if home is not None:
            body_exec[id(home)].append(s)

    executable_units = 0
    for d in defs:
        body = body_exec[id(d)]
        if not body:
            continue
        if len(body) == 1 and body[0].is_pass:
            continue
        executable_units += 1

    per_def_cc = [1 + per_def_dp[id(d)] for d in defs]
    total_dp = sum(s.decision_points for s in stmts)

    if defs:
        span_stats = []
        for d in defs:
            lo, hi = d.span
            rs = records[lo - 1 : hi]
            span_stats.append(
                (
                    len(rs),
                    sum(1 for r in rs if r.is_blank),
                    sum(1 for r in rs if r.has_code),
                    sum(1 for r in rs if r.has_comment),
                )
            )
        n = len(defs)
        avg_lines = sum(s[0] for s in span_stats) / n
        avg_blank = sum(s[1] for s in span_stats) / n
        avg_code = sum(s[2] for s in span_stats) / n
        avg_comment = sum(s[3] for s in span_stats) / n
        max_cc = max(per_def_cc)
        sum_cc = sum(per_def_cc)
        avg_cc = sum_cc / n
    else:
        avg_lines = avg_blank = avg_code = avg_comment = 0.0
        max_cc = sum_cc = 0
        avg_cc = 0.0

    return MetricVector(
        avg_lines=avg_lines,
        avg_blank_lines=avg_blank,
        avg_code_lines=avg_code,
        avg_comment_lines=avg_comment,
        classes=n_classes,
        executable_units=executable_units,
        functions=len(defs),
        lines=lines,
        blank_lines=blank,
        code_lines=code,
        declarative_code_lines=decl_code,
        executable_code_lines=exec_code,
        comment_lines=comment,
        statements=len(stmts),
        declarative_statements=decl_stmts,
        executable_statements=exec_stmts,
        comment_to_code_ratio=comment / code if code else 0.0,
        max_nesting=pyparse.max_nesting(stmts),
        cyclomatic=1 + total_dp,
        max_cyclomatic=max_cc,
        avg_cyclomatic=avg_cc,
        sum_cyclomatic=sum_cc,
    )


def comment_to_code_ratio(source: str) -> float:
    """Comment lines over code lines; 0 when there is no code."""
    records = pyparse.classify_lines(source)
    code = sum(1 for r in records if r.has_code)
    comment = sum(1 for r in records if r.has_comment)
    return comment / code if code else 0.0


@dataclass
class MetricTable:
    """Metric vectors for a corpus, aligned with ids and labels."""

    ids: list[str]
    labels: list[int]
    vectors: list[MetricVector]

    @property
    def feature_names(self) -> list[str]:
        return list(FEATURE_NAMES)

    def matrix(self) -> np.ndarray:
        if not self.vectors:
            return np.zeros((0, len(FEATURE_NAMES)))
        return np.stack([v.as_array() for v in self.vectors])

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id", "label"] + FEATURE_NAMES)
            for sid, label, vec in zip(self.ids, self.labels, self.vectors):
                row = [sid, label]
                for field_name in _FIELD_ORDER:
                    row.append(format_number(getattr(vec, field_name)))
                writer.writerow(row)

    def to_jsonl(self, path: str | Path) -> None:
        with open(path, "w") as fh:
            for sid, label, vec in zip(self.ids, self.labels, self.vectors):
                record = {"id": sid, "label": label}
                record.update(vec.as_dict())
                fh.write(json.dumps(record) + "\n")

    @classmethod
    def from_csv(cls, path: str | Path) -> "MetricTable":
        ids: list[str] = []
        labels: list[int] = []
        vectors: list[MetricVector] = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if header != ["id", "label"] + FEATURE_NAMES:
                raise ValueError(f"unexpected metric table header in {path}")
            specs = {f.name: f.type for f in fields(MetricVector)}
            for row in reader:
                ids.append(row[0])
                labels.append(int(row[1]))
                kwargs = {}
                for field_name, raw in zip(_FIELD_ORDER, row[2:]):
                    kwargs[field_name] = (
                        int(raw) if specs[field_name] == "int" else float(raw)
                    )
                vectors.append(MetricVector(**kwargs))
        return cls(ids=ids, labels=labels, vectors=vectors)


def format_number(value) -> str:
    """Ints stay exact; reals get at most 9 significant digits."""
    if isinstance(value, int):
        return str(value)
    return format(value, ".9g")


def metric_matrix(snippets: Iterable) -> tuple[MetricTable, list[tuple[str, str]]]:
    """Measure a corpus of snippets.

    Returns the table of successfully measured snippets plus a failure
    report of (snippet id, error message) for the ones that would not
    parse.  Snippets need .id, .label, and .source attributes.
    """
    ids: list[str] = []
    labels: list[int] = []
    vectors: list[MetricVector] = []
    failures: list[tuple[str, str]] = []
    for snippet in snippets:
        try:
            vec = compute_metrics(snippet.source)
        except pyparse.ParseFailure as exc:
            failures.append((snippet.id, f"{type(exc).__name__}: {exc}"))
            continue
        ids.append(snippet.id)
        labels.append(snippet.label)
        vectors.append(vec)
    return MetricTable(ids=ids, labels=labels, vectors=vectors), failures
