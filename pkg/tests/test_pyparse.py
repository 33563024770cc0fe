"""Line classification, statement segmentation, and entity discovery."""

from __future__ import annotations

import numpy as np
import pytest

from stylodetect import pyparse


def _snippet(oracle_corpus, prefix: str) -> str:
    for name, source, _ in oracle_corpus:
        if name.startswith(prefix):
            return source
    raise KeyError(prefix)


def test_empty_source_has_no_records():
    assert pyparse.classify_lines("") == []


def test_code_and_comment_share_a_line():
    records = pyparse.classify_lines("x = 1  # note\n")
    assert len(records) == 1
    rec = records[0]
    assert rec.has_code and rec.has_comment
    assert not rec.is_blank and not rec.is_docstring


def test_timestamp_listing_line_classes(oracle_corpus):
    source = _snippet(oracle_corpus, "01_")
    records = pyparse.classify_lines(source)
    assert len(records) == 13
    comment_rows = [r.index for r in records if r.has_comment]
    assert comment_rows == [2, 3, 4, 5, 6, 7]
    assert sum(r.has_code for r in records) == 7
    assert sum(r.is_blank for r in records) == 0


def test_hash_inside_string_is_not_a_comment():
    records = pyparse.classify_lines('x = "#"\n')
    assert records[0].has_code
    assert not records[0].has_comment


def test_indent_expands_tabs_to_eight():
    records = pyparse.classify_lines("if x:\n\ty = 1\n  \tz = 2\n")
    assert [r.indent for r in records] == [0, 8, 8]


def test_semicolon_splits_statements():
    stmts = pyparse.segment_statements("a = 1; b = 2\n")
    assert len(stmts) == 2
    assert all(s.kind == pyparse.OTHER_SIMPLE for s in stmts)


def test_def_header_and_pass_kinds():
    stmts = pyparse.segment_statements("def f():\n    pass\n")
    assert len(stmts) == 2
    assert stmts[0].kind == pyparse.DEF_HEADER and stmts[0].is_declarative
    assert stmts[1].is_pass and not stmts[1].is_declarative


def test_timestamp_listing_statements(oracle_corpus):
    # def header, docstring, and one statement per remaining code row.
    source = _snippet(oracle_corpus, "01_")
    stmts = pyparse.segment_statements(source)
    assert len(stmts) == 8
    assert sum(s.is_declarative for s in stmts) == 1
    assert sum(s.is_docstring for s in stmts) == 1


def test_single_def_entities():
    roots = pyparse.extract_entities("def f():\n    return 1\n")
    assert len(roots) == 1
    root = roots[0]
    assert root.kind == "function" and root.name == "f"
    assert root.unit_spans == [(1, 2)]


def test_notification_class_children(oracle_corpus):
    source = _snippet(oracle_corpus, "02_")
    roots = pyparse.extract_entities(source)
    assert len(roots) == 1
    root = roots[0]
    assert root.kind == "class" and root.name == "Notification"
    assert [c.name for c in root.children] == [
        "__init__",
        "asdict",
        "activate",
        "__repr__",
    ]
    assert all(c.kind == "function" for c in root.children)


def test_nested_def_unit_spans():
    source = (
        "def outer():\n"
        "    x = 1\n"
        "    def inner():\n"
        "        return x\n"
        "    return inner\n"
    )
    roots = pyparse.extract_entities(source)
    assert len(roots) == 1
    root = roots[0]
    assert len(root.children) == 1
    assert root.unit_spans == [(1, 5), (3, 4)]


def test_decision_point_examples(oracle_corpus):
    flat = pyparse.analyze("a = 1\nb = a + 2\n")
    assert pyparse.decision_points(flat.statements, (1, 2)) == 0

    branch = pyparse.analyze("if x:\n    y = 1\nelse:\n    y = 2\n")
    assert pyparse.decision_points(branch.statements, (1, 4)) == 1

    listing = pyparse.analyze(_snippet(oracle_corpus, "03_"))
    span = (1, len(listing.records))
    assert pyparse.decision_points(listing.statements, span) == 2


def test_max_nesting_examples(oracle_corpus):
    flat = pyparse.analyze("a = 1\nb = 2\n")
    assert pyparse.max_nesting(flat.statements) == 0

    nested = pyparse.analyze("for i in r:\n    if i:\n        f(i)\n")
    assert pyparse.max_nesting(nested.statements) == 2

    listing = pyparse.analyze(_snippet(oracle_corpus, "03_"))
    assert pyparse.max_nesting(listing.statements) == 2


def test_unterminated_string_reports_position():
    with pytest.raises(pyparse.UnterminatedString) as exc:
        pyparse.analyze('x = "unclosed\n')
    assert exc.value.position[0] == 1


def test_record_count_matches_line_count(oracle_corpus):
    for name, source, _ in oracle_corpus:
        records = pyparse.classify_lines(source)
        assert len(records) == len(source.splitlines()), name


def test_line_record_flag_invariants(oracle_corpus):
    for name, source, _ in oracle_corpus:
        for rec in pyparse.classify_lines(source):
            if rec.is_blank:
                assert not rec.has_code and not rec.has_comment, name
                assert not rec.is_docstring, name
            if rec.is_docstring:
                assert rec.has_comment, name


def test_code_rows_covered_by_statement_spans(oracle_corpus):
    # Non-docstring statement spans tile the has_code rows exactly.
    for name, source, _ in oracle_corpus:
        analysis = pyparse.analyze(source)
        covered: set[int] = set()
        for stmt in analysis.statements:
            if not stmt.is_docstring:
                covered.update(range(stmt.span[0], stmt.span[1] + 1))
        code_rows = {r.index for r in analysis.records if r.has_code}
        assert covered == code_rows, name


def test_each_code_row_in_exactly_one_span(oracle_corpus):
    # One statement per code row whenever no construct packs several
    # statements onto one physical line (semicolons, inline bodies).
    shared_row = {"14_", "28_", "29_", "44_", "45_", "48_", "68_"}
    for name, source, _ in oracle_corpus:
        if name[:3] in shared_row:
            continue
        analysis = pyparse.analyze(source)
        hits: dict[int, int] = {}
        for stmt in analysis.statements:
            if stmt.is_docstring:
                continue
            for row in range(stmt.span[0], stmt.span[1] + 1):
                hits[row] = hits.get(row, 0) + 1
        assert all(count == 1 for count in hits.values()), name


def test_statement_spans_stay_inside_snippet(oracle_corpus):
    for name, source, _ in oracle_corpus:
        analysis = pyparse.analyze(source)
        n = len(analysis.records)
        for stmt in analysis.statements:
            lo, hi = stmt.span
            assert 1 <= lo <= hi <= n, name
            assert stmt.decision_points >= 0 and stmt.depth >= 0, name


def test_kind_partition_on_oracle_corpus(oracle_corpus):
    for name, source, _ in oracle_corpus:
        stmts = pyparse.segment_statements(source)
        declarative = sum(s.is_declarative for s in stmts)
        executable = sum(not s.is_declarative for s in stmts)
        assert declarative + executable == len(stmts), name


def test_decision_points_monotone_under_concatenation(oracle_corpus):
    def total(source: str) -> int:
        analysis = pyparse.analyze(source)
        return sum(s.decision_points for s in analysis.statements)

    rng = np.random.default_rng(7)
    sources = [source for _, source, _ in oracle_corpus]
    for _ in range(100):
        a = sources[int(rng.integers(len(sources)))]
        b = sources[int(rng.integers(len(sources)))]
        combined = total(a + b)
        assert combined >= total(a)
        assert combined >= total(b)


def test_entity_tree_invariants(oracle_corpus):
    def walk(entity):
        yield entity
        for child in entity.children:
            yield from walk(child)

    for name, source, _ in oracle_corpus:
        analysis = pyparse.analyze(source)
        for root in analysis.entities:
            headers = []
            for node in walk(root):
                for a in node.children:
                    assert root.span[0] <= a.span[0] <= a.span[1] <= root.span[1], name
                for a, b in zip(node.children, node.children[1:]):
                    assert a.span[1] < b.span[0], name
                if node.kind == "function":
                    headers.append(node.span[0])
            # every def header line appears in exactly one unit span
            for line in headers:
                owners = [s for s in root.unit_spans if s[0] <= line <= s[1]]
                starts = [s for s in owners if s[0] == line]
                assert len(starts) == 1, name
