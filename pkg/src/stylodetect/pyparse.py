"""Lexical and indentation-structural analysis of Python source text.

This module deliberately stops short of a full grammar.  It tokenizes a
snippet, groups tokens into logical lines, splits those into statements,
and tracks block structure from INDENT/DEDENT.  That is enough to answer
every question the metric layer asks (line classes, statement kinds,
decision points, nesting, def/class trees) while staying tolerant of
code that would not import: undefined names, stray operators, or missing
context are all fine.  Structural damage (unterminated strings,
inconsistent dedents) raises a ParseFailure subclass.

Frozen conventions, chosen once so every value is reproducible by hand:

* A docstring is a statement made only of string literals, sitting in
  first position of a module, def, or class body, starting on its own
  physical line.  All physical lines it spans count as comment lines,
  including interior lines that look blank (they are string content).
* Every physical line inside a non-docstring statement's span counts as
  a code line, including blank-looking or comment-only lines inside an
  open bracket.
* Decision points are the keyword tokens if/elif/for/while/except,
  which covers conditional expressions and comprehension filters.
  f-string interiors are treated as opaque string text on every Python
  version, so expressions inside them never contribute.
* Nesting depth counts enclosing if/for/while/try/with blocks (their
  elif/else/except/finally arms sit at the same depth).  def and class
  bodies are transparent: they neither add nor reset depth.
* An entity's span runs from its header line to the last code or
  comment line of its block, where a comment belongs to the innermost
  open block whose header starts left of it.  Decorators are separate
  statements outside the span.
"""

from __future__ import annotations

import io
import tokenize
from dataclasses import dataclass, field


class ParseFailure(ValueError):
    """Source text too damaged to analyze."""


class UnterminatedString(ParseFailure):
    """A string literal never closes; position is (line, column)."""

    def __init__(self, message: str, position: tuple[int, int] = (0, 0)):
        super().__init__(message)
        self.position = position


class IndentationFailure(ParseFailure):
    """Dedent does not match any open indentation level."""


class NonUtf8Input(ParseFailure):
    """Raw bytes that do not decode as UTF-8."""


DEF_HEADER = "def-header"
CLASS_HEADER = "class-header"
IMPORT = "import"
DECORATOR = "decorator"
SCOPE_DECL = "scope-decl"
OTHER_SIMPLE = "other-simple"
COMPOUND_HEADER = "compound-header"

DECLARATIVE_KINDS = frozenset({DEF_HEADER, CLASS_HEADER, IMPORT, DECORATOR, SCOPE_DECL})

_DP_WORDS = frozenset({"if", "elif", "for", "while", "except"})
_COMPOUND_WORDS = frozenset(
    {"if", "elif", "else", "for", "while", "try", "except", "finally", "with"}
)
_CODE_TOKEN_TYPES = frozenset(
    {tokenize.NAME, tokenize.NUMBER, tokenize.OP, tokenize.STRING, tokenize.ERRORTOKEN}
)


@dataclass
class LineRecord:
    """Classification of one physical line."""

    index: int
    indent: int
    is_blank: bool
    has_code: bool
    has_comment: bool
    is_docstring: bool


@dataclass
class Statement:
    """One logical statement, possibly spanning several physical lines."""

    kind: str
    span: tuple[int, int]
    depth: int
    decision_points: int
    is_docstring: bool = False
    is_pass: bool = False

    @property
    def is_declarative(self) -> bool:
        return self.kind in DECLARATIVE_KINDS


@dataclass
class Entity:
    """A function or class, with lexically nested defs/classes as children."""

    kind: str  # "function" or "class"
    name: str
    span: tuple[int, int]
    children: list["Entity"] = field(default_factory=list)
    unit_spans: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class Analysis:
    """Everything one pass over a snippet produces."""

    records: list[LineRecord]
    statements: list[Statement]
    entities: list[Entity]  # roots only


def _lex(source: str) -> list[tokenize.TokenInfo]:
    """Tokenize, translating tokenizer errors into ParseFailure."""
    try:
        tokens = list(tokenize.generate_tokens(io.StringIO(source).readline))
    except tokenize.TokenError as exc:
        message = str(exc.args[0]) if exc.args else "tokenize error"
        position = tuple(exc.args[1]) if len(exc.args) > 1 else (0, 0)
        if "string" in message:
            raise UnterminatedString(message, position) from exc
        raise ParseFailure(f"{message} at {position}") from exc
    except IndentationError as exc:
        raise IndentationFailure(str(exc)) from exc
    except SyntaxError as exc:
        # Newer tokenizers report unterminated single-quoted literals here.
        if "string" in str(exc.msg or ""):
            raise UnterminatedString(
                str(exc.msg), (exc.lineno or 0, exc.offset or 0)
            ) from exc
        raise ParseFailure(str(exc)) from exc
    except ValueError as exc:
        raise ParseFailure(str(exc)) from exc
    for tok in tokens:
        # Older tokenizers swallow an unterminated single-line literal,
        # leaving just the orphan quote as an error token.
        if tok.type == tokenize.ERRORTOKEN and tok.string in ("'", '"'):
            raise UnterminatedString("unterminated string literal", tok.start)
    return _fold_fstrings(tokens)


def _fold_fstrings(tokens: list[tokenize.TokenInfo]) -> list[tokenize.TokenInfo]:
    """Collapse FSTRING_START..FSTRING_END runs into single STRING tokens.

    Python 3.12+ tokenizes f-string interiors; folding them back keeps
    decision-point counting identical on every supported version.
    """
    start_type = getattr(tokenize, "FSTRING_START", None)
    if start_type is None:
        return tokens
    end_type = tokenize.FSTRING_END
    out: list[tokenize.TokenInfo] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.type == start_type:
            depth = 1
            j = i + 1
            while j < len(tokens) and depth > 0:
                if tokens[j].type == start_type:
                    depth += 1
                elif tokens[j].type == end_type:
                    depth -= 1
                j += 1
            last = tokens[j - 1]
            out.append(
                tokenize.TokenInfo(tokenize.STRING, "", tok.start, last.end, tok.line)
            )
            i = j
        else:
            out.append(tok)
            i += 1
    return out


def _split_statements(toks: list[tokenize.TokenInfo]) -> list[list[tokenize.TokenInfo]]:
    """Split one logical line's code tokens at ';' and at block colons."""
    parts: list[list[tokenize.TokenInfo]] = []
    cur: list[tokenize.TokenInfo] = []
    bracket_depth = 0
    pending_lambda = False
    for tok in toks:
        if tok.type == tokenize.OP and tok.string in "([{":
            bracket_depth += 1
        elif tok.type == tokenize.OP and tok.string in ")]}":
            bracket_depth = max(0, bracket_depth - 1)
        if bracket_depth == 0 and tok.type == tokenize.OP and tok.string == ";":
            if cur:
                parts.append(cur)
                cur = []
            pending_lambda = False
            continue
        cur.append(tok)
        if bracket_depth != 0:
            continue
        if tok.type == tokenize.NAME and tok.string == "lambda":
            pending_lambda = True
        elif tok.type == tokenize.OP and tok.string == ":":
            if pending_lambda:
                pending_lambda = False
            elif _starts_block(cur):
                parts.append(cur)
                cur = []
    if cur:
        parts.append(cur)
    return parts


def _starts_block(toks: list[tokenize.TokenInfo]) -> bool:
    first = toks[0]
    if first.type != tokenize.NAME:
        return False
    word = first.string
    if word == "async" and len(toks) > 1 and toks[1].type == tokenize.NAME:
        word = toks[1].string
    return word in _COMPOUND_WORDS or word in ("def", "class")


def _statement_kind(toks: list[tokenize.TokenInfo]) -> str:
    first = toks[0]
    if first.type == tokenize.OP and first.string == "@":
        return DECORATOR
    if first.type != tokenize.NAME:
        return OTHER_SIMPLE
    word = first.string
    if word == "async" and len(toks) > 1 and toks[1].type == tokenize.NAME:
        word = toks[1].string
    if word == "def":
        return DEF_HEADER
    if word == "class":
        return CLASS_HEADER
    if word in ("import", "from"):
        return IMPORT
    if word in ("global", "nonlocal"):
        return SCOPE_DECL
    if word in _COMPOUND_WORDS:
        return COMPOUND_HEADER
    return OTHER_SIMPLE


def _entity_name(toks: list[tokenize.TokenInfo]) -> str:
    seen_keyword = False
    for tok in toks:
        if tok.type != tokenize.NAME or tok.string == "async":
            continue
        if not seen_keyword:
            seen_keyword = True  # the def/class keyword itself
            continue
        return tok.string
    return "<anonymous>"


class _Block:
    """One open indentation block."""

    __slots__ = ("kind", "entity", "header_col", "last_content", "expecting_doc")

    def __init__(self, kind: str, entity: Entity | None, header_col: int, last_content: int):
        self.kind = kind  # "control", "entity", "other"
        self.entity = entity
        self.header_col = header_col
        self.last_content = last_content
        self.expecting_doc = entity is not None


class _Walker:
    """Single pass over the token stream."""

    def __init__(self, source: str):
        self.lines = source.splitlines()
        self.statements: list[Statement] = []
        self.roots: list[Entity] = []
        self.stack: list[_Block] = []
        self.open_entities: list[Entity] = []
        self.comment_rows: set[int] = set()
        self.module_expecting_doc = True
        # Armed after a logical line ending in a block colon; the matching
        # INDENT (if any) opens the block: (header, block kind, entity, col).
        self.pending: tuple[Statement, str, Entity | None, int] | None = None

    def run(self, tokens: list[tokenize.TokenInfo]) -> Analysis:
        logical: list[tokenize.TokenInfo] = []
        for tok in tokens:
            ttype = tok.type
            if ttype == tokenize.COMMENT:
                self.comment_rows.add(tok.start[0])
                self._note_comment(tok.start[0], tok.start[1])
            elif ttype == tokenize.NEWLINE:
                if logical:
                    self._process_logical(logical)
                    logical = []
            elif ttype == tokenize.INDENT:
                self._open_block(tok)
            elif ttype == tokenize.DEDENT:
                self._close_block()
            elif ttype in _CODE_TOKEN_TYPES:
                logical.append(tok)
        if logical:
            self._process_logical(logical)
        self._close_pending_empty()
        while self.stack:
            self._close_block()
        for root in self.roots:
            root.unit_spans = [e.span for e in _iter_defs(root)]
        records = _build_records(self.lines, self.statements, self.comment_rows)
        return Analysis(records=records, statements=self.statements, entities=self.roots)

    def _control_depth(self) -> int:
        return sum(1 for b in self.stack if b.kind == "control")

    def _note_comment(self, row: int, col: int) -> None:
        for block in reversed(self.stack):
            if block.header_col < col:
                block.last_content = max(block.last_content, row)
                return

    def _open_block(self, tok: tokenize.TokenInfo) -> None:
        if self.pending is not None:
            stmt, kind, entity, col = self.pending
            self.stack.append(_Block(kind, entity, col, stmt.span[1]))
            self.pending = None
        else:
            # Indentation with no opener in sight; tolerate it.
            self.stack.append(_Block("other", None, -1, tok.start[0]))

    def _close_block(self) -> None:
        self._close_pending_empty()
        if not self.stack:
            return
        block = self.stack.pop()
        if block.entity is not None:
            block.entity.span = (block.entity.span[0], block.last_content)
            self.open_entities.pop()
        if self.stack:
            top = self.stack[-1]
            top.last_content = max(top.last_content, block.last_content)

    def _close_pending_empty(self) -> None:
        """An armed opener never got its INDENT: treat the block as empty."""
        if self.pending is None:
            return
        stmt, _kind, entity, _col = self.pending
        if entity is not None:
            entity.span = (entity.span[0], stmt.span[1])
            self.open_entities.pop()
        self.pending = None

    def _process_logical(self, toks: list[tokenize.TokenInfo]) -> None:
        self._close_pending_empty()
        parts = _split_statements(toks)
        inline_depth = 0
        inline_entities: list[Entity] = []
        for idx, part in enumerate(parts):
            kind = _statement_kind(part)
            span = (part[0].start[0], part[-1].end[0])
            stmt = Statement(
                kind=kind,
                span=span,
                depth=self._control_depth() + inline_depth,
                decision_points=sum(
                    1 for t in part if t.type == tokenize.NAME and t.string in _DP_WORDS
                ),
                is_pass=(
                    len(part) == 1
                    and part[0].type == tokenize.NAME
                    and part[0].string == "pass"
                ),
            )
            if idx == 0 and all(t.type == tokenize.STRING for t in part):
                if self.stack and self.stack[-1].expecting_doc:
                    stmt.is_docstring = True
                elif not self.stack and self.module_expecting_doc:
                    stmt.is_docstring = True
            if self.stack:
                self.stack[-1].expecting_doc = False
            self.module_expecting_doc = False
            self.statements.append(stmt)
            if self.stack:
                top = self.stack[-1]
                top.last_content = max(top.last_content, span[1])

            entity: Entity | None = None
            if kind in (DEF_HEADER, CLASS_HEADER):
                entity = Entity(
                    kind="function" if kind == DEF_HEADER else "class",
                    name=_entity_name(part),
                    span=span,
                )
                if self.open_entities:
                    self.open_entities[-1].children.append(entity)
                else:
                    self.roots.append(entity)

            is_last = idx == len(parts) - 1
            ends_with_colon = part[-1].type == tokenize.OP and part[-1].string == ":"
            if is_last and ends_with_colon:
                if kind == COMPOUND_HEADER:
                    self.pending = (stmt, "control", None, part[0].start[1])
                elif entity is not None:
                    self.pending = (stmt, "entity", entity, part[0].start[1])
                    self.open_entities.append(entity)
                else:
                    self.pending = (stmt, "other", None, part[0].start[1])
            else:
                if ends_with_colon and kind == COMPOUND_HEADER:
                    inline_depth += 1
                if entity is not None:
                    # Inline body (or malformed header): the entity closes
                    # with this logical line.
                    inline_entities.append(entity)
        if parts:
            end_row = parts[-1][-1].end[0]
            for entity in inline_entities:
                entity.span = (entity.span[0], end_row)


def _iter_defs(entity: Entity):
    if entity.kind == "function":
        yield entity
    for child in entity.children:
        yield from _iter_defs(child)


def _build_records(
    lines: list[str],
    statements: list[Statement],
    comment_rows: set[int],
) -> list[LineRecord]:
    code_rows: set[int] = set()
    doc_rows: set[int] = set()
    for stmt in statements:
        rows = range(stmt.span[0], stmt.span[1] + 1)
        if stmt.is_docstring:
            doc_rows.update(rows)
        else:
            code_rows.update(rows)
    records = []
    for i in range(1, len(lines) + 1):
        expanded = lines[i - 1].expandtabs(8)
        indent = len(expanded) - len(expanded.lstrip())
        has_code = i in code_rows
        in_doc = i in doc_rows and not has_code
        has_comment = i in comment_rows or in_doc
        records.append(
            LineRecord(
                index=i,
                indent=indent,
                is_blank=not has_code and not has_comment,
                has_code=has_code,
                has_comment=has_comment,
                is_docstring=in_doc,
            )
        )
    return records


def analyze(source: str) -> Analysis:
    """Run the full pass: line records, statements, entity tree."""
    return _Walker(source).run(_lex(source))


def classify_lines(source: str) -> list[LineRecord]:
    """Classify each physical line of the snippet."""
    return analyze(source).records


def segment_statements(source: str) -> list[Statement]:
    """Split the snippet into logical statements."""
    return analyze(source).statements


def extract_entities(source: str) -> list[Entity]:
    """Build the def/class tree; returns root entities in source order."""
    return analyze(source).entities


def decision_points(statements: list[Statement], span: tuple[int, int]) -> int:
    """Count decision-point tokens in statements inside a line span."""
    lo, hi = span
    return sum(
        s.decision_points for s in statements if s.span[0] >= lo and s.span[1] <= hi
    )


def max_nesting(statements: list[Statement]) -> int:
    """Deepest control nesting reached by any statement."""
    return max((s.depth for s in statements), default=0)
