"""The flag-based query language: parsing and canonical rendering.

Grammar::

    query    := segment ("-->" segment)* window?
    segment  := group+
    group    := flag term ("," term)*
    flag     := --concepts | --objects | --events | --places | --ocr | --stt
                | --all | -c | -o | -e | -p
    term     := word | quoted-phrase, optionally followed by "(" real ")"
    window   := "--window" seconds        (trailing only)

Whitespace between tokens is insignificant; labels are lowercased. A
threshold binds to the immediately preceding term only. Quoted phrases are
kept as token lists on the term (tokens split like ingested transcript
text); at evaluation time a phrase is a conjunction of its tokens within
one shot. Every malformed input raises :class:`ParseError` with a byte
offset into the query string.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgument, ParseError
from .models import ALL_CATEGORY, CATEGORIES
from .store import tokenize_text

QUERY_CATEGORIES = CATEGORIES + (ALL_CATEGORY,)

SHORT_FLAGS = {"c": "concepts", "o": "objects", "e": "events", "p": "places"}
_WINDOW = "window"
_WORD_BREAK = set(',()"')


@dataclass(frozen=True, slots=True)
class Term:
    """One search term: a label (or phrase token list) in a category."""

    category: str
    tokens: tuple[str, ...]
    threshold: float = 0.0

    @property
    def label(self) -> str:
        return " ".join(self.tokens)

    @property
    def is_phrase(self) -> bool:
        return len(self.tokens) > 1

    def atoms(self) -> list[tuple[str, str, float]]:
        """Atomic (category, token, threshold) triples; phrases expand to one per token."""
        return [(self.category, t, self.threshold) for t in self.tokens]


@dataclass(frozen=True, slots=True)
class QueryAst:
    segments: tuple[tuple[Term, ...], ...]
    window_s: float | None = None


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # flag | arrow | comma | threshold | word | phrase
    value: object
    pos: int  # character position; converted to bytes for errors


def _byte_offset(query: str, pos: int) -> int:
    return len(query[:pos].encode("utf-8"))


def _lex(query: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(query)

    def fail(message: str, pos: int) -> None:
        raise ParseError(message, _byte_offset(query, pos))

    while i < n:
        ch = query[i]
        if ch.isspace():
            i += 1
            continue
        if query.startswith("-->", i):
            tokens.append(_Token("arrow", "-->", i))
            i += 3
            continue
        if ch == ",":
            tokens.append(_Token("comma", ",", i))
            i += 1
            continue
        if ch == "(":
            j = query.find(")", i + 1)
            if j < 0:
                fail("unterminated '('", i)
            raw = query[i + 1 : j].strip()
            try:
                value = float(raw)
            except ValueError:
                fail(f"invalid threshold {raw!r}", i)
            tokens.append(_Token("threshold", value, i))
            i = j + 1
            continue
        if ch == ")":
            fail("unexpected ')'", i)
        if ch == '"':
            j = query.find('"', i + 1)
            if j < 0:
                fail("unterminated quote", i)
            phrase = tuple(tokenize_text(query[i + 1 : j]))
            if not phrase:
                fail("empty phrase", i)
            tokens.append(_Token("phrase", phrase, i))
            i = j + 1
            continue
        if ch == "-" and query.startswith("--", i):
            j = i + 2
            while j < n and (query[j].isalnum() or query[j] == "_"):
                j += 1
            name = query[i + 2 : j]
            if name not in QUERY_CATEGORIES and name != _WINDOW:
                fail(f"unknown flag {query[i:j]!r}", i)
            tokens.append(_Token("flag", name, i))
            i = j
            continue
        if ch == "-":
            j = i + 1
            while j < n and (query[j].isalnum() or query[j] == "_"):
                j += 1
            name = query[i + 1 : j]
            if name not in SHORT_FLAGS:
                fail(f"unknown flag {query[i:j]!r}", i)
            tokens.append(_Token("flag", SHORT_FLAGS[name], i))
            i = j
            continue
        j = i
        while j < n and not query[j].isspace() and query[j] not in _WORD_BREAK:
            j += 1
        tokens.append(_Token("word", query[i:j].lower(), i))
        i = j
    return tokens


def parse(query: str) -> QueryAst:
    """Parse a query string into its AST, or raise a positioned ParseError."""
    if not isinstance(query, str):
        raise InvalidArgument("query must be a string")
    tokens = _lex(query)

    def fail(message: str, pos: int) -> None:
        raise ParseError(message, _byte_offset(query, pos))

    if not tokens:
        fail("empty query", 0)

    segments: list[tuple[Term, ...]] = []
    current: list[Term] = []
    window_s: float | None = None
    i, n = 0, len(tokens)

    while i < n:
        tok = tokens[i]
        if tok.kind == "arrow":
            if not current:
                fail("empty segment before '-->'", tok.pos)
            segments.append(tuple(current))
            current = []
            i += 1
            continue
        if tok.kind == "flag" and tok.value == _WINDOW:
            if i + 1 >= n or tokens[i + 1].kind != "word":
                fail("expected a number after --window", tokens[i + 1].pos if i + 1 < n else len(query))
            raw = tokens[i + 1].value
            try:
                value = float(raw)
            except ValueError:
                fail(f"invalid window value {raw!r}", tokens[i + 1].pos)
            if not (math.isfinite(value) and value > 0):
                fail("window must be a positive number of seconds", tokens[i + 1].pos)
            if i + 2 < n:
                fail("--window must end the query", tokens[i + 2].pos)
            window_s = value
            i += 2
            continue
        if tok.kind == "flag":
            category = tok.value
            i += 1
            while True:
                if i >= n or tokens[i].kind not in ("word", "phrase"):
                    fail("expected a search term", tokens[i].pos if i < n else len(query))
                term_tok = tokens[i]
                i += 1
                threshold = 0.0
                if i < n and tokens[i].kind == "threshold":
                    value = tokens[i].value
                    if not 0.0 <= value <= 1.0:
                        fail(f"threshold {value:g} outside [0, 1]", tokens[i].pos)
                    threshold = float(value)
                    i += 1
                term_tokens = term_tok.value if term_tok.kind == "phrase" else (term_tok.value,)
                current.append(Term(category, term_tokens, threshold))
                if i < n and tokens[i].kind == "comma":
                    i += 1
                    continue
                break
            continue
        if tok.kind == "threshold":
            fail("threshold must follow a search term", tok.pos)
        fail("expected a flag such as --objects", tok.pos)

    if not current:
        if segments:
            fail("empty segment after '-->'", len(query))
        fail("query has no search terms", 0)
    segments.append(tuple(current))
    return QueryAst(tuple(segments), window_s)


def _render_term(term: Term) -> str:
    label = f'"{" ".join(term.tokens)}"' if term.is_phrase else term.tokens[0]
    rendered = f"{term.threshold:.2f}"
    # Skip thresholds that format to zero, else re-parsing the rendering
    # would disagree with rendering it again.
    if rendered != "0.00":
        return f"{label} ({rendered})"
    return label


def term_text(category: str, tokens: tuple[str, ...], threshold: float) -> str:
    """Canonical rendering of a single term including its flag."""
    return f"--{category} {_render_term(Term(category, tokens, threshold))}"


def canonicalize(ast: QueryAst) -> str:
    """Deterministic rendering: long flags, one flag per category run,
    thresholds only when > 0 (two decimals). ``parse(canonicalize(a))``
    is structurally equal to ``a``."""
    if not ast.segments or any(not seg for seg in ast.segments):
        raise InvalidArgument("ast must have at least one segment, each with at least one term")
    rendered_segments = []
    for segment in ast.segments:
        chunks: list[str] = []
        prev_category = None
        for term in segment:
            if term.category not in QUERY_CATEGORIES:
                raise InvalidArgument(f"unknown category {term.category!r}")
            if term.category != prev_category:
                chunks.append(f"--{term.category} {_render_term(term)}")
            else:
                chunks[-1] += f", {_render_term(term)}"
            prev_category = term.category
        rendered_segments.append(" ".join(chunks))
    out = " --> ".join(rendered_segments)
    if ast.window_s is not None:
        out += f" --window {ast.window_s!r}"
    return out
