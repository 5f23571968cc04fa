"""Quantic terms, conditional propositions, and their textual syntax.

Grammar::

    term  := "(" term ")" | "0" | "1" | ident | "!" term | term "*" term
    eq    := term ("=" | "<=" | "_|_") term
    prop  := eq | "if" eq ("and" eq)* "then" prop
    ident := [a-z][a-z0-9_]*

``*`` associates to the left and ``!`` binds tighter than ``*``.  ``a <= b``
is sugar for ``a * b = a`` and ``a _|_ b`` for ``a * b = 0``.  ``#`` starts a
comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom", "One", "Zero", "Neg", "Star", "Term",
    "Equation", "ConditionalProposition", "ParseError",
    "parse_term", "parse_prop", "parse_qlp", "print_term", "print_prop",
    "atoms_of", "subterms",
]


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self):
        if not _IDENT.fullmatch(self.name) or self.name in KEYWORDS:
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True, slots=True)
class One:
    def __str__(self):
        return "1"


@dataclass(frozen=True, slots=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True, slots=True)
class Neg:
    inner: "Term"

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True, slots=True)
class Star:
    left: "Term"
    right: "Term"

    def __str__(self):
        return print_term(self)


Term = Union[Atom, One, Zero, Neg, Star]


@dataclass(frozen=True, slots=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{print_term(self.lhs)} = {print_term(self.rhs)}"


@dataclass(frozen=True, slots=True)
class ConditionalProposition:
    antecedents: tuple[Equation, ...]
    conclusion: Equation

    def __post_init__(self):
        # accept lists from callers, store a tuple so the value stays hashable
        object.__setattr__(self, "antecedents", tuple(self.antecedents))

    def __str__(self):
        return print_prop(self)


# -- tokenizer ---------------------------------------------------------------

KEYWORDS = frozenset({"if", "and", "then"})
_IDENT = re.compile(r"[a-z][a-z0-9_]*")
_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<perp>_\|_)
  | (?P<le><=)
  | (?P<op>[()!*=])
  | (?P<const>[01])
  | (?P<ident>[a-z][a-z0-9_]*)
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    """Syntax error at ``offset`` (in bytes of the UTF-8 encoded input)."""

    def __init__(self, text: str, pos: int, expected, found: str):
        self.text = text
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = frozenset(expected)
        self.found = found
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"at byte {self.offset}: expected one of {{{exp}}}, found {found}")


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str  # the literal text for punctuation/keywords, else "ident"/"const"/"end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(text, pos, {"token"}, repr(text[pos]))
        kind = m.lastgroup
        s = m.group()
        if kind == "ident" and s in KEYWORDS:
            toks.append(_Tok(s, s, pos))
        elif kind == "ident" or kind == "const":
            toks.append(_Tok(kind, s, pos))
        elif kind != "ws":
            toks.append(_Tok(s, s, pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


_TERM_START = {"(", "!", "const", "ident"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(self.text, t.pos, expected, found)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.fail({kind})
        t = self.tok
        self.i += 1
        return t

    def term(self) -> Term:
        left = self.unary()
        while self.tok.kind == "*":
            self.i += 1
            left = Star(left, self.unary())
        return left

    def unary(self) -> Term:
        t = self.tok
        if t.kind == "!":
            self.i += 1
            return Neg(self.unary())
        if t.kind == "(":
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "const":
            self.i += 1
            return One() if t.text == "1" else Zero()
        if t.kind == "ident":
            self.i += 1
            return Atom(t.text)
        self.fail(_TERM_START)

    def equation(self) -> Equation:
        lhs = self.term()
        rel = self.tok.kind
        if rel not in ("=", "<=", "_|_"):
            self.fail({"*", "=", "<=", "_|_"})
        self.i += 1
        rhs = self.term()
        if rel == "<=":
            return Equation(Star(lhs, rhs), lhs)
        if rel == "_|_":
            return Equation(Star(lhs, rhs), Zero())
        return Equation(lhs, rhs)

    def prop(self) -> ConditionalProposition:
        antecedents = []
        while self.tok.kind == "if":
            self.i += 1
            antecedents.append(self.equation())
            while self.tok.kind == "and":
                self.i += 1
                antecedents.append(self.equation())
            self.expect("then")
        return ConditionalProposition(tuple(antecedents), self.equation())

    def finish(self):
        if self.tok.kind != "end":
            self.fail({"end of input"})


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "end":
        p.fail({"*", "end of input"})
    return t


def parse_prop(text: str) -> ConditionalProposition:
    p = _Parser(text)
    prop = p.prop()
    if p.tok.kind != "end":
        p.fail({"*", "and" if prop.antecedents else "end of input", "end of input"})
    return prop


_LABEL = re.compile(r"\s*([A-Za-z][A-Za-z0-9_.\-]*)\s*:")


def parse_qlp(source: str) -> list[tuple[str, ConditionalProposition]]:
    """Parse ``.qlp`` text: one proposition per line with an optional ``name:`` label.

    Unlabelled propositions are named ``line<N>``.  Parse errors are re-raised
    with the line number prepended.
    """
    out = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        name = f"line{lineno}"
        m = _LABEL.match(body)
        if m:
            name = m.group(1)
            body = body[m.end():]
        try:
            out.append((name, parse_prop(body)))
        except ParseError as e:
            raise _relabel(e, lineno) from None
    return out


def _relabel(err: ParseError, lineno: int) -> ParseError:
    err.args = (f"line {lineno}: {err.args[0]}",)
    err.lineno = lineno
    return err


# -- printing ----------------------------------------------------------------

def print_term(t: Term) -> str:
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, One):
        return "1"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Neg):
        inner = print_term(t.inner)
        return f"!({inner})" if isinstance(t.inner, Star) else f"!{inner}"
    if isinstance(t, Star):
        right = print_term(t.right)
        if isinstance(t.right, Star):
            right = f"({right})"
        return f"{print_term(t.left)} * {right}"
    raise TypeError(f"not a term: {t!r}")


def print_prop(p: ConditionalProposition) -> str:
    """Canonical rendering; sugar is never re-introduced (``a <= b`` prints as ``a * b = a``)."""
    if not p.antecedents:
        return str(p.conclusion)
    ants = " and ".join(str(e) for e in p.antecedents)
    return f"if {ants} then {p.conclusion}"


# -- traversal ---------------------------------------------------------------

def subterms(t: Term) -> Iterator[Term]:
    """Pre-order, left to right."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, Star):
            stack.append(s.right)
            stack.append(s.left)
        elif isinstance(s, Neg):
            stack.append(s.inner)


def atoms_of(p) -> tuple[str, ...]:
    """Distinct atom names of a term, equation or proposition, in first-occurrence order."""
    if isinstance(p, ConditionalProposition):
        eqs = (*p.antecedents, p.conclusion)
        roots = [side for e in eqs for side in (e.lhs, e.rhs)]
    elif isinstance(p, Equation):
        roots = [p.lhs, p.rhs]
    else:
        roots = [p]
    seen = {}
    for r in roots:
        for s in subterms(r):
            if isinstance(s, Atom):
                seen.setdefault(s.name, None)
    return tuple(seen)
