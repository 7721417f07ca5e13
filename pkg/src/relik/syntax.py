"""Formula ASTs, a recursive-descent parser and a canonical printer.

Two tiers: propositional formulas sit under ``>>``, ``~>`` and ``K``; the
outer tier is Boolean combinations of those.  The connective classes
``Not``/``And``/``Or``/``Implies`` are shared by both tiers.

Surface syntax (ASCII; unicode aliases accepted on input)::

    lik  := lik1 ('->' lik)?      lik1 := lik2 ('|' lik2)*    lik2 := lik3 ('&' lik3)*
    lik3 := '~' lik3 | '(' prop '>>' prop ')' | '(' prop '~>' prop ')'
          | 'K' '(' prop ')' | '(' lik ')'
    prop := prop1 ('->' prop)?    prop1 := prop2 ('|' prop2)*  prop2 := prop3 ('&' prop3)*
    prop3 := '~' prop3 | 'true' | 'false' | ident | '(' prop ')'
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Gt:
    """``left >> right``: left is more likely than right."""

    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Know:
    arg: "Formula"


@dataclass(frozen=True)
class Cond:
    """``ante ~> cons``: in the most likely ante-worlds, cons holds."""

    ante: "Formula"
    cons: "Formula"


TRUE = Top()
FALSE = Bottom()

Formula = Union[Atom, Top, Bottom, Not, And, Or, Implies, Gt, Know, Cond]
PropFormula = Formula
LikelihoodFormula = Formula

_BINARY = (And, Or, Implies)
_MODAL = (Gt, Know, Cond)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        self.message = message
        super().__init__(message if pos is None else f"{message} at position {pos}")


class TierError(ParseError):
    """Nested likelihood operator, or a bare propositional outer formula."""


class UnknownAtomError(ParseError):
    pass


def conj(*fs: Formula) -> Formula:
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(*fs: Formula) -> Formula:
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def is_prop(f: Formula) -> bool:
    if isinstance(f, (Atom, Top, Bottom)):
        return True
    if isinstance(f, Not):
        return is_prop(f.arg)
    if isinstance(f, _BINARY):
        return is_prop(f.left) and is_prop(f.right)
    return False


def is_likelihood(f: Formula) -> bool:
    """True iff ``f`` respects the two-tier discipline at the outer tier."""
    if isinstance(f, Gt):
        return is_prop(f.left) and is_prop(f.right)
    if isinstance(f, Cond):
        return is_prop(f.ante) and is_prop(f.cons)
    if isinstance(f, Know):
        return is_prop(f.arg)
    if isinstance(f, Not):
        return is_likelihood(f.arg)
    if isinstance(f, _BINARY):
        return is_likelihood(f.left) and is_likelihood(f.right)
    return False


def atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, (Top, Bottom)):
        return set()
    if isinstance(f, (Not, Know)):
        return atoms(f.arg)
    if isinstance(f, Cond):
        return atoms(f.ante) | atoms(f.cons)
    return atoms(f.left) | atoms(f.right)


# --- printing ---------------------------------------------------------------

_SYMBOL = {And: "&", Or: "|", Implies: "->", Gt: ">>"}


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        return "~" + print_formula(f.arg)
    if isinstance(f, Know):
        inner = print_formula(f.arg)
        if isinstance(f.arg, _BINARY):
            inner = inner[1:-1]
        return f"K({inner})"
    if isinstance(f, Cond):
        return f"({print_formula(f.ante)} ~> {print_formula(f.cons)})"
    return f"({print_formula(f.left)} {_SYMBOL[type(f)]} {print_formula(f.right)})"


# --- lexing -----------------------------------------------------------------

_ALIASES = {
    "≫": ">>",
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "⇒": "->",
    "→": "->",
    "⊤": "true",
    "⊥": "false",
}
_TOKEN = re.compile(r"\s*(?:(>>|~>|->|[~&|()])|([A-Za-z_][A-Za-z0-9_]*))")


@dataclass(frozen=True)
class Token:
    kind: str  # operator text, 'ident', or 'eof'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            out.append(Token("eof", "", pos))
            return out
        ch = text[pos]
        if ch in _ALIASES:
            alias = _ALIASES[ch]
            kind = "ident" if alias in ("true", "false") else alias
            out.append(Token(kind, alias, pos))
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.start(1 if m.group(1) else 2) != pos:
            raise ParseError(f"unexpected character {ch!r}", pos)
        if m.group(1):
            out.append(Token(m.group(1), m.group(1), pos))
        else:
            out.append(Token("ident", m.group(2), pos))
        pos = m.end()


# --- parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, vocab: Iterable[str] | None):
        self.toks = tokenize(text)
        self.i = 0
        self.vocab = None if vocab is None else set(vocab)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        t = self.tok
        if t.kind != kind:
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {kind!r}, found {found}", t.pos)
        return self.advance()

    def done(self) -> None:
        t = self.tok
        if t.kind != "eof":
            if t.kind in (">>", "~>"):
                raise TierError(f"unexpected {t.text!r} outside parentheses", t.pos)
            raise ParseError(f"unexpected {t.text!r}", t.pos)

    # outer tier

    def lik(self) -> Formula:
        left = self.lik1()
        if self.tok.kind == "->":
            self.advance()
            return Implies(left, self.lik())
        return left

    def lik1(self) -> Formula:
        f = self.lik2()
        while self.tok.kind == "|":
            self.advance()
            f = Or(f, self.lik2())
        return f

    def lik2(self) -> Formula:
        f = self.lik3()
        while self.tok.kind == "&":
            self.advance()
            f = And(f, self.lik3())
        return f

    def lik3(self) -> Formula:
        t = self.tok
        if t.kind == "~":
            self.advance()
            return Not(self.lik3())
        if t.kind == "ident" and t.text == "K":
            self.advance()
            self.expect("(")
            arg = self.prop()
            self.close_prop()
            return Know(arg)
        if t.kind == "(":
            op = self.group_operator()
            self.advance()
            if op is None:
                f = self.lik()
                self.expect(")")
                return f
            left = self.prop()
            op_tok = self.tok
            if op_tok.kind not in (">>", "~>"):
                raise ParseError(f"expected '>>' or '~>', found {op_tok.text!r}", op_tok.pos)
            self.advance()
            right = self.prop()
            self.close_prop()
            return Gt(left, right) if op == ">>" else Cond(left, right)
        if t.kind == "ident":
            raise TierError(
                "propositional formula where a likelihood formula is required", t.pos
            )
        if t.kind == "eof":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)

    def group_operator(self) -> str | None:
        """Return '>>' or '~>' if one occurs at depth 1 of the group opened here."""
        depth = 0
        for t in self.toks[self.i:]:
            if t.kind == "(":
                depth += 1
            elif t.kind == ")":
                depth -= 1
                if depth == 0:
                    return None
            elif depth == 1 and t.kind in (">>", "~>"):
                return t.kind
            elif t.kind == "eof":
                return None
        return None

    def close_prop(self) -> None:
        t = self.tok
        if t.kind in (">>", "~>"):
            raise TierError(f"nested likelihood operator {t.text!r}", t.pos)
        self.expect(")")

    # inner tier

    def prop(self) -> Formula:
        left = self.prop1()
        if self.tok.kind == "->":
            self.advance()
            return Implies(left, self.prop())
        return left

    def prop1(self) -> Formula:
        f = self.prop2()
        while self.tok.kind == "|":
            self.advance()
            f = Or(f, self.prop2())
        return f

    def prop2(self) -> Formula:
        f = self.prop3()
        while self.tok.kind == "&":
            self.advance()
            f = And(f, self.prop3())
        return f

    def prop3(self) -> Formula:
        t = self.tok
        if t.kind == "~":
            self.advance()
            return Not(self.prop3())
        if t.kind == "(":
            self.advance()
            f = self.prop()
            self.close_prop()
            return f
        if t.kind == "ident":
            self.advance()
            if t.text == "true":
                return TRUE
            if t.text == "false":
                return FALSE
            if t.text == "K":
                raise TierError("K inside a propositional formula", t.pos)
            if self.vocab is not None and t.text not in self.vocab:
                raise UnknownAtomError(f"unknown atom {t.text!r}", t.pos)
            return Atom(t.text)
        if t.kind == "eof":
            raise ParseError("unexpected end of input", t.pos)
        if t.kind in (">>", "~>"):
            raise TierError(f"nested likelihood operator {t.text!r}", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)


def parse_formula(text: str, vocab: Iterable[str] | None = None) -> Formula:
    """Parse an outer-tier likelihood formula."""
    p = _Parser(text, vocab)
    f = p.lik()
    p.done()
    return f


def parse_prop(text: str, vocab: Iterable[str] | None = None) -> Formula:
    """Parse a propositional formula."""
    p = _Parser(text, vocab)
    f = p.prop()
    p.done()
    return f
