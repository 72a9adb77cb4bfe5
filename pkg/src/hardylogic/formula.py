"""Formula language for the two-region experiment logic.

Twelve atoms: four measurement choices (L1, L2, R1, R2) and eight
outcomes (L1+, L1-, ..., R2-).  An outcome atom such as ``R1-`` is a
single token and asserts both that R1 is performed and that its result
is minus.  Connectives, tightest to loosest:

    ~        negation
    &        conjunction
    |        disjunction
    ->       material conditional   (world-local)
    []->     counterfactual conditional
    =>       strict conditional     (global)

``->`` and ``[]->`` share one precedence level and do not associate,
with each other or with themselves; mixing them without parentheses is
a parse error.  ``=>`` is likewise non-associative.  Unicode aliases
are accepted on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

CHOICE_ATOMS = ("L1", "L2", "R1", "R2")
OUTCOME_ATOMS = ("L1+", "L1-", "L2+", "L2-", "R1+", "R1-", "R2+", "R2-")
ATOM_NAMES = CHOICE_ATOMS + OUTCOME_ATOMS


class ParseError(ValueError):
    """Malformed formula text; `position` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LexError(ParseError):
    """Character sequence that is not a token of the language."""


class Formula:
    """Base class for formula AST nodes."""

    def __str__(self) -> str:
        return unparse(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if self.name not in ATOM_NAMES:
            raise ValueError(f"unknown atom {self.name!r}; expected one of {ATOM_NAMES}")

    @property
    def region(self) -> str:
        """'L' or 'R'."""
        return self.name[0]

    @property
    def setting(self) -> str:
        """The choice this atom refers to, e.g. 'R1' for atom 'R1-'."""
        return self.name[:2]

    @property
    def sign(self) -> str | None:
        """'+' or '-' for outcome atoms, None for choice atoms."""
        return self.name[2] if len(self.name) == 3 else None

    @property
    def is_choice(self) -> bool:
        return len(self.name) == 2

    @property
    def is_outcome(self) -> bool:
        return len(self.name) == 3

    def choice(self) -> "Atom":
        """The choice atom this atom presupposes (identity on choice atoms)."""
        return Atom(self.setting)


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class MatImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class StrictImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Counterfactual(Formula):
    left: Formula
    right: Formula


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<ATOM>[LR][12][+-]?)
  | (?P<CF>\[\]->|□→)
  | (?P<STRICT>=>|⇒)
  | (?P<MATIMP>->|→)
  | (?P<NOT>~|¬)
  | (?P<AND>&|∧)
  | (?P<OR>\||∨)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LexError(f"unknown token starting at {text[pos:pos + 4]!r}", pos)
        if m.lastgroup != "WS":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("EOF", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent, one function per grammar level)

class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def formula(self) -> Formula:
        f = self.strict()
        tok = self.peek()
        if tok.kind == "STRICT":
            raise ParseError("'=>' does not associate; parenthesize one side", tok.pos)
        if tok.kind in ("MATIMP", "CF"):
            raise ParseError(
                f"conditional {tok.text!r} cannot follow a strict conditional without parentheses",
                tok.pos,
            )
        return f

    def strict(self) -> Formula:
        left = self.binary()
        if self.peek().kind == "STRICT":
            self.take()
            right = self.binary()
            return StrictImp(left, right)
        return left

    def binary(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok.kind in ("MATIMP", "CF"):
            self.take()
            right = self.disj()
            nxt = self.peek()
            if nxt.kind in ("MATIMP", "CF"):
                raise ParseError(
                    f"'{tok.text}' and '{nxt.text}' do not associate; parenthesize to disambiguate",
                    nxt.pos,
                )
            return MatImp(left, right) if tok.kind == "MATIMP" else Counterfactual(left, right)
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "OR":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.peek().kind == "AND":
            self.take()
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        tok = self.peek()
        if tok.kind == "NOT":
            self.take()
            return Not(self.neg())
        if tok.kind == "LPAREN":
            self.take()
            f = self.formula()
            closing = self.take()
            if closing.kind != "RPAREN":
                raise ParseError(f"expected ')', found {closing.text or 'end of input'!r}", closing.pos)
            return f
        if tok.kind == "ATOM":
            self.take()
            return Atom(tok.text)
        if tok.kind == "EOF":
            raise ParseError("missing operand: unexpected end of input", tok.pos)
        raise ParseError(f"expected an atom, '~' or '(', found {tok.text!r}", tok.pos)


def parse(text: str) -> Formula:
    """Parse `text` into a Formula; raises LexError/ParseError with a position."""
    parser = _Parser(_lex(text))
    f = parser.formula()
    trailing = parser.peek()
    if trailing.kind != "EOF":
        raise ParseError(f"expected end of input, found {trailing.text!r}", trailing.pos)
    return f


# ---------------------------------------------------------------------------
# Printer

_PRECEDENCE = {
    Atom: 5,
    Not: 5,
    And: 4,
    Or: 3,
    MatImp: 2,
    Counterfactual: 2,
    StrictImp: 1,
}

_INFIX = {And: "&", Or: "|", MatImp: "->", Counterfactual: "[]->", StrictImp: "=>"}


def unparse(f: Formula) -> str:
    """Canonical text with minimal parentheses; parse(unparse(f)) == f."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + _wrap(f.arg, 5)
    op = _INFIX[type(f)]
    if isinstance(f, And):
        # right-nested same-operator trees keep parentheses so the
        # left-associating parser rebuilds the identical AST
        return f"{_wrap(f.left, 4)} {op} {_wrap(f.right, 5)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, 3)} {op} {_wrap(f.right, 4)}"
    if isinstance(f, (MatImp, Counterfactual)):
        return f"{_wrap(f.left, 3)} {op} {_wrap(f.right, 3)}"
    return f"{_wrap(f.left, 2)} {op} {_wrap(f.right, 2)}"


def _wrap(f: Formula, min_prec: int) -> str:
    text = unparse(f)
    return f"({text})" if _PRECEDENCE[type(f)] < min_prec else text


# ---------------------------------------------------------------------------
# Normal form used by the derivation lines

@dataclass(frozen=True)
class PaperNormalReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_paper_normal(f: Formula) -> PaperNormalReport:
    """Check the one-strict-conditional-per-line discipline.

    Holds iff a strict conditional appears at most once, and only at the
    root, and every counterfactual antecedent is a single choice atom.
    """
    violation = _first_violation(f, at_root=True)
    return PaperNormalReport(violation is None, violation)


def _first_violation(f: Formula, at_root: bool) -> str | None:
    if isinstance(f, Atom):
        return None
    if isinstance(f, StrictImp):
        if not at_root:
            return f"nested strict conditional: {unparse(f)}"
        return _first_violation(f.left, False) or _first_violation(f.right, False)
    if isinstance(f, Counterfactual):
        ant = f.left
        if not (isinstance(ant, Atom) and ant.is_choice):
            return f"counterfactual antecedent is not a choice atom: {unparse(ant)}"
        return _first_violation(f.right, False)
    if isinstance(f, Not):
        return _first_violation(f.arg, False)
    return _first_violation(f.left, False) or _first_violation(f.right, False)
