"""Structural terms describing linear orders.

A term is built from the atoms ``fin(n)``, ``w`` (omega), ``w*`` (omega
reversed), ``Z``, ``Q`` and ``R`` with ordered sums ``a + b`` and the
lexicographic doubling ``a*2``.  Terms are immutable and hashable.

Grammar accepted by :func:`parse_term`::

    sum  := prod ("+" prod)*
    prod := atom ("*2")*
    atom := "fin(" nat ")" | "Z" | "Q" | "R" | "w" | "w*" | "(" sum ")"

``omega`` and ``omega*`` are synonyms for ``w`` and ``w*``.  Postfix ``*2``
binds tighter than ``+``.  A ``*`` directly after ``w`` that is followed by
``2`` is read as doubling, so ``w*2`` is omega doubled and ``w**2`` is omega
reversed, doubled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from .errors import TermSyntaxError

MAX_FINITE = 2**63 - 1

GRAMMAR = """\
sum  := prod ("+" prod)*
prod := atom ("*2")*
atom := "fin(" nat ")" | "Z" | "Q" | "R" | "w" | "w*" | "(" sum ")"
("omega" / "omega*" are accepted for "w" / "w*")"""


@dataclass(frozen=True)
class Finite:
    n: int


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class OmegaStar:
    pass


@dataclass(frozen=True)
class Ints:
    pass


@dataclass(frozen=True)
class Rats:
    pass


@dataclass(frozen=True)
class Reals:
    pass


@dataclass(frozen=True)
class Sum:
    parts: Tuple["OrderTerm", ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class Times2:
    base: "OrderTerm"


OrderTerm = Union[Finite, Omega, OmegaStar, Ints, Rats, Reals, Sum, Times2]

OMEGA = Omega()
OMEGA_STAR = OmegaStar()
INTS = Ints()
RATS = Rats()
REALS = Reals()
EMPTY = Finite(0)

_ATOM_TEXT = {Omega: "w", OmegaStar: "w*", Ints: "Z", Rats: "Q", Reals: "R"}


def normalize(t: OrderTerm) -> OrderTerm:
    """Drop empty summands, collapse short sums and empty doublings.

    Nested sums are kept as written; flattening would renumber elements.
    """
    if isinstance(t, Sum):
        parts = [p for p in map(normalize, t.parts) if p != EMPTY]
        if not parts:
            return EMPTY
        if len(parts) == 1:
            return parts[0]
        return Sum(tuple(parts))
    if isinstance(t, Times2):
        base = normalize(t.base)
        return EMPTY if base == EMPTY else Times2(base)
    return t


def is_symbolic(t: OrderTerm) -> bool:
    """True when ``t`` mentions R, whose points cannot be enumerated."""
    if isinstance(t, Reals):
        return True
    if isinstance(t, Sum):
        return any(is_symbolic(p) for p in t.parts)
    if isinstance(t, Times2):
        return is_symbolic(t.base)
    return False


def depth(t: OrderTerm) -> int:
    """Atoms have depth 1; each sum or doubling adds one level."""
    if isinstance(t, Sum):
        return 1 + max(depth(p) for p in t.parts)
    if isinstance(t, Times2):
        return 1 + depth(t.base)
    return 1


def format_term(t: OrderTerm) -> str:
    if isinstance(t, Finite):
        return f"fin({t.n})"
    if isinstance(t, Sum):
        return "+".join(
            f"({format_term(p)})" if isinstance(p, Sum) else format_term(p)
            for p in t.parts
        )
    if isinstance(t, Times2):
        inner = format_term(t.base)
        if isinstance(t.base, (Sum, OmegaStar)):
            inner = f"({inner})"
        return inner + "*2"
    return _ATOM_TEXT[type(t)]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise TermSyntaxError(message, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def starts(self, word: str) -> bool:
        self.skip()
        return self.text.startswith(word, self.pos)

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def times_two_ahead(self) -> bool:
        # "*" followed (modulo spaces) by "2"
        if self.peek() != "*":
            return False
        j = self.pos + 1
        while j < len(self.text) and self.text[j].isspace():
            j += 1
        return j < len(self.text) and self.text[j] == "2"

    def parse_sum(self) -> OrderTerm:
        parts = [self.parse_prod()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.parse_prod())
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def parse_prod(self) -> OrderTerm:
        t = self.parse_atom()
        while self.times_two_ahead():
            self.pos += 1
            self.skip()
            self.pos += 1
            t = Times2(t)
        return t

    def parse_atom(self) -> OrderTerm:
        ch = self.peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            t = self.parse_sum()
            self.expect(")")
            return t
        if self.starts("fin"):
            self.pos += 3
            self.expect("(")
            self.skip()
            digits_at = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            digits = self.text[digits_at:self.pos]
            if not digits:
                self.error("expected a natural number")
            n = int(digits)
            if n > MAX_FINITE:
                self.error(f"fin({digits}) overflows the natural range", digits_at)
            self.expect(")")
            return Finite(n)
        if ch and ch in "ZQR":
            self.pos += 1
            return {"Z": INTS, "Q": RATS, "R": REALS}[ch]
        if self.starts("omega") or ch == "w":
            self.pos += 5 if self.starts("omega") else 1
            if self.peek() == "*" and not self.times_two_ahead():
                self.pos += 1
                return OMEGA_STAR
            return OMEGA
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}", start)

    def parse(self) -> OrderTerm:
        t = self.parse_sum()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return t


def parse_term(text: str) -> OrderTerm:
    """Parse ``text`` and return the normalized term.

    >>> parse_term("fin(3)+Z*2")
    Sum(parts=(Finite(n=3), Times2(base=Ints())))
    """
    return normalize(_Parser(text).parse())
