"""Points of a term and the order structure on them.

Element encodings, relative to the term they live in:

========== ============================ ===========
term       element                      text
========== ============================ ===========
fin(n), w  ``Nat(k)``                   ``k``
w*         ``NegInt(k)``, k <= -1       ``-k``
Z          ``Int(k)``                   ``k``
Q          ``Rat(p/q)``                 ``p/q``, ``k``
R          ``Rat`` or ``Irr(name)``     as Q, ``sqrt(n)``, ``pi``, ``e``
a + b      ``InSum(i, inner)``          ``i:inner``
a*2        ``Pair(inner, bit)``         ``inner.0``, ``inner.1``
========== ============================ ===========

``Irr`` names a few irrational reals so that membership questions about
terms containing R can be posed; no order-level operation accepts them.

Enumeration schemes are fixed: fin/w count up, w* counts down from -1, Z is
0, 1, -1, 2, -2, ..., Q follows :mod:`linorder.rationals`, sums visit their
parts round-robin (skipping exhausted finite parts) and doublings interleave
the two bits.  :func:`index_of` and :func:`element_at` are mutually inverse.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from itertools import count
from typing import Iterator, NamedTuple, Optional, Union

from . import rationals
from .cardinal import ALEPH0, CONTINUUM, Cardinal, Fin
from .errors import ElementSyntaxError, InvalidElementError, SymbolicTermError
from .terms import (
    Finite, Ints, Omega, OmegaStar, OrderTerm, Rats, Reals, Sum, Times2,
    format_term, is_symbolic,
)


@dataclass(frozen=True)
class Nat:
    k: int


@dataclass(frozen=True)
class NegInt:
    k: int


@dataclass(frozen=True)
class Int:
    k: int


@dataclass(frozen=True)
class Rat:
    q: Fraction

    def __post_init__(self):
        if type(self.q) is not Fraction:
            object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True)
class Irr:
    name: str


@dataclass(frozen=True)
class InSum:
    index: int
    inner: "Elem"


@dataclass(frozen=True)
class Pair:
    inner: "Elem"
    bit: int


Elem = Union[Nat, NegInt, Int, Rat, Irr, InSum, Pair]


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def require_concrete(t: OrderTerm) -> None:
    if is_symbolic(t):
        raise SymbolicTermError(
            f"{format_term(t)} contains R; only classification is available"
        )


# -- validity -----------------------------------------------------------------

def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def is_valid(t: OrderTerm, x) -> bool:
    if isinstance(t, Finite):
        return isinstance(x, Nat) and _is_int(x.k) and 0 <= x.k < t.n
    if isinstance(t, Omega):
        return isinstance(x, Nat) and _is_int(x.k) and x.k >= 0
    if isinstance(t, OmegaStar):
        return isinstance(x, NegInt) and _is_int(x.k) and x.k <= -1
    if isinstance(t, Ints):
        return isinstance(x, Int) and _is_int(x.k)
    if isinstance(t, Rats):
        return isinstance(x, Rat)
    if isinstance(t, Reals):
        return isinstance(x, Rat) or (isinstance(x, Irr) and _irr_ok(x.name))
    if isinstance(t, Sum):
        return (isinstance(x, InSum) and _is_int(x.index)
                and 0 <= x.index < len(t.parts)
                and is_valid(t.parts[x.index], x.inner))
    if isinstance(t, Times2):
        return isinstance(x, Pair) and x.bit in (0, 1) and is_valid(t.base, x.inner)
    raise TypeError(f"not an order term: {t!r}")


def check_elem(t: OrderTerm, x) -> None:
    if not is_valid(t, x):
        raise InvalidElementError(f"{x!r} is not an element of {format_term(t)}")


_IRR = re.compile(r"-?(?:pi|e|sqrt\((\d+)\))$")


def _irr_ok(name: str) -> bool:
    m = _IRR.match(name)
    if not m:
        return False
    if m.group(1) is None:
        return True
    n = int(m.group(1))
    return math.isqrt(n) ** 2 != n


# -- text format ----------------------------------------------------------------

_INT = re.compile(r"-?\d+$")
_RAT = re.compile(r"(-?\d+)(?:/(\d+))?$")


def format_elem(t: OrderTerm, x: Elem) -> str:
    check_elem(t, x)
    return _fmt(t, x)


def _fmt(t, x) -> str:
    if isinstance(x, (Nat, NegInt, Int)):
        return str(x.k)
    if isinstance(x, Rat):
        q = x.q
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    if isinstance(x, Irr):
        return x.name
    if isinstance(x, InSum):
        return f"{x.index}:{_fmt(t.parts[x.index], x.inner)}"
    return f"{_fmt(t.base, x.inner)}.{x.bit}"


def parse_elem(t: OrderTerm, text: str) -> Elem:
    """Read an element of ``t`` from its text form and validate it."""
    x = _parse(t, text.strip())
    if not is_valid(t, x):
        raise InvalidElementError(f"{text!r} is not an element of {format_term(t)}")
    return x


def _parse(t, s: str):
    if isinstance(t, Sum):
        head, sep, rest = s.partition(":")
        if not sep or not re.fullmatch(r"\d+", head):
            raise ElementSyntaxError(f"expected 'i:inner' for a sum element, got {s!r}")
        i = int(head)
        if i >= len(t.parts):
            raise InvalidElementError(f"part index {i} out of range in {s!r}")
        return InSum(i, _parse(t.parts[i], rest))
    if isinstance(t, Times2):
        inner, sep, bit = s.rpartition(".")
        if not sep or bit not in ("0", "1"):
            raise ElementSyntaxError(f"expected 'inner.0' or 'inner.1', got {s!r}")
        return Pair(_parse(t.base, inner), int(bit))
    if isinstance(t, (Rats, Reals)):
        m = _RAT.match(s)
        if m:
            den = int(m.group(2) or 1)
            if den == 0:
                raise ElementSyntaxError(f"zero denominator in {s!r}")
            return Rat(Fraction(int(m.group(1)), den))
        if isinstance(t, Reals) and _IRR.match(s):
            return Irr(s)
        raise ElementSyntaxError(f"expected a rational 'p/q', got {s!r}")
    if not _INT.match(s):
        raise ElementSyntaxError(f"expected an integer, got {s!r}")
    k = int(s)
    if isinstance(t, OmegaStar):
        return NegInt(k)
    if isinstance(t, Ints):
        return Int(k)
    return Nat(k)


# -- order ----------------------------------------------------------------------

def sort_key(x: Elem):
    """A Python-comparable key; keys of elements of one term compare like the order."""
    if isinstance(x, (Nat, NegInt, Int)):
        return x.k
    if isinstance(x, Rat):
        return x.q
    if isinstance(x, InSum):
        return (x.index, sort_key(x.inner))
    if isinstance(x, Pair):
        return (sort_key(x.inner), x.bit)
    raise SymbolicTermError(f"{x!r} has no computable position")


def compare(t: OrderTerm, x: Elem, y: Elem) -> Ordering:
    require_concrete(t)
    check_elem(t, x)
    check_elem(t, y)
    kx, ky = sort_key(x), sort_key(y)
    return Ordering.LT if kx < ky else Ordering.GT if kx > ky else Ordering.EQ


# -- sizes and enumeration --------------------------------------------------------

def size(t: OrderTerm) -> Optional[int]:
    """Number of points, or None for an infinite carrier."""
    require_concrete(t)
    return _size(t)


def _size(t) -> Optional[int]:
    if isinstance(t, Finite):
        return t.n
    if isinstance(t, Sum):
        sizes = [_size(p) for p in t.parts]
        return None if None in sizes else sum(sizes)
    if isinstance(t, Times2):
        s = _size(t.base)
        return None if s is None else 2 * s
    return None


def _rounds_before(sizes, r: int) -> int:
    return sum(r if s is None else min(s, r) for s in sizes)


def index_of(t: OrderTerm, x: Elem) -> int:
    """Position of ``x`` in the fixed enumeration of ``t``."""
    require_concrete(t)
    check_elem(t, x)
    return _index(t, x)


def _index(t, x) -> int:
    if isinstance(t, (Finite, Omega)):
        return x.k
    if isinstance(t, OmegaStar):
        return -x.k - 1
    if isinstance(t, Ints):
        return 2 * x.k - 1 if x.k > 0 else -2 * x.k
    if isinstance(t, Rats):
        return rationals.rational_index(x.q)
    if isinstance(t, Times2):
        return 2 * _index(t.base, x.inner) + x.bit
    sizes = [_size(p) for p in t.parts]
    r = _index(t.parts[x.index], x.inner)
    ahead = sum(1 for s in sizes[:x.index] if s is None or s > r)
    return _rounds_before(sizes, r) + ahead


def element_at(t: OrderTerm, n: int) -> Elem:
    """Inverse of :func:`index_of`; raises IndexError past a finite end."""
    require_concrete(t)
    s = _size(t)
    if n < 0 or (s is not None and n >= s):
        raise IndexError(f"index {n} out of range for {format_term(t)}")
    return _at(t, n)


def _at(t, n: int) -> Elem:
    if isinstance(t, (Finite, Omega)):
        return Nat(n)
    if isinstance(t, OmegaStar):
        return NegInt(-n - 1)
    if isinstance(t, Ints):
        return Int((n + 1) // 2 if n % 2 else -(n // 2))
    if isinstance(t, Rats):
        return Rat(rationals.rational_at(n))
    if isinstance(t, Times2):
        return Pair(_at(t.base, n // 2), n % 2)
    sizes = [_size(p) for p in t.parts]
    lo, hi = 0, n  # largest r with _rounds_before(r) <= n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _rounds_before(sizes, mid) <= n:
            lo = mid
        else:
            hi = mid - 1
    offset = n - _rounds_before(sizes, lo)
    active = [i for i, s in enumerate(sizes) if s is None or s > lo]
    j = active[offset]
    return InSum(j, _at(t.parts[j], lo))


def enumerate_elems(t: OrderTerm) -> Iterator[Elem]:
    """Every element of ``t`` exactly once, in index order."""
    require_concrete(t)
    s = _size(t)
    for n in count():
        if s is not None and n >= s:
            return
        yield _at(t, n)


# -- bounds and neighbours ----------------------------------------------------------

class Bounds(NamedTuple):
    has_min: bool
    has_max: bool
    min: Optional[Elem] = None
    max: Optional[Elem] = None


def bounds(t: OrderTerm) -> Bounds:
    """First and last element; the elements themselves only for concrete terms."""
    b = _bounds(t)
    if is_symbolic(t):
        return Bounds(b.has_min, b.has_max)
    return b


def _bounds(t) -> Bounds:
    if isinstance(t, Finite):
        if t.n == 0:
            return Bounds(False, False)
        return Bounds(True, True, Nat(0), Nat(t.n - 1))
    if isinstance(t, Omega):
        return Bounds(True, False, Nat(0))
    if isinstance(t, OmegaStar):
        return Bounds(False, True, None, NegInt(-1))
    if isinstance(t, (Ints, Rats, Reals)):
        return Bounds(False, False)
    if isinstance(t, Sum):
        first, last = _bounds(t.parts[0]), _bounds(t.parts[-1])
        k = len(t.parts) - 1
        return Bounds(
            first.has_min, last.has_max,
            InSum(0, first.min) if first.min is not None else None,
            InSum(k, last.max) if last.max is not None else None,
        )
    b = _bounds(t.base)
    return Bounds(
        b.has_min, b.has_max,
        Pair(b.min, 0) if b.min is not None else None,
        Pair(b.max, 1) if b.max is not None else None,
    )


def neighbor(t: OrderTerm, x: Elem, side: str) -> Optional[Elem]:
    """Immediate successor (``side="succ"``) or predecessor (``"pred"``), if any."""
    require_concrete(t)
    check_elem(t, x)
    if side == "succ":
        return succ(t, x)
    if side == "pred":
        return pred(t, x)
    raise ValueError(f"side must be 'succ' or 'pred', not {side!r}")


# succ/pred skip validation and tolerate R atoms (which have no neighbours);
# the classification layer relies on that for membership in symbolic terms.

def succ(t, x) -> Optional[Elem]:
    if isinstance(t, Finite):
        return Nat(x.k + 1) if x.k + 1 < t.n else None
    if isinstance(t, Omega):
        return Nat(x.k + 1)
    if isinstance(t, OmegaStar):
        return NegInt(x.k + 1) if x.k < -1 else None
    if isinstance(t, Ints):
        return Int(x.k + 1)
    if isinstance(t, (Rats, Reals)):
        return None
    if isinstance(t, Times2):
        if x.bit == 0:
            return Pair(x.inner, 1)
        s = succ(t.base, x.inner)
        return None if s is None else Pair(s, 0)
    part = t.parts[x.index]
    s = succ(part, x.inner)
    if s is not None:
        return InSum(x.index, s)
    if x.index + 1 < len(t.parts) and _bounds(part).max == x.inner:
        nxt = _bounds(t.parts[x.index + 1])
        if nxt.min is not None:
            return InSum(x.index + 1, nxt.min)
    return None


def pred(t, x) -> Optional[Elem]:
    if isinstance(t, Finite):
        return Nat(x.k - 1) if x.k > 0 else None
    if isinstance(t, Omega):
        return Nat(x.k - 1) if x.k > 0 else None
    if isinstance(t, OmegaStar):
        return NegInt(x.k - 1)
    if isinstance(t, Ints):
        return Int(x.k - 1)
    if isinstance(t, (Rats, Reals)):
        return None
    if isinstance(t, Times2):
        if x.bit == 1:
            return Pair(x.inner, 0)
        p = pred(t.base, x.inner)
        return None if p is None else Pair(p, 1)
    part = t.parts[x.index]
    p = pred(part, x.inner)
    if p is not None:
        return InSum(x.index, p)
    if x.index > 0 and _bounds(part).min == x.inner:
        prv = _bounds(t.parts[x.index - 1])
        if prv.max is not None:
            return InSum(x.index - 1, prv.max)
    return None


def cardinality(t: OrderTerm) -> Cardinal:
    if isinstance(t, Finite):
        return Fin(t.n)
    if isinstance(t, Reals):
        return CONTINUUM
    if isinstance(t, Sum):
        total = Fin(0)
        for p in t.parts:
            total = total + cardinality(p)
        return total
    if isinstance(t, Times2):
        c = cardinality(t.base)
        return c + c
    return ALEPH0


# -- points strictly between two elements ----------------------------------------------

def _interleave(gens):
    gens = list(gens)
    while gens:
        alive = []
        for g in gens:
            try:
                yield next(g)
            except StopIteration:
                continue
            alive.append(g)
        gens = alive


def between(t: OrderTerm, a: Optional[Elem] = None, b: Optional[Elem] = None
            ) -> Iterator[Elem]:
    """Every element strictly between ``a`` and ``b`` (None = unbounded), each once.

    The order of generation is fair: any fixed element of the interval shows
    up after finitely many steps, which is what budgeted witness searches need.
    """
    require_concrete(t)
    for e in (a, b):
        if e is not None:
            check_elem(t, e)
    if a is not None and b is not None and sort_key(a) >= sort_key(b):
        return iter(())
    return _between(t, a, b)


def _between(t, a, b) -> Iterator[Elem]:
    if isinstance(t, (Finite, Omega)):
        lo = 0 if a is None else a.k + 1
        if b is not None:
            hi = b.k
        elif isinstance(t, Finite):
            hi = t.n
        else:
            return (Nat(k) for k in count(lo))
        return (Nat(k) for k in range(lo, hi))
    if isinstance(t, OmegaStar):
        hi = -1 if b is None else b.k - 1
        if a is None:
            return (NegInt(k) for k in count(hi, -1))
        return (NegInt(k) for k in range(hi, a.k, -1))
    if isinstance(t, Ints):
        if a is not None and b is not None:
            return (Int(k) for k in range(a.k + 1, b.k))
        if a is not None:
            return (Int(k) for k in count(a.k + 1))
        if b is not None:
            return (Int(k) for k in count(b.k - 1, -1))
        return enumerate_elems(t)
    if isinstance(t, Rats):
        if a is not None and b is not None:
            w = b.q - a.q
            return (Rat(a.q + w * s) for s in rationals.unit_rationals())
        if a is not None:
            return (Rat(a.q + s) for s in rationals.positive_rationals())
        if b is not None:
            return (Rat(b.q - s) for s in rationals.positive_rationals())
        return enumerate_elems(t)
    if isinstance(t, Times2):
        return _between_times2(t, a, b)
    return _between_sum(t, a, b)


def _between_times2(t, a, b):
    if a is not None and b is not None and a.inner == b.inner:
        return
    if a is not None and a.bit == 0:
        yield Pair(a.inner, 1)
    if b is not None and b.bit == 1:
        yield Pair(b.inner, 0)
    lo = None if a is None else a.inner
    hi = None if b is None else b.inner
    for z in _between(t.base, lo, hi):
        yield Pair(z, 0)
        yield Pair(z, 1)


def _between_sum(t, a, b):
    i = 0 if a is None else a.index
    j = len(t.parts) - 1 if b is None else b.index
    gens = []
    for k in range(i, j + 1):
        lo = a.inner if (a is not None and k == i) else None
        hi = b.inner if (b is not None and k == j) else None
        gens.append(_tagged(k, _between(t.parts[k], lo, hi)))
    return _interleave(gens)


def _tagged(k, inner):
    for z in inner:
        yield InSum(k, z)


def random_element(t: OrderTerm, rng, bound: int = 2000) -> Elem:
    """An element whose enumeration index is uniform below ``bound``."""
    require_concrete(t)
    s = _size(t)
    limit = bound if s is None else min(s, bound)
    if limit <= 0:
        raise ValueError(f"{format_term(t)} is empty")
    return _at(t, rng.randrange(limit))
