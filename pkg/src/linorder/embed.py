"""Embeddings of countable terms into Q, R and R x 2.

Three constructions live here:

* :func:`embed_rationals` places points one at a time among the rationals
  (first point at 0, new extremes at max + 1 / min - 1, everything else at
  the midpoint of its placed neighbours).
* :func:`naive_e1` is the supremum map ``x -> sup{i(d) : d in D, d <= x}``
  for a caller-chosen order embedding ``i`` of D into Q, evaluated on a
  finite prefix of D.  Its injectivity depends on ``i``; see
  :mod:`linorder.fixture` for a choice of ``i`` under which it collides.
* :class:`WeightedEmbedding` replaces ``i`` by the weights ``2**-n`` of the
  enumeration ``d_0, d_1, ...`` of D: ``f(x) = sum{2**-n : d_n <= x}``.
  For x < y, ``f(y) - f(x)`` is at least ``2**-n`` for the first ``d_n`` in
  (x, y]; if (x, y] misses D then (x, y) is a jump, ``f(x) = f(y)``, and the
  bit (1 iff x is outside D with an immediate predecessor) separates them.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Callable, Dict, Iterable, List, Mapping, Optional

from .analysis import Jump, canonical_dense, embeds_into_reals, sided_dense
from .dense import CarrierSet, DenseSet, DensityReport
from .elements import (
    Elem, Ordering, check_elem, compare, format_elem, pred, require_concrete,
    sort_key, succ,
)
from .errors import (
    DensityError, EmbeddingError, NoLowerWitnessError, OrderViolationError,
)
from .terms import OrderTerm

DEFAULT_PAIRS = 200
DEFAULT_BUDGET = 2000
MAX_SEPARATOR_SEARCH = 1_000_000


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RationalEmbedding:
    """A growing order-preserving map from placed elements to Q."""

    def __init__(self, term: OrderTerm, table: Optional[Mapping[Elem, Fraction]] = None):
        require_concrete(term)
        self.term = term
        self.strategy = "midpoint" if table is None else "custom"
        self.placed: Dict[Elem, Fraction] = {}
        self._keys: list = []
        self._order: List[Elem] = []
        self._table = None
        if table is not None:
            self._table = {x: Fraction(q) for x, q in table.items()}
            _check_order_preserving(term, self._table)

    def place(self, x: Elem) -> Fraction:
        if x in self.placed:
            return self.placed[x]
        check_elem(self.term, x)
        k = sort_key(x)
        pos = bisect.bisect_left(self._keys, k)
        if self._table is not None:
            if x not in self._table:
                raise EmbeddingError(f"custom table has no image for {x!r}")
            q = self._table[x]
        elif not self._order:
            q = Fraction(0)
        elif pos == len(self._order):
            q = self.placed[self._order[-1]] + 1
        elif pos == 0:
            q = self.placed[self._order[0]] - 1
        else:
            lo, hi = self.placed[self._order[pos - 1]], self.placed[self._order[pos]]
            q = (lo + hi) / 2
        self._keys.insert(pos, k)
        self._order.insert(pos, x)
        self.placed[x] = q
        return q

    def __getitem__(self, x: Elem) -> Fraction:
        return self.placed[x]

    def __contains__(self, x) -> bool:
        return x in self.placed

    def __len__(self):
        return len(self.placed)

    def sorted_items(self):
        return [(x, self.placed[x]) for x in self._order]


def _check_order_preserving(t, table):
    items = sorted(table.items(), key=lambda kv: sort_key(kv[0]))
    for (x, qx), (y, qy) in zip(items, items[1:]):
        if not qx < qy:
            raise OrderViolationError(
                f"custom table maps {format_elem(t, x)} < {format_elem(t, y)} "
                f"to {_frac_str(qx)} >= {_frac_str(qy)}", (x, y))


def embed_rationals(t: OrderTerm, elems: Iterable[Elem],
                    table: Optional[Mapping[Elem, Fraction]] = None) -> RationalEmbedding:
    """Back-and-forth placement of ``elems`` into Q (or a validated custom table)."""
    emb = RationalEmbedding(t, table)
    for x in elems:
        emb.place(x)
    return emb


class StagedReal:
    """A real given by nondecreasing lower approximants.

    ``lower(n)`` is a rational v_n with v_n <= value <= v_n + 2**-n.
    """

    def __init__(self, lower: Callable[[int], Fraction]):
        self._lower = lower

    def lower(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("stage must be non-negative")
        return self._lower(n)

    def upper(self, n: int) -> Fraction:
        return self._lower(n) + Fraction(1, 2**n)

    def to_json(self, n: int):
        return {"lower": _frac_str(self.lower(n)), "err_exp": -n, "stage": n}


@dataclass(frozen=True)
class SplitPoint:
    real: StagedReal
    bit: int

    def to_json(self, n: int):
        out = self.real.to_json(n)
        out["bit"] = self.bit
        return out


@dataclass(frozen=True)
class Comparison:
    order: Ordering
    stage: Optional[int]
    gap: Optional[Fraction]
    via: str  # "identity", "gap" or "bit"

    def to_json(self):
        return {
            "order": self.order.name, "stage": self.stage,
            "gap": None if self.gap is None else _frac_str(self.gap), "via": self.via,
        }


def jump_bit(t: OrderTerm, dense: DenseSet, x: Elem) -> int:
    """1 iff ``x`` lies outside the set and has an immediate predecessor."""
    require_concrete(t)
    check_elem(t, x)
    return int(not dense._contains(x) and pred(t, x) is not None)


class WeightedEmbedding:
    """``x -> sum{2**-n : d_n <= x}`` over the enumeration of a dense set.

    With ``split=True`` each image carries the jump bit and the map is an
    order embedding into R x 2; with ``split=False`` images are plain reals,
    which is injective once every right jump partner is in the set.
    """

    def __init__(self, term: OrderTerm, dense: DenseSet, split: bool = True,
                 evidence: Optional[DensityReport] = None):
        self.term = term
        self.dense = dense
        self.split = split
        self.evidence = evidence
        self._members: List[Elem] = []
        self._keys: list = []
        self._source = iter(dense)
        self._exhausted = False

    def _grow(self, n: int) -> int:
        """Make the first ``n`` members available; return how many exist."""
        while len(self._keys) < n and not self._exhausted:
            batch = list(islice(self._source, max(64, n - len(self._keys))))
            if not batch:
                self._exhausted = True
            self._members.extend(batch)
            self._keys.extend(sort_key(d) for d in batch)
        return min(n, len(self._keys))

    def member(self, n: int) -> Optional[Elem]:
        return self._members[n] if self._grow(n + 1) > n else None

    def _lower(self, key, n: int) -> Fraction:
        m = self._grow(n + 1)
        acc = 0
        for i, k in enumerate(self._keys[:m]):
            if k <= key:
                acc |= 1 << (n - i)
        return Fraction(acc, 1 << n)

    def real(self, x: Elem) -> StagedReal:
        check_elem(self.term, x)
        key = sort_key(x)
        return StagedReal(lambda n: self._lower(key, n))

    def bit(self, x: Elem) -> int:
        return jump_bit(self.term, self.dense, x) if self.split else 0

    def __call__(self, x: Elem):
        if self.split:
            return SplitPoint(self.real(x), self.bit(x))
        return self.real(x)

    def separator(self, lo: Elem, hi: Elem) -> Optional[int]:
        """Index of the first member in (lo, hi], or None if there is none."""
        if succ(self.term, lo) == hi:
            if not self.dense._contains(hi):
                return None
        klo, khi = sort_key(lo), sort_key(hi)
        n = 0
        while n < MAX_SEPARATOR_SEARCH:
            avail = self._grow(n + 256)
            for i in range(n, avail):
                if klo < self._keys[i] <= khi:
                    return i
            if avail < n + 256:
                return None
            n = avail
        raise EmbeddingError(
            f"no member of {self.dense.label} found in "
            f"({format_elem(self.term, lo)}, {format_elem(self.term, hi)}] "
            f"within {MAX_SEPARATOR_SEARCH} steps")

    def compare(self, x: Elem, y: Elem) -> Comparison:
        order = compare(self.term, x, y)
        if order is Ordering.EQ:
            return Comparison(Ordering.EQ, None, None, "identity")
        lo, hi = (x, y) if order is Ordering.LT else (y, x)
        n = self.separator(lo, hi)
        if n is not None:
            gap = Fraction(1, 2**n)
            # the difference of lower approximants at stage n already counts d_n
            assert self.real(hi).lower(n) - self.real(lo).lower(n) >= gap
            return Comparison(order, n, gap, "gap")
        if not self.split:
            raise EmbeddingError(
                f"{format_elem(self.term, lo)} and {format_elem(self.term, hi)} "
                f"get the same real: the set misses a right jump partner")
        if (self.bit(lo), self.bit(hi)) != (0, 1):
            raise DensityError(
                f"({format_elem(self.term, lo)}, {format_elem(self.term, hi)}] "
                f"misses {self.dense.label} but the bits do not separate them",
                (lo, hi))
        return Comparison(order, None, None, "bit")


def _validated(t, dense, pairs, budget, seed, modes=("dense",)):
    report = None
    for mode in modes:
        report = dense.validated(mode, pairs, budget, seed)
        if not report:
            cx = report.counterexample
            raise DensityError(
                f"{dense.label} failed the {mode} check on "
                f"({format_elem(t, cx[0])}, {format_elem(t, cx[1])}): {report.reason}", cx)
    return report


def universal_embed(t: OrderTerm, dense: Optional[DenseSet] = None,
                    pairs: int = DEFAULT_PAIRS, budget: int = DEFAULT_BUDGET,
                    seed: int = 0) -> WeightedEmbedding:
    """Order embedding of a countable term into R x 2.

    ``dense`` defaults to the canonical dense set; existing endpoints are
    added to it, and the result is density-checked (evidence level).
    """
    require_concrete(t)
    dense = (dense or canonical_dense(t)).with_endpoints()
    evidence = _validated(t, dense, pairs, budget, seed)
    return WeightedEmbedding(t, dense, split=True, evidence=evidence)


def embed_to_reals(t: OrderTerm, pairs: int = DEFAULT_PAIRS, budget: int = DEFAULT_BUDGET,
                   seed: int = 0) -> WeightedEmbedding:
    """Order embedding into R using the union of the left and right dense sets."""
    left, right = sided_dense(t, "left"), sided_dense(t, "right")
    require_concrete(t)
    dense = CarrierSet(t, lambda x: left._contains(x) or right._contains(x), "two-sided")
    evidence = _validated(t, dense, pairs, budget, seed, ("dense", "left", "right"))
    return WeightedEmbedding(t, dense, split=False, evidence=evidence)


def certified_compare(t: OrderTerm, emb: WeightedEmbedding, x: Elem, y: Elem) -> Comparison:
    if emb.term != t:
        raise EmbeddingError("embedding belongs to a different term")
    return emb.compare(x, y)


def naive_e1(t: OrderTerm, dense: DenseSet, i, x: Elem, stage: int,
             check: bool = True) -> Fraction:
    """``max{i[d] : d among the first `stage` members of D, d <= x}``.

    ``i`` is anything indexable by elements (a :class:`RationalEmbedding`,
    a dict, ...).  Endpoints are added to D first.  There is no error bound:
    the limit in ``stage`` is the supremum construction itself, collisions
    included.
    """
    require_concrete(t)
    check_elem(t, x)
    dense = dense.with_endpoints()
    if check:
        _validated(t, dense, DEFAULT_PAIRS, DEFAULT_BUDGET, 0)
    key = sort_key(x)
    best = None
    for d in islice(dense, stage):
        if sort_key(d) <= key:
            v = Fraction(i[d])
            if best is None or v > best:
                best = v
    if best is None:
        raise NoLowerWitnessError(
            f"no member <= {format_elem(t, x)} among the first {stage} members of D")
    return best


def jump_rational(t: OrderTerm, j: Jump, emb: WeightedEmbedding) -> Fraction:
    """A rational strictly between the images of a jump's two partners.

    With d_n the first member in (left, right], f(right) >= f(left) + 2**-n
    while f(left) <= v_{n+1}(left) + 2**-(n+1); the midpoint of that
    certified window is returned.  Disjoint jumps have disjoint windows.
    """
    if emb.term != t:
        raise EmbeddingError("embedding belongs to a different term")
    if emb.split or not embeds_into_reals(t):
        raise EmbeddingError("jump_rational needs the embedding into R (embed_to_reals)")
    n = emb.separator(j.left, j.right)
    if n is None:
        raise EmbeddingError("jump partners are not separated by the embedding")
    v = emb.real(j.left).lower(n + 1)
    return v + (Fraction(1, 2**(n + 1)) + Fraction(1, 2**n)) / 2
