"""Candidate dense subsets and a budgeted density check.

A :class:`DenseSet` pairs a decidable membership predicate with, for
concrete terms, an enumeration of its members in the term's enumeration
order.  Density over an infinite order is not decidable in general, so
:func:`check_dense_sampled` is a semi-decision: a reported counterexample is
real, a pass is only evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Callable, Iterable, Iterator, Optional, Tuple

from .elements import (
    Elem, _bounds, between, check_elem, enumerate_elems, format_elem,
    index_of, pred, sort_key, succ,
)
from .errors import SymbolicTermError
from .terms import OrderTerm, format_term, is_symbolic


class DenseSet:
    """A subset of a term's carrier given by a membership predicate."""

    def __init__(self, term: OrderTerm, contains: Callable[[Elem], bool], label: str = ""):
        self.term = term
        self._contains = contains
        self.label = label
        self._reports = {}

    def __contains__(self, x) -> bool:
        check_elem(self.term, x)
        return bool(self._contains(x))

    @property
    def enumerable(self) -> bool:
        return not is_symbolic(self.term)

    def __iter__(self) -> Iterator[Elem]:
        if not self.enumerable:
            raise SymbolicTermError(
                f"dense set of {format_term(self.term)} is membership-only"
            )
        return (x for x in enumerate_elems(self.term) if self._contains(x))

    def index_of(self, x: Elem) -> int:
        """Position of member ``x`` in this set's own enumeration."""
        if x not in self:
            raise ValueError(f"{x!r} is not a member of {self.label or 'the set'}")
        n = index_of(self.term, x)
        return sum(1 for y in islice(enumerate_elems(self.term), n) if self._contains(y))

    def with_points(self, extra: Iterable[Elem], label: Optional[str] = None) -> DenseSet:
        extra = [e for e in extra if e is not None and not self._contains(e)]
        if not extra:
            return self
        for e in extra:
            check_elem(self.term, e)
        pts = set(extra)
        inner = self._contains
        return DenseSet(self.term, lambda x: x in pts or inner(x),
                        label or f"{self.label} + {len(pts)} point(s)")

    def with_endpoints(self) -> DenseSet:
        b = _bounds(self.term)
        return self.with_points([b.min, b.max], f"{self.label} + endpoints")

    def validated(self, mode="dense", pairs=200, budget=2000, seed=0) -> DensityReport:
        """Memoized :func:`check_dense_sampled` on this set."""
        key = (mode, pairs, budget, seed)
        if key not in self._reports:
            self._reports[key] = check_dense_sampled(self.term, self, pairs, budget, mode, seed)
        return self._reports[key]

    def __repr__(self):
        return f"DenseSet({format_term(self.term)}, {self.label!r})"


class CarrierSet(DenseSet):
    """The whole carrier, with O(1) indices.

    ``contains`` may be a structural predicate that is known to hold on every
    element of a concrete term; the test-suite checks that claim.
    """

    def __init__(self, term, contains=None, label="carrier"):
        super().__init__(term, contains or (lambda x: True), label)

    def __iter__(self):
        if not self.enumerable:
            return super().__iter__()
        return enumerate_elems(self.term)

    def index_of(self, x):
        check_elem(self.term, x)
        return index_of(self.term, x)


class OmitSet(DenseSet):
    """The carrier minus finitely many points."""

    def __init__(self, term, omitted: Iterable[Elem], label=None):
        omitted = frozenset(omitted)
        for e in omitted:
            check_elem(term, e)
        self.omitted = omitted
        names = ",".join(sorted(format_elem(term, e) for e in omitted))
        super().__init__(term, lambda x: x not in omitted, label or f"carrier - {{{names}}}")

    def index_of(self, x):
        if x not in self:
            raise ValueError(f"{x!r} is omitted")
        n = index_of(self.term, x)
        return n - sum(1 for e in self.omitted if index_of(self.term, e) < n)


def carrier(t: OrderTerm) -> CarrierSet:
    return CarrierSet(t)


def finite_set(t: OrderTerm, elems: Iterable[Elem], label=None) -> DenseSet:
    pts = frozenset(elems)
    for e in pts:
        check_elem(t, e)
    if label is None:
        label = "{" + ",".join(sorted(format_elem(t, e) for e in pts)) + "}"
    return DenseSet(t, lambda x: x in pts, label)


@dataclass
class DensityReport:
    passed: bool
    mode: str
    pairs_checked: int
    budget: int
    counterexample: Optional[Tuple[Elem, Elem]] = None
    reason: str = ""
    note: str = field(default="sampled check: a pass is evidence, not proof")

    def __bool__(self):
        return self.passed

    def to_json(self, t: OrderTerm):
        cx = None
        if self.counterexample is not None:
            cx = [format_elem(t, e) for e in self.counterexample]
        return {
            "passed": self.passed, "mode": self.mode, "pairs_checked": self.pairs_checked,
            "budget": self.budget, "counterexample": cx, "reason": self.reason,
            "evidence": self.note,
        }


def _sample_pairs(n: int, pairs: Optional[int], rng: random.Random):
    if pairs is None or pairs >= n * (n - 1) // 2:
        return list(combinations(range(n), 2))
    out = []
    for _ in range(pairs):
        i, j = rng.sample(range(n), 2)
        out.append((min(i, j), max(i, j)))
    return out


def _search(gen, dense: DenseSet, budget: int) -> Optional[Elem]:
    for z in islice(gen, budget):
        if dense._contains(z):
            return z
    return None


def check_dense_sampled(t: OrderTerm, dense: DenseSet, pairs: Optional[int] = 200,
                        budget: Optional[int] = 2000, mode: str = "dense",
                        seed: int = 0) -> DensityReport:
    """Budgeted density test of ``dense`` inside ``t``.

    Sampled elements are drawn from the first ``budget`` enumerated points
    (``None`` means the whole carrier, finite terms only).  Whether an open
    interval is empty is decided exactly through the neighbour structure; a
    witness inside a nonempty interval is searched for among the first
    ``budget`` points of a fair enumeration of that interval.

    ``mode="dense"``: each sampled nonempty interval (a, b) must meet the set.
    ``mode="left"``: each x outside the set must be the supremum of the
    members below it (no immediate predecessor, not the minimum, and every
    sampled y < x has a member in (y, x]).  ``mode="right"`` mirrors this.
    """
    if is_symbolic(t):
        raise SymbolicTermError(f"cannot sample {format_term(t)}; it contains R")
    if mode not in ("dense", "left", "right"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    prefix = list(islice(enumerate_elems(t), budget))
    search_budget = budget if budget is not None else max(len(prefix), 1)
    prefix.sort(key=sort_key)
    n = len(prefix)
    chosen = _sample_pairs(n, pairs, rng)
    report = DensityReport(True, mode, len(chosen), search_budget)

    def fail(a, b, reason):
        report.passed = False
        report.counterexample = (a, b)
        report.reason = reason
        return report

    if mode != "dense":
        b = _bounds(t)
        end = b.min if mode == "left" else b.max
        for x in prefix:
            if dense._contains(x):
                continue
            if x == end:
                return fail(x, x, f"{'minimum' if mode == 'left' else 'maximum'} is missing")
            if mode == "left" and pred(t, x) is not None:
                return fail(pred(t, x), x, "point with an immediate predecessor is missing")
            if mode == "right" and succ(t, x) is not None:
                return fail(x, succ(t, x), "point with an immediate successor is missing")

    for i, j in chosen:
        a, b = prefix[i], prefix[j]
        if mode == "dense":
            if succ(t, a) == b:
                continue
            if _search(between(t, a, b), dense, search_budget) is None:
                return fail(a, b, "no member found in a nonempty interval")
        elif mode == "left":
            if dense._contains(b):
                continue
            if _search(between(t, a, b), dense, search_budget) is None:
                return fail(a, b, "no member in (y, x]")
        else:
            if dense._contains(a):
                continue
            if _search(between(t, a, b), dense, search_budget) is None:
                return fail(a, b, "no member in [x, y)")
    return report
