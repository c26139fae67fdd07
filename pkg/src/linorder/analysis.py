"""Classification of terms by structural recursion.

Everything here is computed from the shape of the term alone, so it works
for terms mentioning R as well.  The recursions for doublings are:

* ``jumps(b*2) = |b| + jumps(b)``: every (x, 0) < (x, 1) is a jump, plus
  (x, 1) < (x', 0) for each jump x < x' of b.
* ``b*2`` is separable iff b is separable and has countably many jumps:
  for a jump x < x' of b the intervals ((x, 0), (x', 0)) = {(x, 1)} and
  ((x, 1), (x', 1)) = {(x', 0)} force both points into every dense set.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterator, NamedTuple, Optional

from .cardinal import ALEPH0, Cardinal, Fin
from .dense import CarrierSet, DenseSet
from .elements import (
    Elem, Rat, _bounds, bounds, cardinality, check_elem, enumerate_elems, pred,
    require_concrete, succ,
)
from .errors import NotEmbeddableError, NotSeparableError, UncountableJumpsError
from .terms import (
    Finite, Ints, Omega, OmegaStar, OrderTerm, Rats, Reals, Sum, Times2,
    format_term,
)


class Jump(NamedTuple):
    left: Elem
    right: Elem


@dataclass(frozen=True)
class ClassReport:
    cardinality: Cardinal
    jump_cardinality: Cardinal
    separable: bool
    left_separable: bool
    right_separable: bool
    embeds_into_reals: bool
    has_min: bool
    has_max: bool

    def to_json(self):
        out = asdict(self)
        out["cardinality"] = str(self.cardinality)
        out["jump_cardinality"] = str(self.jump_cardinality)
        return out


class JumpRelations(NamedTuple):
    in_J_left: bool
    in_J_right: bool
    J_related: Optional[bool] = None


def jump_cardinality(t: OrderTerm) -> Cardinal:
    if isinstance(t, Finite):
        return Fin(max(t.n - 1, 0))
    if isinstance(t, (Omega, OmegaStar, Ints)):
        return ALEPH0
    if isinstance(t, (Rats, Reals)):
        return Fin(0)
    if isinstance(t, Sum):
        total = Fin(0)
        for p in t.parts:
            total = total + jump_cardinality(p)
        for left, right in zip(t.parts, t.parts[1:]):
            if _bounds(left).has_max and _bounds(right).has_min:
                total = total + Fin(1)
        return total
    return cardinality(t.base) + jump_cardinality(t.base)


def is_separable(t: OrderTerm) -> bool:
    if isinstance(t, Sum):
        return all(is_separable(p) for p in t.parts)
    if isinstance(t, Times2):
        return is_separable(t.base) and jump_cardinality(t.base) <= ALEPH0
    return True


def embeds_into_reals(t: OrderTerm) -> bool:
    return is_separable(t) and jump_cardinality(t) <= ALEPH0


def classify(t: OrderTerm) -> ClassReport:
    b = bounds(t)
    embeds = embeds_into_reals(t)
    return ClassReport(
        cardinality=cardinality(t),
        jump_cardinality=jump_cardinality(t),
        separable=is_separable(t),
        left_separable=embeds,
        right_separable=embeds,
        embeds_into_reals=embeds,
        has_min=b.has_min,
        has_max=b.has_max,
    )


def jump_relations(t: OrderTerm, x: Elem, y: Optional[Elem] = None) -> JumpRelations:
    """Membership of ``x`` in J_left / J_right, and J-relatedness to ``y``."""
    require_concrete(t)
    check_elem(t, x)
    related = None
    if y is not None:
        check_elem(t, y)
        related = succ(t, x) == y or pred(t, x) == y
    return JumpRelations(succ(t, x) is not None, pred(t, x) is not None, related)


def jumps(t: OrderTerm) -> Iterator[Jump]:
    """All jumps of ``t``, keyed by the enumeration order of their left partner."""
    count = jump_cardinality(t)
    if not count.is_countable:
        raise UncountableJumpsError(f"{format_term(t)} has uncountably many jumps")
    require_concrete(t)
    # with finitely many jumps, stop once all are out instead of scanning forever
    left = count.n if count.is_finite else None
    for x in enumerate_elems(t):
        if left == 0:
            return
        y = succ(t, x)
        if y is not None:
            yield Jump(x, y)
            if left is not None:
                left -= 1


def _canonical_member(t, x) -> bool:
    if isinstance(t, Reals):
        return isinstance(x, Rat)
    if isinstance(t, Sum):
        part = t.parts[x.index]
        b = _bounds(part)
        return _canonical_member(part, x.inner) or x.inner in (b.min, b.max)
    if isinstance(t, Times2):
        if _canonical_member(t.base, x.inner):
            return True
        if x.bit == 1:
            return succ(t.base, x.inner) is not None
        return pred(t.base, x.inner) is not None
    return True


def canonical_dense(t: OrderTerm) -> DenseSet:
    """The structural dense set: Q for R, unions over sums, and for ``b*2``
    the set D(b) x {0, 1} plus (x, 1) for left and (x, 0) for right jump
    partners x of b.  For concrete terms this is the whole carrier."""
    if not is_separable(t):
        raise NotSeparableError(f"{format_term(t)} has no countable dense subset")
    return CarrierSet(t, lambda x: _canonical_member(t, x), "canonical")


def sided_dense(t: OrderTerm, side: str) -> DenseSet:
    """Canonical set plus right partners and the minimum (``side="left"``),
    or plus left partners and the maximum (``side="right"``)."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    if not embeds_into_reals(t):
        raise NotEmbeddableError(
            f"{format_term(t)} has {jump_cardinality(t)} jumps; "
            f"its jump partners cannot be added to a countable set"
            if is_separable(t) else f"{format_term(t)} is not separable"
        )
    b = _bounds(t)
    if side == "left":
        def member(x):
            return _canonical_member(t, x) or x == b.min or pred(t, x) is not None
    else:
        def member(x):
            return _canonical_member(t, x) or x == b.max or succ(t, x) is not None
    return CarrierSet(t, member, f"{side}-dense")
