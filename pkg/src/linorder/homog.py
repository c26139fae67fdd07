"""Jump homogeneity of Q x 2.

Q x 2 stands in for R x 2 here: its J-quotient is Q, which is homogeneous,
and lifting a quotient automorphism by the identity on the bit gives an
automorphism of Q x 2.  In Q x 2 every (q, 0) is a left jump partner, every
(q, 1) a right one, and J pairs exactly (q, 0) with (q, 1), so a finite map
preserves J_left and J_right iff it preserves bits, and J iff sources share
a rational exactly when their targets do.

Quotient automorphisms are piecewise linear with rational breakpoints and
slope 1 outside them, so both directions evaluate exactly.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .elements import Elem, Pair, Rat, check_elem, format_elem, parse_elem, sort_key
from .errors import PartialMapError
from .terms import RATS, Times2

Q2 = Times2(RATS)

LESS, J_LEFT, J_RIGHT, J = "<", "J_left", "J_right", "J"


@dataclass(frozen=True)
class PartialMap:
    pairs: Tuple[Tuple[Elem, Elem], ...]

    def __post_init__(self):
        pairs = tuple((s, d) for s, d in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for s, d in pairs:
            check_elem(Q2, s)
            check_elem(Q2, d)
        srcs = [s for s, _ in pairs]
        dsts = [d for _, d in pairs]
        if len(set(srcs)) != len(srcs):
            raise PartialMapError("duplicate source in partial map")
        if len(set(dsts)) != len(dsts):
            raise PartialMapError("duplicate target in partial map")

    @classmethod
    def parse(cls, text: str) -> PartialMap:
        """Read ``src -> dst`` lines (blank lines and ``#`` comments ignored)."""
        pairs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            src, arrow, dst = line.partition("->")
            if not arrow:
                raise PartialMapError(f"line {lineno}: expected 'src -> dst'")
            pairs.append((parse_elem(Q2, src), parse_elem(Q2, dst)))
        return cls(tuple(pairs))

    def format(self) -> str:
        return "".join(
            f"{format_elem(Q2, s)} -> {format_elem(Q2, d)}\n" for s, d in self.pairs
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    pairs: Tuple[Tuple[Elem, Elem], ...]

    def to_json(self):
        return {
            "kind": self.kind,
            "pairs": [[format_elem(Q2, s), format_elem(Q2, d)] for s, d in self.pairs],
        }


def validate_partial_map(pm: PartialMap) -> Optional[Violation]:
    """First relation among <, J_left, J_right, J that ``pm`` fails to preserve."""
    for p, q in combinations(pm.pairs, 2):
        if (sort_key(p[0]) < sort_key(q[0])) != (sort_key(p[1]) < sort_key(q[1])):
            return Violation(LESS, (p, q))
    # each point of Q x 2 is in exactly one of J_left (bit 0) and J_right (bit 1);
    # a flipped bit is reported against the relation the source belongs to
    for p in pm.pairs:
        if p[0].bit != p[1].bit:
            return Violation(J_LEFT if p[0].bit == 0 else J_RIGHT, (p,))
    for p, q in combinations(pm.pairs, 2):
        if _j_related(p[0], q[0]) != _j_related(p[1], q[1]):
            return Violation(J, (p, q))
    return None


def _j_related(x: Pair, y: Pair) -> bool:
    return x.inner == y.inner and x.bit != y.bit


def quotient_map(x: Elem) -> Fraction:
    """The J-class of ``x``, represented by its rational coordinate."""
    check_elem(Q2, x)
    return x.inner.q


@dataclass(frozen=True)
class Automorphism:
    """Lift of an increasing piecewise-linear bijection of Q to Q x 2."""

    points: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        pts = tuple((Fraction(a), Fraction(b)) for a, b in self.points)
        for (a0, b0), (a1, b1) in zip(pts, pts[1:]):
            if not (a0 < a1 and b0 < b1):
                raise ValueError("control points must be strictly increasing in both coordinates")
        object.__setattr__(self, "points", pts)

    @property
    def slopes(self) -> List[Fraction]:
        inner = [(b1 - b0) / (a1 - a0)
                 for (a0, b0), (a1, b1) in zip(self.points, self.points[1:])]
        return [Fraction(1)] + inner + [Fraction(1)]

    @cached_property
    def _forward(self):
        return [a for a, _ in self.points], self.points

    @cached_property
    def _backward(self):
        flipped = tuple((b, a) for a, b in self.points)
        return [b for b, _ in flipped], flipped

    def base(self, q) -> Fraction:
        return _pl(*self._forward, Fraction(q))

    def base_inverse(self, r) -> Fraction:
        return _pl(*self._backward, Fraction(r))

    def apply(self, x: Elem, direction: str = "fwd") -> Elem:
        check_elem(Q2, x)
        if direction == "fwd":
            return Pair(Rat(self.base(x.inner.q)), x.bit)
        if direction == "inv":
            return Pair(Rat(self.base_inverse(x.inner.q)), x.bit)
        raise ValueError(f"direction must be 'fwd' or 'inv', not {direction!r}")

    def to_json(self):
        def s(q):
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        slopes = self.slopes
        return {
            "control_points": [[s(a), s(b)] for a, b in self.points],
            "left_slope": s(slopes[0]),
            "right_slope": s(slopes[-1]),
            "slopes": [s(m) for m in slopes],
        }


def _pl(xs: Sequence[Fraction], points: Sequence[Tuple[Fraction, Fraction]],
        q: Fraction) -> Fraction:
    if not points:
        return q
    k = bisect.bisect_right(xs, q)
    if k == 0:
        a, b = points[0]
        return b + (q - a)
    if k == len(points):
        a, b = points[-1]
        return b + (q - a)
    (a0, b0), (a1, b1) = points[k - 1], points[k]
    return b0 + (q - a0) * (b1 - b0) / (a1 - a0)


def extend_to_automorphism(pm: PartialMap) -> Automorphism:
    v = validate_partial_map(pm)
    if v is not None:
        raise PartialMapError(f"partial map does not preserve {v.kind}: {v.to_json()['pairs']}")
    points = sorted({(s.inner.q, d.inner.q) for s, d in pm.pairs})
    return Automorphism(tuple(points))
