"""A regression fixture where the supremum map collides.

Order: ``w + fin(2)``, i.e. a_0 < a_1 < ... followed by x < b, with
x = ``1:0`` and b = ``1:1``.  D is everything except x; it is dense because
every interval containing x also contains some a_n or is pinned by b.  The
order embedding ``i(a_n) = -2**-n``, ``i(b) = 0`` sends the a_n towards i(b),
so sup{i(d) : d <= x} = 0 = i(b).  Neither point gets bit 1 (x has no
immediate predecessor, b is in D), so both land on (0, 0).

Whether some canonical choice of ``i`` would rule this out in general is
left open here; the weighted-sum embedding does not depend on one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .dense import DensityReport, OmitSet
from .elements import InSum, Nat, compare, Ordering
from .embed import Comparison, _frac_str, jump_bit, naive_e1, universal_embed
from .terms import parse_term

TERM_TEXT = "w+fin(2)"
STAGES = (4, 8, 16, 32, 64)


class AdversarialTable:
    """Order embedding of D into Q with i(0:n) = -2**-n and i(1:1) = 0."""

    def __getitem__(self, d):
        if d == InSum(1, Nat(1)):
            return Fraction(0)
        if d.index == 0:
            return -Fraction(1, 2**d.inner.k)
        raise KeyError(d)


@dataclass
class CollisionRecord:
    term: str
    x: str
    b: str
    density: DensityReport
    naive_x_stages: List[Tuple[int, Fraction]]
    naive_x: Tuple[Fraction, int]
    naive_b: Tuple[Fraction, int]
    naive_collision: bool
    robust: Comparison
    robust_separated: bool
    robust_x_lower: Fraction
    robust_b_lower: Fraction
    precision: int

    def to_json(self):
        def point(p):
            return {"real": _frac_str(p[0]), "bit": p[1]}
        return {
            "term": self.term,
            "x": self.x,
            "b": self.b,
            "D": "carrier - {1:0}",
            "D_density_check": self.density.to_json(parse_term(self.term)),
            "naive_x_stages": [[n, _frac_str(v)] for n, v in self.naive_x_stages],
            "naive_x": point(self.naive_x),
            "naive_b": point(self.naive_b),
            "naive_collision": self.naive_collision,
            "robust_compare": self.robust.to_json(),
            "robust_separated": self.robust_separated,
            "robust_x": {"lower": _frac_str(self.robust_x_lower), "err_exp": -self.precision},
            "robust_b": {"lower": _frac_str(self.robust_b_lower), "err_exp": -self.precision},
        }


def collision_fixture(precision: int = 16) -> CollisionRecord:
    t = parse_term(TERM_TEXT)
    x, b = InSum(1, Nat(0)), InSum(1, Nat(1))
    dense = OmitSet(t, [x])
    density = dense.validated("dense", pairs=None, budget=50)
    i = AdversarialTable()

    # i is order preserving on the members it is asked about
    members = [InSum(0, Nat(n)) for n in range(64)] + [b]
    images = [i[d] for d in members]
    assert all(p < q for p, q in zip(images, images[1:]))

    stages = [(n, naive_e1(t, dense, i, x, n, check=False)) for n in STAGES]
    # every d <= x lies below b, so i(b) = 0 bounds the sup; the staged values
    # -2**-k close the gap, hence the sup is exactly 0
    limit = i[b]
    assert all(v < limit for _, v in stages)
    gaps = [limit - v for _, v in stages]
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
    assert all(limit - v == Fraction(1, 2**(n - 2)) for n, v in stages)

    naive_x = (limit, jump_bit(t, dense, x))
    naive_b = (naive_e1(t, dense, i, b, STAGES[-1], check=False), jump_bit(t, dense, b))

    robust = universal_embed(t, dense)
    cmp = robust.compare(x, b)
    assert compare(t, x, b) is Ordering.LT
    return CollisionRecord(
        term=TERM_TEXT, x="1:0", b="1:1", density=density,
        naive_x_stages=stages, naive_x=naive_x, naive_b=naive_b,
        naive_collision=naive_x == naive_b,
        robust=cmp,
        robust_separated=cmp.order is Ordering.LT and cmp.gap is not None and cmp.gap > 0,
        robust_x_lower=robust.real(x).lower(precision),
        robust_b_lower=robust.real(b).lower(precision),
        precision=precision,
    )
