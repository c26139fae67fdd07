import itertools

import pytest
from hypothesis import strategies as st

from linorder.elements import InSum, Nat, Pair
from linorder.terms import (
    Finite, INTS, OMEGA, OMEGA_STAR, RATS, REALS, Sum, Times2, normalize, parse_term,
)

CATALOG_TEXT = ["fin(5)", "w", "w*", "Z", "Q", "Z*2", "Q*2", "(Q*2)*2", "fin(2)+Q", "w+fin(2)"]
CATALOG = [parse_term(s) for s in CATALOG_TEXT]


@pytest.fixture(params=CATALOG_TEXT)
def catalog_term(request):
    return parse_term(request.param)


def finite_terms(max_depth=3):
    """All normalized terms of depth <= max_depth over fin(0..4) with binary sums and doublings.

    Atoms count as depth 1.
    """
    levels = [[Finite(n) for n in range(5)]]
    for _ in range(max_depth - 1):
        prev = list(itertools.chain.from_iterable(levels))
        new = [Times2(t) for t in prev]
        new += [Sum((a, b)) for a in prev for b in prev]
        levels.append(new)
    seen = {}
    for t in itertools.chain.from_iterable(levels):
        n = normalize(t)
        seen.setdefault(n, None)
    return list(seen)


def explicit_order(t):
    """The carrier of a finite term as an ordered list, built independently of
    compare/sort_key/enumeration: sums concatenate, doublings split each point."""
    if isinstance(t, Finite):
        return [Nat(k) for k in range(t.n)]
    if isinstance(t, Sum):
        return [InSum(i, e) for i, p in enumerate(t.parts) for e in explicit_order(p)]
    if isinstance(t, Times2):
        return [Pair(e, b) for e in explicit_order(t.base) for b in (0, 1)]
    raise TypeError(t)


atoms = st.sampled_from([Finite(0), Finite(1), Finite(2), Finite(3), Finite(4),
                         OMEGA, OMEGA_STAR, INTS, RATS])


def _extend(children):
    return st.one_of(
        children.map(Times2),
        st.lists(children, min_size=2, max_size=3).map(lambda ps: Sum(tuple(ps))),
    )


concrete_terms = st.recursive(atoms, _extend, max_leaves=6)
any_terms = st.recursive(st.one_of(atoms, st.just(REALS)), _extend, max_leaves=6)
