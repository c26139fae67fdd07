import random
from fractions import Fraction
from itertools import combinations, islice

import pytest

from linorder.analysis import Jump, jumps
from linorder.dense import DenseSet, carrier, finite_set
from linorder.elements import (
    InSum, Int, Nat, Ordering, compare, enumerate_elems, index_of, random_element,
)
from linorder.embed import (
    StagedReal, certified_compare, embed_rationals, embed_to_reals, jump_bit,
    jump_rational, naive_e1, universal_embed,
)
from linorder.errors import DensityError, NotEmbeddableError, OrderViolationError
from linorder.terms import format_term, parse_term as P

from conftest import CATALOG


def test_back_and_forth_on_integers():
    t = P("Z")
    emb = embed_rationals(t, islice(enumerate_elems(t), 5))
    assert [emb[Int(k)] for k in (0, 1, -1, 2, -2)] == [0, 1, -1, 2, -2]


def test_single_point_goes_to_zero():
    emb = embed_rationals(P("fin(1)"), [Nat(0)])
    assert emb[Nat(0)] == 0


@pytest.mark.parametrize("t", CATALOG, ids=format_term)
def test_back_and_forth_prefix_all_pairs(t):
    elems = list(islice(enumerate_elems(t), 200))
    emb = embed_rationals(t, elems)
    for x, y in combinations(elems, 2):
        assert (compare(t, x, y) is Ordering.LT) == (emb[x] < emb[y])


def test_custom_table_must_preserve_order():
    t = P("fin(2)")
    with pytest.raises(OrderViolationError):
        embed_rationals(t, [Nat(0), Nat(1)], {Nat(0): 1, Nat(1): 0})
    emb = embed_rationals(t, [Nat(0), Nat(1)], {Nat(0): 0, Nat(1): 1})
    assert emb.strategy == "custom"


def test_naive_e1_on_rationals_is_exact():
    t = P("Q")
    elems = list(islice(enumerate_elems(t), 40))
    i = embed_rationals(t, elems)
    for q in elems[:10]:
        n = index_of(t, q)
        for stage in (n + 1, n + 5, 40):
            assert naive_e1(t, carrier(t), i, q, stage) == i[q]


def test_naive_e1_finite_max():
    t = P("fin(2)")
    d = finite_set(t, [Nat(0), Nat(1)])
    i = {Nat(0): 0, Nat(1): 1}
    for stage in (2, 3, 10):
        assert naive_e1(t, d, i, Nat(1), stage) == 1


def _fin2_plus_q():
    t = P("fin(2)+Q")
    d = DenseSet(t, lambda x: x.index == 1 or x == InSum(0, Nat(0)), "{0:0} + Q")
    return t, d


def test_jump_bit_examples():
    t, d = _fin2_plus_q()
    assert jump_bit(t, d, InSum(0, Nat(1))) == 1
    assert jump_bit(t, d, InSum(0, Nat(0))) == 0
    q = P("Q")
    assert all(jump_bit(q, carrier(q), x) == 0 for x in islice(enumerate_elems(q), 50))
    assert jump_bit(P("w"), carrier(P("w")), Nat(5)) == 0


def test_universal_embed_integers():
    t = P("Z")
    emb = universal_embed(t)
    rng = random.Random(1)
    for _ in range(100):
        x, y = random_element(t, rng), random_element(t, rng)
        c = certified_compare(t, emb, x, y)
        assert c.order == compare(t, x, y)
        assert c.via in ("gap", "identity")
        assert emb(x).bit == 0


def test_universal_embed_jump_fixture():
    t, d = _fin2_plus_q()
    emb = universal_embed(t, d)
    a, b = emb(InSum(0, Nat(0))), emb(InSum(0, Nat(1)))
    for n in (0, 5, 20, 40):
        assert a.real.lower(n) == b.real.lower(n)
    assert (a.bit, b.bit) == (0, 1)
    c = certified_compare(t, emb, InSum(0, Nat(0)), InSum(0, Nat(1)))
    assert c.order is Ordering.LT and c.via == "bit"


def test_universal_embed_single_point():
    emb = universal_embed(P("fin(1)"))
    p = emb(Nat(0))
    assert p.real.lower(0) == 1 and p.real.lower(30) == 1 and p.bit == 0


def test_universal_embed_rejects_sparse_set():
    t = P("fin(3)")
    with pytest.raises(DensityError):
        universal_embed(t, finite_set(t, [Nat(0), Nat(2)]))


def _z_element(n):
    return n // 2 + 1 if n % 2 else -(n // 2)


def test_integer_weights_against_direct_sum():
    t = P("Z")
    emb = universal_embed(t)
    for x in (-3, 0, 3, 7):
        for stage in (0, 3, 10, 25):
            expected = sum(Fraction(1, 2**n) for n in range(stage + 1) if _z_element(n) <= x)
            assert emb.real(Int(x)).lower(stage) == expected
    assert emb.real(Int(3)).lower(10) == Fraction(2037, 1024)


@pytest.mark.parametrize("text", ["Z", "Q", "Q*2", "w+fin(2)", "fin(2)+Q"])
def test_staged_real_monotone(text):
    t = P(text)
    emb = universal_embed(t)
    rng = random.Random(5)
    for _ in range(20):
        r = emb.real(random_element(t, rng))
        for n in range(0, 40, 3):
            v, w = r.lower(n), r.lower(n + 1)
            assert v <= w <= v + Fraction(1, 2**n)


def test_staged_real_interface():
    r = StagedReal(lambda n: Fraction(1) - Fraction(1, 2**n))
    assert r.upper(3) - r.lower(3) == Fraction(1, 8)
    assert r.to_json(4) == {"lower": "15/16", "err_exp": -4, "stage": 4}
    with pytest.raises(ValueError):
        r.lower(-1)


def test_certified_compare_examples():
    t = P("Z")
    emb = universal_embed(t)
    c = certified_compare(t, emb, Int(0), Int(1))
    assert c.order is Ordering.LT
    assert c.stage == index_of(t, Int(1))
    assert c.gap == Fraction(1, 2**index_of(t, Int(1)))
    assert certified_compare(t, emb, Int(4), Int(4)).order is Ordering.EQ
    assert certified_compare(t, emb, Int(1), Int(0)).order is Ordering.GT


def test_embed_to_reals_split_rationals():
    t = P("Q*2")
    emb = embed_to_reals(t)
    rng = random.Random(11)
    for _ in range(500):
        x, y = random_element(t, rng), random_element(t, rng)
        c = certified_compare(t, emb, x, y)
        assert c.order == compare(t, x, y)
        if x != y:
            assert c.via == "gap" and c.gap > 0


def test_embed_to_reals_finite():
    t = P("fin(3)")
    emb = embed_to_reals(t)
    vals = [emb(Nat(k)).lower(10) for k in range(3)]
    assert vals[0] < vals[1] < vals[2]


def test_embed_to_reals_split_reals_fails():
    with pytest.raises(NotEmbeddableError):
        embed_to_reals(P("R*2"))


def _below(real, q, max_stage=400):
    """Certify real < q by finding a stage whose upper bound is under q."""
    return any(real.upper(n) < q for n in range(0, max_stage, 4))


def _above(real, q, max_stage=400):
    return any(real.lower(n) > q for n in range(0, max_stage, 4))


@pytest.mark.parametrize("text", ["Z", "Q*2", "w", "w+fin(2)", "fin(5)", "(Q*2)*2"])
def test_jump_rationals_distinct_and_inside(text):
    t = P(text)
    emb = embed_to_reals(t)
    found = list(islice(jumps(t), 100))
    witnesses = [jump_rational(t, j, emb) for j in found]
    for j, q in zip(found, witnesses):
        assert _below(emb.real(j.left), q)
        assert _above(emb.real(j.right), q)
    assert len(set(witnesses)) == len(found)


def test_jump_rational_integers_example():
    t = P("Z")
    emb = embed_to_reals(t)
    q = jump_rational(t, Jump(Int(0), Int(1)), emb)
    assert _below(emb.real(Int(0)), q) and _above(emb.real(Int(1)), q)


def test_no_jumps_to_witness_in_rationals():
    assert list(jumps(P("Q"))) == []
