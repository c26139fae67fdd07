"""Bijective enumeration of the rationals.

Positive rationals follow the Calkin-Wilf sequence (breadth-first order of
the Calkin-Wilf tree, position 1 is 1/1).  All of Q is enumerated as
0, cw(1), -cw(1), cw(2), -cw(2), ...  Both directions are exact and run in
time linear in the number of continued-fraction runs.

The position of p/q has as many bits as the sum of the partial quotients of
p/q, so rationals like 10**9 or 1/10**9 sit astronomically far out; indices
above ``MAX_INDEX_BITS`` bits raise OverflowError instead of exhausting memory.
"""

from fractions import Fraction
from itertools import count

MAX_INDEX_BITS = 1_000_000


def calkin_wilf(m: int) -> Fraction:
    """Return the rational at position ``m >= 1`` of the Calkin-Wilf sequence."""
    if m < 1:
        raise ValueError("Calkin-Wilf positions start at 1")
    a, b = 1, 1
    for bit in bin(m)[3:]:
        if bit == "0":
            b = a + b
        else:
            a = a + b
    return Fraction(a, b)


def calkin_wilf_index(q: Fraction) -> int:
    """Inverse of :func:`calkin_wilf` for a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("Calkin-Wilf index is defined for positive rationals")
    a, b = q.numerator, q.denominator
    runs = []  # (bit, length), collected from the leaf up to the root
    while a != b:
        if a < b:
            k = (b - 1) // a
            b -= k * a
            runs.append((0, k))
        else:
            k = (a - 1) // b
            a -= k * b
            runs.append((1, k))
    if sum(k for _, k in runs) > MAX_INDEX_BITS:
        raise OverflowError(f"enumeration index of {q} exceeds {MAX_INDEX_BITS} bits")
    m = 1
    for bit, k in reversed(runs):
        m = (m << k) | (((1 << k) - 1) if bit else 0)
    return m


def rational_at(n: int) -> Fraction:
    if n < 0:
        raise IndexError(n)
    if n == 0:
        return Fraction(0)
    q = calkin_wilf((n + 1) // 2)
    return q if n % 2 else -q


def rational_index(q: Fraction) -> int:
    q = Fraction(q)
    if q == 0:
        return 0
    m = calkin_wilf_index(abs(q))
    return 2 * m - 1 if q > 0 else 2 * m


def positive_rationals():
    for m in count(1):
        yield calkin_wilf(m)


def unit_rationals():
    """Every rational in the open interval (0, 1), each exactly once."""
    for x in positive_rationals():
        yield x / (1 + x)
