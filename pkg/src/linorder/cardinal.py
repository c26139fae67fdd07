"""Cardinality classes: finite counts, countably infinite, continuum."""

from __future__ import annotations

from dataclasses import dataclass

_RANK = {"fin": 0, "aleph0": 1, "continuum": 2}


@dataclass(frozen=True)
class Cardinal:
    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in _RANK:
            raise ValueError(f"unknown cardinal kind {self.kind!r}")
        if self.kind != "fin" and self.n:
            raise ValueError("only finite cardinals carry a count")
        if self.n < 0:
            raise ValueError("finite cardinal must be non-negative")

    @property
    def is_finite(self):
        return self.kind == "fin"

    @property
    def is_countable(self):
        return self.kind != "continuum"

    def _key(self):
        return (_RANK[self.kind], self.n)

    def __add__(self, other: Cardinal) -> Cardinal:
        if self.is_finite and other.is_finite:
            return Fin(self.n + other.n)
        return max(self, other)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __str__(self):
        return f"fin:{self.n}" if self.is_finite else self.kind

    def __repr__(self):
        return f"Fin({self.n})" if self.is_finite else self.kind.capitalize()

    @classmethod
    def parse(cls, text: str) -> Cardinal:
        if text.startswith("fin:"):
            return Fin(int(text[4:]))
        return cls(text)


def Fin(n: int) -> Cardinal:
    return Cardinal("fin", n)


ALEPH0 = Cardinal("aleph0")
CONTINUUM = Cardinal("continuum")
