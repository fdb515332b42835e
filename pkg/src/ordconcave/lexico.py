"""Lexicographic composition of two set functions.

For a menu ``X`` the composition splits ``X`` into ``X1`` and ``X - X1`` and
keeps the lexicographically largest pair ``(u1(X1), u2(X - X1))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GroundSet, SetFunction, Subset, mask_of, submasks
from .errors import GroundMismatch, InfiniteBase
from .verify import PropertyReport, Violation, Witness, _require_small, scan_wconcavity


@dataclass(frozen=True, order=True)
class LexValue:
    """A pair of reals ordered lexicographically."""

    first: float
    second: float

    def __iter__(self):
        return iter((self.first, self.second))

    def __repr__(self) -> str:
        return f"({self.first:g}, {self.second:g})"


def lex_compare(p: LexValue, q: LexValue) -> int:
    """-1, 0 or 1 as ``p`` is below, equal to or above ``q``."""
    return (p > q) - (p < q)


class LexSetFunction:
    """The table ``X -> (max u1 over 2^X, u2 of the remainder)`` with recorded splits."""

    def __init__(self, u1: SetFunction, u2: SetFunction, table: tuple[LexValue, ...], splits: tuple[int, ...]):
        self.ground: GroundSet = u1.ground
        self.parents = (u1, u2)
        self._table = table
        self._splits = splits

    @property
    def n(self) -> int:
        return self.ground.n

    def evaluate(self, X: Subset) -> LexValue:
        return self._table[mask_of(self.ground, X)]

    __call__ = evaluate

    def split(self, X: Subset) -> Subset:
        """The part of ``X`` assigned to ``u1``."""
        return self.ground.from_bits(self._splits[mask_of(self.ground, X)])

    @property
    def table(self) -> tuple[LexValue, ...]:
        return self._table

    @property
    def splits(self) -> tuple[int, ...]:
        return self._splits

    def ranks(self) -> np.ndarray:
        """Dense ranks of the table values; they preserve every comparison."""
        order = sorted(set(self._table))
        rank = {v: float(i) for i, v in enumerate(order)}
        return np.array([rank[v] for v in self._table])


def lex_compose(u1: SetFunction, u2: SetFunction) -> LexSetFunction:
    """Compose ``u1`` and ``u2`` by exhaustive enumeration of the splits of every menu.

    Among equally good splits the one with the smallest ``u1``-part bitmask is
    recorded.
    """
    if u1.ground != u2.ground:
        raise GroundMismatch("compositions need a common ground set")
    if not (u1.full_domain and u2.full_domain):
        raise InfiniteBase("compositions need finite values everywhere")
    v1, v2 = u1.values, u2.values
    table, splits = [], []
    for X in range(1 << u1.n):
        best, best_split = None, 0
        for X1 in submasks(X):
            value = (v1[X1], v2[X & ~X1])
            if best is None or value > best:
                best, best_split = value, X1
        table.append(LexValue(float(best[0]), float(best[1])))
        splits.append(best_split)
    return LexSetFunction(u1, u2, tuple(table), tuple(splits))


def check_lex_wconcavity(f: LexSetFunction) -> PropertyReport:
    """Weak exchange property for the lexicographically ordered composition.

    The exchange clauses only compare values, so they are checked on the
    dense ranks of the composed table.
    """
    _require_small(f.n)
    hit = scan_wconcavity(f.ranks(), f.n)
    size = 1 << f.n
    if hit is None:
        return PropertyReport("lex-w-concavity", True, None, size * (size - 1) // 2)
    r, c = hit
    g = f.ground
    w = Witness(Violation.W_CONCAVITY, g.from_bits(r), g.from_bits(c), None, "no distinct exchange pair satisfies (i), (ii) or (iii) lexicographically")
    done = sum(size - 1 - k for k in range(r)) + (c - r)
    return PropertyReport("lex-w-concavity", False, w, done)
