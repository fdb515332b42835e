"""Argmax families over menus ``2^X`` and intervals ``[X, Y]`` (bitmask level)."""

from __future__ import annotations

import numpy as np

from .core import SetFunction, submasks


def subset_best(u: SetFunction) -> np.ndarray:
    """``best[X] = max{u(Y) : Y <= X, Y in Q}`` (``-inf`` when no such ``Y``)."""

    def compute():
        best = u.keys.copy()
        idx = np.arange(1 << u.n)
        for i in range(u.n):
            sel = idx[(idx >> i) & 1 == 1]
            best[sel] = np.maximum(best[sel], best[sel ^ (1 << i)])
        best.setflags(write=False)
        return best

    return u.cached("subset_best", compute)


def superset_best(u: SetFunction) -> np.ndarray:
    """``best[X] = max{u(Y) : X <= Y <= E, Y in Q}``."""

    def compute():
        best = u.keys.copy()
        idx = np.arange(1 << u.n)
        for i in range(u.n):
            sel = idx[(idx >> i) & 1 == 0]
            best[sel] = np.maximum(best[sel], best[sel | (1 << i)])
        best.setflags(write=False)
        return best

    return u.cached("superset_best", compute)


def interval_argmax(u: SetFunction, lower: int, upper: int) -> list[int]:
    """Maximizers of ``u`` over ``[lower, upper]`` within Q, ascending; empty if none."""
    keys = u.keys
    free = upper & ~lower
    members = [lower | s for s in submasks(free)]
    vals = keys[members]
    top = vals.max()
    if top == -np.inf:
        return []
    return [m for m, v in zip(members, vals) if v == top]


def menu_families(u: SetFunction) -> list[list[int]]:
    """``C_u(X)`` for every menu ``X``, indexed by bitmask."""

    def compute():
        best = subset_best(u)
        keys = u.keys
        out = []
        for X in range(1 << u.n):
            b = best[X]
            out.append([] if b == -np.inf else [s for s in submasks(X) if keys[s] == b])
        return out

    return u.cached("menu_families", compute)


def upper_families(u: SetFunction) -> list[list[int]]:
    """``C_u(X, E)`` for every ``X``."""

    def compute():
        best = superset_best(u)
        keys = u.keys
        full = u.ground.full_mask
        out = []
        for X in range(1 << u.n):
            b = best[X]
            out.append([] if b == -np.inf else [X | s for s in submasks(full & ~X) if keys[X | s] == b])
        return out

    return u.cached("upper_families", compute)


def canonical_choices(u: SetFunction) -> list[int]:
    """Smallest bitmask in each ``C_u(X)``."""
    return u.cached("canonical_choices", lambda: [fam[0] for fam in menu_families(u)])
