"""Maximizing ordinally (w-)concave set functions.

* :func:`hill_climb` -- local search over the exchange neighbourhood; any local
  maximizer of an ordinally w-concave function is global.
* :func:`maximize_contractive` -- grows a set from the empty set one best
  element at a time, evaluating the function O(n^2) times; exact for
  ordinally concave functions.
* :func:`improving_path` and :func:`prefix_chain` -- the structured ascent
  sequences guaranteed by the exchange properties.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import ExchangeElement, ExtValue, NEG_INF, SetFunction, Subset, mask_of, neighbor_masks, popcount, submasks
from .errors import BadMaximizer, NotWConcave, OutsideDomain
from .verify import PropertyReport, Violation, Witness, argmax_family, check_ordinal_wconcavity


class ClimbMode(enum.Enum):
    FIRST_IMPROVEMENT = "first"
    STEEPEST = "steepest"


class Quantifier(enum.Enum):
    EXISTS = "exists"
    FOR_ALL = "forall"


class _Counter:
    """Evaluation oracle that counts calls."""

    def __init__(self, u: SetFunction):
        self.u = u
        self.calls = 0

    def __call__(self, bits: int) -> ExtValue:
        self.calls += 1
        return self.u.at(bits)


@dataclass
class ClimbTrace:
    steps: list[tuple[Subset, Subset, ExtValue]] = field(default_factory=list)
    evaluations: int = 0

    @property
    def updates(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ImprovingPath:
    anchor: Subset
    sets: tuple[Subset, ...]
    moves: tuple[tuple[ExchangeElement, ExchangeElement], ...]

    def __len__(self) -> int:
        return len(self.moves)


def _better(a: ExtValue, b: ExtValue) -> bool:
    """``a > b`` with -inf below every real."""
    if a is NEG_INF:
        return False
    return b is NEG_INF or a > b


def hill_climb(u: SetFunction, start: Subset, mode: ClimbMode | str = ClimbMode.FIRST_IMPROVEMENT) -> tuple[Subset, ClimbTrace]:
    """Move to a strictly better neighbour until none exists.

    ``FIRST_IMPROVEMENT`` takes the first improving neighbour in canonical
    neighbourhood order; ``STEEPEST`` the first neighbour of largest value.
    The returned set is a local maximizer over its neighbourhood within the
    effective domain.
    """
    mode = ClimbMode(mode)
    g = u.ground
    oracle = _Counter(u)
    Y = mask_of(g, start)
    value = oracle(Y)
    if value is NEG_INF:
        raise OutsideDomain(f"start {start!r} is outside the effective domain")
    trace = ClimbTrace()
    while True:
        chosen, chosen_value = None, value
        for Z, _, _ in neighbor_masks(Y, u.n):
            if Z == Y:
                continue
            z = oracle(Z)
            if _better(z, chosen_value):
                chosen, chosen_value = Z, z
                if mode is ClimbMode.FIRST_IMPROVEMENT:
                    break
        if chosen is None:
            break
        trace.steps.append((g.from_bits(Y), g.from_bits(chosen), chosen_value))
        Y, value = chosen, chosen_value
    trace.evaluations = oracle.calls
    return g.from_bits(Y), trace


def maximize_contractive(u: SetFunction) -> tuple[Subset, int]:
    """Greedy growth from the empty set through successive contractions.

    While some ``x`` outside ``W`` has ``u(W + x) > u(W)``, add the one with
    the largest ``u(W + x)`` (smallest label on ties).  ``u(W)`` is carried
    over from the previous scan, so the number of evaluations is at most
    ``1 + n(n+1)/2``.  Returns ``(W, evaluations)``.
    """
    oracle = _Counter(u)
    current = oracle(0)
    if current is NEG_INF:
        raise OutsideDomain("the empty set is outside the effective domain")
    W = 0
    while True:
        best, best_value = None, NEG_INF
        for i in range(u.n):
            if W >> i & 1:
                continue
            value = oracle(W | 1 << i)
            if _better(value, best_value):
                best, best_value = i, value
        if best is None or not _better(best_value, current):
            break
        W |= 1 << best
        current = best_value
    return u.ground.from_bits(W), oracle.calls


def _nearest_maximizer(u: SetFunction, start: int) -> int:
    maxima = argmax_family(u).masks
    return min(maxima, key=lambda z: (popcount(start ^ z), z))


def improving_path(u: SetFunction, start: Subset, *, check: bool = True) -> ImprovingPath:
    """Strictly increasing exchange path from ``start`` to a global maximizer.

    The anchor is the nearest maximizer (smallest bitmask on ties); every step
    swaps ``y`` in ``Y - anchor`` (or null) for ``x`` in ``anchor - Y`` (or null),
    taking the first improving exchange with ``y`` outer and ``x`` inner.
    """
    g = u.ground
    if check and not check_ordinal_wconcavity(u).holds:
        raise NotWConcave("improving paths need an ordinally w-concave function")
    Y = mask_of(g, start)
    if not u.domain[Y]:
        raise OutsideDomain(f"start {start!r} is outside the effective domain")
    anchor = _nearest_maximizer(u, Y)
    maxima = set(argmax_family(u).masks)
    sets, moves = [Y], []
    while Y not in maxima:
        drop = [None, *(i for i in range(u.n) if (Y & ~anchor) >> i & 1)]
        take = [None, *(i for i in range(u.n) if (anchor & ~Y) >> i & 1)]
        here = u.at(Y)
        for y, x in itertools.product(drop, take):
            if y is None and x is None:
                continue
            Z = Y
            if y is not None:
                Z &= ~(1 << y)
            if x is not None:
                Z |= 1 << x
            if _better(u.at(Z), here):
                break
        else:
            raise NotWConcave(f"no improving exchange from {g.from_bits(Y)!r} toward {g.from_bits(anchor)!r}")
        moves.append((None if y is None else g.labels[y], None if x is None else g.labels[x]))
        sets.append(Z)
        Y = Z
    return ImprovingPath(g.from_bits(anchor), tuple(g.from_bits(s) for s in sets), tuple(moves))


def prefix_chain(u: SetFunction, Z: Subset, quantifier: Quantifier | str = Quantifier.EXISTS) -> PropertyReport:
    """Test strictly increasing values along the prefixes of orderings of ``Z``.

    ``EXISTS`` asks for one ordering, ``FOR_ALL`` for every ordering.  ``Z``
    must be a global maximizer of minimum cardinality.
    """
    quantifier = Quantifier(quantifier)
    g = u.ground
    z = mask_of(g, Z)
    maxima = argmax_family(u).masks
    if not u.domain[0]:
        raise OutsideDomain("the empty set is outside the effective domain")
    if z not in maxima or popcount(z) != min(popcount(m) for m in maxima):
        raise BadMaximizer(f"{Z!r} is not a minimum-cardinality maximizer")
    keys = u.keys
    name = f"prefix-chain-{quantifier.value}"
    edges = [(S, i) for S in submasks(z) for i in range(u.n) if S >> i & 1]

    if quantifier is Quantifier.FOR_ALL:
        # every ordering increases iff every covering step inside 2^Z does
        for S, i in edges:
            if not keys[S] > keys[S & ~(1 << i)]:
                head = g.labels_of(S & ~(1 << i))
                ordering = (*head, g.labels[i], *g.labels_of(z & ~S))
                detail = f"u does not increase when adding {g.labels[i]} to {g.from_bits(S & ~(1 << i))!r}"
                w = Witness(Violation.GENERIC, Z, None, g.labels[i], detail, ordering)
                return PropertyReport(name, False, w, len(edges))
        return PropertyReport(name, True, None, len(edges))

    if increasing_ordering(u, Z) is not None:
        return PropertyReport(name, True, None, len(edges))
    w = Witness(Violation.GENERIC, Z, None, None, "no ordering has strictly increasing prefix values")
    return PropertyReport(name, False, w, len(edges))


def increasing_ordering(u: SetFunction, Z: Subset) -> tuple[str, ...] | None:
    """The first ordering of ``Z`` (in label order) with strictly increasing prefix values, if any."""
    keys = u.keys
    g = u.ground
    reach: dict[int, tuple[int, ...]] = {0: ()}
    for S in sorted(submasks(mask_of(g, Z)), key=popcount):
        options = [
            (*reach[S & ~(1 << i)], i)
            for i in range(u.n)
            if S >> i & 1 and S & ~(1 << i) in reach and keys[S] > keys[S & ~(1 << i)]
        ]
        if options:
            reach[S] = min(options)
    found = reach.get(Z.bits)
    return None if found is None else tuple(g.labels[i] for i in found)


def local_maximizers(u: SetFunction) -> list[Subset]:
    """Domain sets that are best within their own neighbourhood."""
    keys = u.keys
    out = []
    for X in np.flatnonzero(u.domain):
        X = int(X)
        if all(keys[m] <= keys[X] for m, _, _ in neighbor_masks(X, u.n)):
            out.append(u.ground.from_bits(X))
    return out
