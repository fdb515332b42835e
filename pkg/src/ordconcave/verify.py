"""Exhaustive checkers for ordinal (w-)concavity and related exchange properties.

The pair checkers scan ``(X, X')`` in ascending bitmask order and report the
first violation found, so results never depend on how the work is split.
Sets outside the effective domain are skipped as pair members but still take
part as exchange targets, where their value -inf loses every comparison.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from ._menus import interval_argmax, menu_families
from .core import (
    ExchangeElement,
    GroundSet,
    NEG_INF,
    SetFunction,
    Subset,
    neighbor_masks,
    submasks,
)
from .errors import EmptyChoiceDomain, EmptyFamily, GenerationTimeout, TooLarge

EXHAUSTIVE_LIMIT = 12
_BLOCK_ELEMENTS = 1 << 20


class Violation(enum.Enum):
    ORDINAL_CONCAVITY = "OrdinalConcavityViolation"
    W_CONCAVITY = "WConcavityViolation"
    SIMULTANEOUS_EXCHANGE = "DaggerViolation"
    UM = "UMViolation"
    GENERIC = "GenericViolation"


@dataclass(frozen=True)
class Witness:
    """The quantifier instantiation at which a checked property fails."""

    kind: Violation
    X: Subset
    Xprime: Subset | None = None
    x: ExchangeElement = None
    detail: str = ""
    ordering: tuple[str, ...] | None = None


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    witness: Witness | None = None
    pairs_checked: int = 0

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report holds exactly when it carries no witness")

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class SubsetFamily:
    """A family of subsets of one ground set, iterated in ascending bitmask order."""

    ground: GroundSet
    members: frozenset[Subset] = field(default_factory=frozenset)

    @classmethod
    def from_masks(cls, ground: GroundSet, masks: Iterable[int]) -> SubsetFamily:
        return cls(ground, frozenset(Subset(ground, int(m)) for m in masks))

    @classmethod
    def of(cls, ground: GroundSet, *sets: Iterable[str]) -> SubsetFamily:
        return cls(ground, frozenset(ground.subset(s) for s in sets))

    @property
    def masks(self) -> list[int]:
        return sorted(s.bits for s in self.members)

    def __iter__(self) -> Iterator[Subset]:
        return iter(sorted(self.members, key=lambda s: s.bits))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, X: object) -> bool:
        return X in self.members

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(s) for s in self) + "}"


def _require_small(n: int) -> None:
    if n > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"exhaustive checks support n <= {EXHAUSTIVE_LIMIT}, got {n}")


# -- vectorized pair scans ----------------------------------------------------


class _ExchangeTables:
    """Per-exchange row predicates for ``X -> X - p + q`` (``p``/``q`` may be None).

    ``valid[p, q][X]``: ``p`` in ``X`` (or null) and ``q`` not in ``X`` (or null).
    ``up[p, q][X]``:    ``u(X - p + q) > u(X)``.
    ``same[p, q][X]``:  ``u(X - p + q) = u(X)``.
    """

    def __init__(self, keys: np.ndarray, n: int, tol: float):
        self.n = n
        idx = np.arange(1 << n)
        elems: list[int | None] = [None, *range(n)]
        has = {i: (idx >> i) & 1 == 1 for i in range(n)}
        self.valid: dict = {}
        self.up: dict = {}
        self.same: dict = {}
        with np.errstate(invalid="ignore"):
            for p in elems:
                for q in elems:
                    if p is not None and p == q:
                        continue
                    target = idx
                    valid = np.ones(1 << n, dtype=bool)
                    if p is not None:
                        target = target & ~(1 << p)
                        valid &= has[p]
                    if q is not None:
                        target = target | (1 << q)
                        valid &= ~has[q]
                    moved = keys[..., target]
                    self.valid[p, q] = valid
                    self.up[p, q] = moved > keys + tol
                    self.same[p, q] = np.abs(moved - keys) <= tol

    def ok(self, p, q, rows: slice = slice(None)) -> np.ndarray:
        """Clause (i), (ii) or (iii) for exchange ``(p, q)`` on rows ``X`` x all columns ``X'``.

        Leading axes of the key array (a batch of tables) are carried through.
        """
        rv, cv = self.valid[p, q][rows], self.valid[q, p]
        ru, cu = self.up[p, q][..., rows], self.up[q, p]
        rs, cs = self.same[p, q][..., rows], self.same[q, p]
        clause = ru[..., :, None] | cu[..., None, :] | (rs[..., :, None] & cs[..., None, :])
        return clause & (rv[:, None] & cv[None, :])


def _blocks(size: int) -> Iterator[slice]:
    step = max(1, _BLOCK_ELEMENTS // size)
    for lo in range(0, size, step):
        yield slice(lo, min(size, lo + step))


def scan_concavity(keys: np.ndarray, n: int, tol: float = 0.0) -> tuple[int, int, int] | None:
    """First ``(X, X', x)`` violating ordinal concavity, as bitmasks and an index."""
    size = 1 << n
    tables = _ExchangeTables(keys, n, tol)
    dom = keys > -np.inf
    idx = np.arange(size)
    for rows in _blocks(size):
        first = np.full((rows.stop - rows.start, size), n, dtype=np.int64)
        pair_ok = dom[rows][:, None] & dom[None, :]
        for i in range(n):
            sat = np.zeros_like(pair_ok)
            for q in [None, *range(n)]:
                if q == i:
                    continue
                sat |= tables.ok(i, q, rows)
            applies = ((idx[rows] >> i) & 1 == 1)[:, None] & ((idx >> i) & 1 == 0)[None, :]
            bad = applies & pair_ok & ~sat & (first == n)
            first[bad] = i
        hits = np.argwhere(first < n)
        if len(hits):
            r, c = hits[0]
            return rows.start + int(r), int(c), int(first[r, c])
    return None


def scan_wconcavity(keys: np.ndarray, n: int, tol: float = 0.0) -> tuple[int, int] | None:
    """First unordered pair ``X < X'`` (bitmask order) violating ordinal w-concavity."""
    size = 1 << n
    tables = _ExchangeTables(keys, n, tol)
    dom = keys > -np.inf
    idx = np.arange(size)
    elems: list[int | None] = [None, *range(n)]
    for rows in _blocks(size):
        sat = np.zeros((rows.stop - rows.start, size), dtype=bool)
        for p in elems:
            for q in elems:
                if p == q:
                    continue
                sat |= tables.ok(p, q, rows)
        bad = ~sat & dom[rows][:, None] & dom[None, :] & (idx[rows][:, None] < idx[None, :])
        hits = np.argwhere(bad)
        if len(hits):
            r, c = hits[0]
            return rows.start + int(r), int(c)
    return None


def batch_concave(keys: np.ndarray, n: int, tol: float = 0.0) -> np.ndarray:
    """Ordinal-concavity verdict for each row of a ``(B, 2^n)`` key array."""
    tables = _ExchangeTables(keys, n, tol)
    dom = keys > -np.inf
    pair_ok = dom[:, :, None] & dom[:, None, :]
    idx = np.arange(1 << n)
    holds = np.ones(len(keys), dtype=bool)
    for i in range(n):
        sat = np.zeros_like(pair_ok)
        for q in [None, *range(n)]:
            if q != i:
                sat |= tables.ok(i, q)
        applies = ((idx >> i) & 1 == 1)[:, None] & ((idx >> i) & 1 == 0)[None, :]
        holds &= ~(applies & pair_ok & ~sat).any(axis=(1, 2))
    return holds


def batch_wconcave(keys: np.ndarray, n: int, tol: float = 0.0) -> np.ndarray:
    """Ordinal w-concavity verdict for each row of a ``(B, 2^n)`` key array."""
    tables = _ExchangeTables(keys, n, tol)
    dom = keys > -np.inf
    elems: list[int | None] = [None, *range(n)]
    sat = np.zeros((len(keys), 1 << n, 1 << n), dtype=bool)
    for p in elems:
        for q in elems:
            if p != q:
                sat |= tables.ok(p, q)
    distinct = ~np.eye(1 << n, dtype=bool)
    return ~(~sat & dom[:, :, None] & dom[:, None, :] & distinct).any(axis=(1, 2))


def batch_unique_maximizer(keys: np.ndarray, n: int) -> np.ndarray:
    """(UM) verdict for each row of a ``(B, 2^n)`` key array with ``u(empty)`` finite."""
    idx = np.arange(1 << n)
    best = keys.copy()
    for i in range(n):
        sel = idx[(idx >> i) & 1 == 1]
        best[:, sel] = np.maximum(best[:, sel], best[:, sel ^ (1 << i)])
    contained = (idx[None, :] & ~idx[:, None]) == 0  # [X, Y]: Y <= X
    ties = (keys[:, None, :] == best[:, :, None]) & contained
    return (ties.sum(axis=2) == 1).all(axis=1)


def _ordered_pairs_before(dom: np.ndarray, r: int, c: int) -> int:
    q = int(dom.sum())
    before_rows = int(dom[:r].sum()) * (q - 1)
    in_row = int(dom[: c + 1].sum()) - (1 if c >= r and dom[r] else 0)
    return before_rows + in_row


def _unordered_pairs_before(dom: np.ndarray, r: int, c: int) -> int:
    later = np.cumsum(dom[::-1])[::-1]  # later[k] = #Q with index >= k
    rows = np.flatnonzero(dom[:r])
    before_rows = int(sum(later[k + 1] if k + 1 < len(dom) else 0 for k in rows))
    in_row = int(dom[r + 1 : c + 1].sum())
    return before_rows + in_row


# -- public checkers ----------------------------------------------------------


def check_ordinal_concavity(u: SetFunction, *, tol: float = 0.0) -> PropertyReport:
    """Check the ordinal concavity exchange for every ordered pair of domain sets.

    For each ``x`` in ``X - X'`` some ``x'`` in ``(X' - X) + null`` must give
    ``u(X) < u(X - x + x')``, or ``u(X') < u(X' - x' + x)``, or equality in
    both.  The witness is the first ``(X, X', x)`` with no such ``x'``.
    """
    _require_small(u.n)
    q = int(u.domain.sum())
    hit = scan_concavity(u.keys, u.n, tol)
    name = "ordinal-concavity"
    if hit is None:
        return PropertyReport(name, True, None, q * (q - 1))
    r, c, i = hit
    g = u.ground
    w = Witness(
        Violation.ORDINAL_CONCAVITY,
        g.from_bits(r),
        g.from_bits(c),
        g.labels[i],
        f"no x' in ({g.from_bits(c)!r} - {g.from_bits(r)!r}) + null satisfies (i), (ii) or (iii)",
    )
    return PropertyReport(name, False, w, _ordered_pairs_before(u.domain, r, c))


def check_ordinal_wconcavity(u: SetFunction, *, tol: float = 0.0) -> PropertyReport:
    """Check the weak exchange for every unordered pair of distinct domain sets."""
    _require_small(u.n)
    q = int(u.domain.sum())
    hit = scan_wconcavity(u.keys, u.n, tol)
    name = "ordinal-w-concavity"
    if hit is None:
        return PropertyReport(name, True, None, q * (q - 1) // 2)
    r, c = hit
    g = u.ground
    w = Witness(
        Violation.W_CONCAVITY,
        g.from_bits(r),
        g.from_bits(c),
        None,
        "no distinct exchange pair satisfies (i), (ii) or (iii)",
    )
    return PropertyReport(name, False, w, _unordered_pairs_before(u.domain, r, c))


def _clause_holds(u: SetFunction, X: Subset, Xp: Subset, x: ExchangeElement, xp: ExchangeElement, tol: float) -> bool:
    a, b = u(X), u(Xp)
    a2, b2 = u(X.exchange(x, xp)), u(Xp.exchange(xp, x))

    def less(p, q):
        if q is NEG_INF:
            return False
        return p is NEG_INF or q > p + tol

    def equal(p, q):
        if p is NEG_INF or q is NEG_INF:
            return p is q
        return abs(p - q) <= tol

    return less(a, a2) or less(b, b2) or (equal(a, a2) and equal(b, b2))


def replay(u: SetFunction, witness: Witness, *, tol: float = 0.0) -> bool:
    """Re-evaluate a concavity witness; true when the violation is reproduced."""
    X, Xp = witness.X, witness.Xprime
    outside = [None, *(Xp - X).labels]
    if witness.kind is Violation.ORDINAL_CONCAVITY:
        return witness.x in (X - Xp) and not any(_clause_holds(u, X, Xp, witness.x, xp, tol) for xp in outside)
    if witness.kind is Violation.W_CONCAVITY:
        inside = [None, *(X - Xp).labels]
        return X != Xp and not any(
            _clause_holds(u, X, Xp, x, xp, tol) for x in inside for xp in outside if x != xp
        )
    raise ValueError(f"cannot replay a {witness.kind.value}")


def simultaneous_exchange_violation(members: set[int] | frozenset[int], n: int) -> tuple[int, int] | None:
    """First pair ``X < X'`` of the family with no simultaneous exchange keeping both inside."""
    ordered = sorted(members)
    for a, X in enumerate(ordered):
        for Xp in ordered[a + 1 :]:
            outs = [None, *(i for i in range(n) if (X & ~Xp) >> i & 1)]
            ins = [None, *(i for i in range(n) if (Xp & ~X) >> i & 1)]
            found = False
            for x in outs:
                for xp in ins:
                    if x is None and xp is None:
                        continue
                    dx = 0 if x is None else 1 << x
                    dxp = 0 if xp is None else 1 << xp
                    if (X & ~dx | dxp) in members and (Xp & ~dxp | dx) in members:
                        found = True
                        break
                if found:
                    break
            if not found:
                return X, Xp
    return None


def exchange_axiom_violation(members: set[int] | frozenset[int], n: int) -> tuple[int, int, int] | None:
    """First ``(X, Y, x)`` breaking the single-element M-natural exchange axiom.

    For ``X, Y`` in the family and ``x`` in ``X - Y``: either ``X - x`` and
    ``Y + x`` are both members, or some ``y`` in ``Y - X`` has ``X - x + y``
    and ``Y + x - y`` both members.
    """
    ordered = sorted(members)
    for X in ordered:
        for Y in ordered:
            if X == Y:
                continue
            for i in range(n):
                if not (X & ~Y) >> i & 1:
                    continue
                bx = 1 << i
                if X & ~bx in members and Y | bx in members:
                    continue
                if any(
                    (Y & ~X) >> j & 1 and (X & ~bx | 1 << j) in members and (Y & ~(1 << j) | bx) in members
                    for j in range(n)
                ):
                    continue
                return X, Y, i
    return None


def check_mnat_convex_family(F: SubsetFamily, *, cross_check: bool = True) -> PropertyReport:
    """Check the simultaneous exchange property (an M-natural convex set test).

    With ``cross_check`` the verdict is compared against the single-element
    exchange axiom; disagreement raises ``AssertionError``.
    """
    if len(F) == 0:
        raise EmptyFamily("the family is empty")
    members = frozenset(F.masks)
    n = F.ground.n
    hit = simultaneous_exchange_violation(members, n)
    if cross_check:
        other = exchange_axiom_violation(members, n)
        if (hit is None) != (other is None):
            raise AssertionError(f"exchange oracles disagree on {F!r}: {hit} vs {other}")
    k = len(members)
    name = "mnat-family"
    if hit is None:
        return PropertyReport(name, True, None, k * (k - 1) // 2)
    X, Xp = hit
    g = F.ground
    w = Witness(
        Violation.SIMULTANEOUS_EXCHANGE,
        g.from_bits(X),
        g.from_bits(Xp),
        None,
        "no distinct exchange keeps both sets in the family",
    )
    ordered = sorted(members)
    a = ordered.index(X)
    done = sum(k - 1 - j for j in range(a)) + ordered.index(Xp) - a
    return PropertyReport(name, False, w, done)


def _require_empty_in_domain(u: SetFunction) -> None:
    if not u.domain[0]:
        raise EmptyChoiceDomain("the empty set is outside the effective domain")


def check_unique_maximizer(u: SetFunction) -> PropertyReport:
    """Every menu ``X`` has exactly one best subset (within the domain).

    Among menus with ties the witness is one whose tied value is largest,
    smallest bitmask first, so it points at the most consequential ambiguity.
    """
    _require_empty_in_domain(u)
    fams = menu_families(u)
    tied = [X for X, fam in enumerate(fams) if len(fam) != 1]
    if not tied:
        return PropertyReport("um", True, None, len(fams))
    keys = u.keys
    X = min(tied, key=lambda m: (-keys[fams[m][0]], m))
    g = u.ground
    detail = f"value {keys[fams[X][0]]:g} attained by " + ", ".join(repr(g.from_bits(m)) for m in fams[X])
    w = Witness(Violation.UM, g.from_bits(X), None, None, detail)
    return PropertyReport("um", False, w, len(fams))


def argmax_family(u: SetFunction) -> SubsetFamily:
    """Global maximizers of ``u`` over its effective domain."""
    keys = u.keys
    return SubsetFamily.from_masks(u.ground, np.flatnonzero(keys == keys.max()))


def check_MN_characterization(u: SetFunction) -> PropertyReport:
    """Check conditions (M) and (N), which together characterize ordinal w-concavity.

    (M): for all ``X < Y`` the maximizers over ``[X, Y]`` form an M-natural
    convex set.  (N): within every interval ``[A, B]``, a set that is best in
    its neighbourhood restricted to the interval is best in the interval.
    Intervals without domain sets are skipped.
    """
    _require_small(u.n)
    g, n, keys = u.ground, u.n, u.keys
    full = g.full_mask
    checked = 0
    for upper in range(1 << n):
        for lower in submasks(upper):
            if lower == upper:
                continue
            fam = interval_argmax(u, lower, upper)
            if not fam:
                continue
            checked += 1
            if simultaneous_exchange_violation(frozenset(fam), n) is not None:
                w = Witness(
                    Violation.GENERIC,
                    g.from_bits(lower),
                    g.from_bits(upper),
                    None,
                    "(M): interval maximizers are not an M-natural convex set",
                )
                return PropertyReport("mn-characterization", False, w, checked)
            top = keys[fam[0]]
            for z in submasks(upper & ~lower):
                Z = lower | z
                if keys[Z] == -np.inf or keys[Z] == top:
                    continue
                local = all(
                    keys[m] <= keys[Z]
                    for m, _, _ in neighbor_masks(Z, n)
                    if m & lower == lower and m & ~upper & full == 0
                )
                if local:
                    w = Witness(
                        Violation.GENERIC,
                        g.from_bits(lower),
                        g.from_bits(upper),
                        None,
                        f"(N): {g.from_bits(Z)!r} is a local but not a global maximizer on the interval",
                    )
                    return PropertyReport("mn-characterization", False, w, checked)
    return PropertyReport("mn-characterization", True, None, checked)


# -- generators ---------------------------------------------------------------


class FunctionKind(enum.Enum):
    RANDOM_TABLE = "random-table"
    MODULAR = "modular"
    CARDINALITY_CONCAVE = "cardinality-concave"
    REJECTION_W_CONCAVE = "rejection-w-concave"
    REJECTION_CONCAVE = "rejection-concave"
    REJECTION_CONCAVE_UM = "rejection-concave-um"


DEFAULT_ATTEMPTS = 2_000_000


def _full(ground: GroundSet, values: np.ndarray) -> SetFunction:
    return SetFunction(ground, values, np.ones(len(values), dtype=bool))


def generate(kind: FunctionKind | str, n: int, seed: int, *, max_attempts: int = DEFAULT_ATTEMPTS) -> SetFunction:
    """Deterministic test function of the given kind on ``n`` elements ``a, b, ...``.

    Rejection kinds draw integer tables in ``[0, 2^n]`` until the named
    checkers pass, raising :class:`GenerationTimeout` after ``max_attempts``.
    """
    kind = FunctionKind(kind)
    ground = GroundSet.of_size(n)
    rng = np.random.default_rng([seed, n, list(FunctionKind).index(kind)])
    idx = np.arange(1 << n)
    bits = (idx[:, None] >> np.arange(n)) & 1
    sizes = bits.sum(axis=1)

    if kind is FunctionKind.RANDOM_TABLE:
        return _full(ground, rng.integers(0, (1 << n) + 1, size=1 << n).astype(np.float64))
    if kind is FunctionKind.MODULAR:
        weights = rng.integers(-n, n + 1, size=n)
        return _full(ground, (bits @ weights).astype(np.float64))
    if kind is FunctionKind.CARDINALITY_CONCAVE:
        # phi(0) = 0 with non-increasing increments
        steps = np.sort(rng.integers(-2 * n, 2 * n + 1, size=n))[::-1]
        phi = np.concatenate([[0], np.cumsum(steps)])
        weights = rng.integers(-n, n + 1, size=n)
        return _full(ground, (phi[sizes] + bits @ weights).astype(np.float64))

    _require_small(n)
    if kind is FunctionKind.REJECTION_W_CONCAVE:
        tests = [lambda k: batch_wconcave(k, n)]
    elif kind is FunctionKind.REJECTION_CONCAVE:
        tests = [lambda k: batch_concave(k, n)]
    else:
        tests = [lambda k: batch_unique_maximizer(k, n), lambda k: batch_concave(k, n)]
    batch = max(1, min(4096, (1 << 20) >> (2 * n)))
    drawn = 0
    while drawn < max_attempts:
        size = min(batch, max_attempts - drawn)
        tables = rng.integers(0, (1 << n) + 1, size=(size, 1 << n)).astype(np.float64)
        drawn += size
        alive = np.arange(size)
        for test in tests:
            alive = alive[test(tables[alive])]
            if not len(alive):
                break
        if len(alive):
            return _full(ground, tables[alive[0]])
    raise GenerationTimeout(f"{kind.value}: no table accepted after {max_attempts} attempts (n={n}, seed={seed})")


def corpus(kind: FunctionKind | str, n: int, count: int, *, start_seed: int = 0) -> list[SetFunction]:
    """``count`` generated functions with consecutive seeds."""
    return [generate(kind, n, s) for s in range(start_seed, start_seed + count)]
