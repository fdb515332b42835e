"""Ground sets, subsets and extended-real set functions on the Boolean lattice.

Subsets are bitmasks over an ordered :class:`GroundSet`; bit ``i`` stands for
``ground.labels[i]``.  A :class:`SetFunction` stores one value per subset, and
subsets outside its effective domain evaluate to :data:`NEG_INF`.

The exchange ``X - x + x'`` uses ``None`` for the null symbol, which leaves the
set unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import BadInterval, EmptyGround, GroundMismatch, InfiniteBase, OrdConcaveError

MAX_GROUND = 24


@total_ordering
class _NegInf:
    """The value -inf: below every finite real, equal only to itself."""

    _instance: _NegInf | None = None

    def __new__(cls) -> _NegInf:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, (int, float, np.integer, np.floating)):
            return True
        return NotImplemented

    def __hash__(self) -> int:
        return hash("-inf")

    def __float__(self) -> float:
        return float("-inf")

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()

ExtValue = Union[float, _NegInf]
ExchangeElement = Union[str, None]


def is_finite(value: ExtValue) -> bool:
    return value is not NEG_INF


@dataclass(frozen=True)
class GroundSet:
    """Ordered finite set of distinct string labels."""

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(label) for label in labels)
        if not 1 <= len(labels) <= MAX_GROUND:
            raise EmptyGround(f"ground set must have 1..{MAX_GROUND} elements, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise OrdConcaveError(f"duplicate labels in ground set {labels}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(labels)})

    @classmethod
    def of_size(cls, n: int) -> GroundSet:
        """``a, b, c, ...`` for ``n <= 26``, ``e0, e1, ...`` beyond."""
        if n <= 26:
            return cls("abcdefghijklmnopqrstuvwxyz"[:n])
        return cls(f"e{i}" for i in range(n))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GroundMismatch(f"{label!r} is not an element of {self}") from None

    def subset(self, labels: Iterable[str] = ()) -> Subset:
        bits = 0
        for label in labels:
            bits |= 1 << self.index(label)
        return Subset(self, bits)

    def from_bits(self, bits: int) -> Subset:
        return Subset(self, bits)

    def parse(self, text: str) -> Subset:
        """Parse ``"a,c"`` (or ``"{a,c}"``); an empty string is the empty set."""
        text = text.strip().strip("{}")
        parts = [p.strip() for p in text.split(",") if p.strip()]
        return self.subset(parts)

    @property
    def empty(self) -> Subset:
        return Subset(self, 0)

    @property
    def full(self) -> Subset:
        return Subset(self, self.full_mask)

    def all_subsets(self) -> list[Subset]:
        """Every subset, in ascending bitmask order."""
        return [Subset(self, m) for m in range(1 << self.n)]

    def labels_of(self, bits: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in range(self.n) if bits >> i & 1)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)})"

    def __str__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


@dataclass(frozen=True)
class Subset:
    """A subset of ``ground`` stored as a bitmask."""

    ground: GroundSet
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.ground.n:
            raise GroundMismatch(f"bitmask {self.bits:#x} has bits outside a ground set of size {self.ground.n}")

    def _other(self, other: Subset) -> int:
        if not isinstance(other, Subset):
            return NotImplemented
        if other.ground != self.ground:
            raise GroundMismatch("subsets belong to different ground sets")
        return other.bits

    def __or__(self, other: Subset) -> Subset:
        return Subset(self.ground, self.bits | self._other(other))

    def __and__(self, other: Subset) -> Subset:
        return Subset(self.ground, self.bits & self._other(other))

    def __sub__(self, other: Subset) -> Subset:
        return Subset(self.ground, self.bits & ~self._other(other))

    def __xor__(self, other: Subset) -> Subset:
        return Subset(self.ground, self.bits ^ self._other(other))

    def issubset(self, other: Subset) -> bool:
        return self.bits & ~self._other(other) == 0

    def complement(self) -> Subset:
        return Subset(self.ground, self.ground.full_mask ^ self.bits)

    def add(self, label: ExchangeElement) -> Subset:
        if label is None:
            return self
        return Subset(self.ground, self.bits | 1 << self.ground.index(label))

    def remove(self, label: ExchangeElement) -> Subset:
        if label is None:
            return self
        return Subset(self.ground, self.bits & ~(1 << self.ground.index(label)))

    def exchange(self, out: ExchangeElement, into: ExchangeElement) -> Subset:
        """``X - out + into``."""
        return self.remove(out).add(into)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ground.labels_of(self.bits)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __contains__(self, label: object) -> bool:
        return label in self.ground and bool(self.bits >> self.ground.index(label) & 1)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending order."""
    # Walk upward through the submask lattice: next = (sub - mask) & mask.
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def _bit_positions(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def embed_indices(positions: Sequence[int]) -> np.ndarray:
    """Map each local bitmask over ``positions`` to the corresponding global bitmask."""
    out = np.zeros(1, dtype=np.int64)
    for p in positions:
        out = np.concatenate([out, out | (1 << p)])
    return out


class SetFunction:
    """An immutable table of extended-real values over ``2^E``.

    ``values[m]`` holds the value of the subset with bitmask ``m`` where
    ``domain[m]`` is true; entries outside the effective domain evaluate to
    :data:`NEG_INF`.  The effective domain must be nonempty.
    """

    __slots__ = ("ground", "_values", "_domain", "_keys", "_cache")

    def __init__(self, ground: GroundSet, values: Sequence[ExtValue] | np.ndarray, domain: Sequence[bool] | np.ndarray | None = None):
        size = 1 << ground.n
        if domain is None:
            raw = list(values) if not isinstance(values, np.ndarray) else values.tolist()
            if len(raw) != size:
                raise OrdConcaveError(f"expected {size} values, got {len(raw)}")
            domain = np.array([v is not NEG_INF and v != float("-inf") for v in raw], dtype=bool)
            vals = np.array([float(v) if d else 0.0 for v, d in zip(raw, domain)], dtype=np.float64)
        else:
            domain = np.asarray(domain, dtype=bool).copy()
            vals = np.where(domain, np.asarray(values, dtype=np.float64), 0.0)
            if vals.shape != (size,) or domain.shape != (size,):
                raise OrdConcaveError(f"expected tables of length {size}")
        if not domain.any():
            raise OrdConcaveError("effective domain is empty")
        if not np.isfinite(vals[domain]).all():
            raise OrdConcaveError("domain values must be finite reals")
        vals.setflags(write=False)
        domain.setflags(write=False)
        keys = np.where(domain, vals, -np.inf)
        keys.setflags(write=False)
        self.ground = ground
        self._values = vals
        self._domain = domain
        self._keys = keys
        self._cache: dict = {}

    # construction helpers

    @classmethod
    def from_callable(cls, ground: GroundSet, fn: Callable[[Subset], ExtValue]) -> SetFunction:
        return cls(ground, [fn(Subset(ground, m)) for m in range(1 << ground.n)])

    @classmethod
    def from_mapping(cls, ground: GroundSet, mapping: Mapping[Subset | int, ExtValue]) -> SetFunction:
        """Subsets missing from ``mapping`` are outside the effective domain."""
        vals: list[ExtValue] = [NEG_INF] * (1 << ground.n)
        for key, value in mapping.items():
            bits = key if isinstance(key, int) else mask_of(ground, key)
            vals[bits] = value
        return cls(ground, vals)

    @classmethod
    def constant(cls, ground: GroundSet, c: float = 0.0) -> SetFunction:
        return cls(ground, np.full(1 << ground.n, float(c)), np.ones(1 << ground.n, dtype=bool))

    @classmethod
    def modular(cls, ground: GroundSet, weights: Mapping[str, float] | Sequence[float]) -> SetFunction:
        if isinstance(weights, Mapping):
            w = np.array([float(weights[label]) for label in ground.labels])
        else:
            w = np.asarray(weights, dtype=np.float64)
        idx = np.arange(1 << ground.n)
        bits = (idx[:, None] >> np.arange(ground.n)) & 1
        return cls(ground, bits @ w, np.ones(1 << ground.n, dtype=bool))

    # accessors

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def values(self) -> np.ndarray:
        """Read-only value array; entries outside the domain are meaningless."""
        return self._values

    @property
    def domain(self) -> np.ndarray:
        """Read-only boolean mask of the effective domain."""
        return self._domain

    @property
    def keys(self) -> np.ndarray:
        """Values as IEEE floats with -inf outside the domain, for vectorized order tests."""
        return self._keys

    def at(self, bits: int) -> ExtValue:
        return float(self._values[bits]) if self._domain[bits] else NEG_INF

    def evaluate(self, X: Subset) -> ExtValue:
        return self.at(mask_of(self.ground, X))

    __call__ = evaluate

    def __getitem__(self, X: Subset) -> ExtValue:
        return self.evaluate(X)

    def in_domain(self, X: Subset | int) -> bool:
        bits = X if isinstance(X, int) else mask_of(self.ground, X)
        return bool(self._domain[bits])

    def effective_domain(self) -> list[Subset]:
        return [Subset(self.ground, int(m)) for m in np.flatnonzero(self._domain)]

    @property
    def full_domain(self) -> bool:
        return bool(self._domain.all())

    def distinct_values(self) -> int:
        return len(np.unique(self._values[self._domain]))

    def table(self) -> list[ExtValue]:
        return [self.at(m) for m in range(1 << self.n)]

    def cached(self, key, compute):
        """Memoize a derived quantity; the function itself never changes."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = compute()
            return value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFunction):
            return NotImplemented
        return (
            self.ground == other.ground
            and np.array_equal(self._domain, other._domain)
            and np.array_equal(self._keys, other._keys)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        entries = ", ".join(f"{Subset(self.ground, m)!r}: {self.at(m)}" for m in range(min(1 << self.n, 16)))
        more = ", ..." if self.n > 4 else ""
        return f"SetFunction({entries}{more})"


def mask_of(ground: GroundSet, X: Subset) -> int:
    if not isinstance(X, Subset):
        raise TypeError(f"expected a Subset, got {type(X).__name__}")
    if X.ground != ground:
        raise GroundMismatch(f"{X!r} is over {X.ground}, expected {ground}")
    return X.bits


def evaluate(u: SetFunction, X: Subset) -> ExtValue:
    return u.evaluate(X)


def _restrict(u: SetFunction, lower: int, upper: int, shift: float) -> SetFunction:
    """``Z -> u(Z | lower) - shift`` on the ground set ``upper \\ lower``."""
    free = upper & ~lower
    positions = _bit_positions(free)
    if not positions:
        raise EmptyGround("resulting ground set is empty")
    ground = GroundSet(u.ground.labels[p] for p in positions)
    idx = embed_indices(positions) | lower
    return SetFunction(ground, u.values[idx] - shift, u.domain[idx])


def reduction(u: SetFunction, X: Subset) -> SetFunction:
    """Restriction of ``u`` to the subsets of ``X``."""
    bits = mask_of(u.ground, X)
    if bits == 0:
        raise EmptyGround("reduction by the empty set")
    return _restrict(u, 0, bits, 0.0)


def contraction(u: SetFunction, X: Subset) -> SetFunction:
    """``Z -> u(Z | X) - u(X)`` on ``E \\ X``."""
    bits = mask_of(u.ground, X)
    if bits == u.ground.full_mask:
        raise EmptyGround("contraction by the whole ground set")
    if not u.domain[bits]:
        raise InfiniteBase(f"u({X!r}) is -inf")
    return _restrict(u, bits, u.ground.full_mask, float(u.values[bits]))


def minor(u: SetFunction, X: Subset, Y: Subset) -> SetFunction:
    """Reduce to ``Y`` then contract by ``X``: ``Z -> u(Z | X) - u(X)`` for ``Z`` in ``2^(Y \\ X)``."""
    x, y = mask_of(u.ground, X), mask_of(u.ground, Y)
    if x & ~y or x == y:
        raise BadInterval(f"{X!r} is not a proper subset of {Y!r}")
    if not u.domain[x]:
        raise InfiniteBase(f"u({X!r}) is -inf")
    return _restrict(u, x, y, float(u.values[x]))


def dual(u: SetFunction) -> SetFunction:
    """``X -> u(E \\ X)``."""
    idx = np.arange(1 << u.n) ^ u.ground.full_mask
    return SetFunction(u.ground, u.values[idx], u.domain[idx])


def dual_convex(u: SetFunction) -> SetFunction:
    """``X -> u(E) - u(E \\ X)``; ordinally (w-)convex when ``u`` is (w-)concave."""
    full = u.ground.full_mask
    if not u.domain[full]:
        raise InfiniteBase("u(E) is -inf")
    idx = np.arange(1 << u.n) ^ full
    return SetFunction(u.ground, u.values[full] - u.values[idx], u.domain[idx])


def neighbor_masks(bits: int, n: int) -> list[tuple[int, int | None, int | None]]:
    """``(X - x + x', x, x')`` for every exchange, canonical order, indices for elements."""
    inside = [None] + [i for i in range(n) if bits >> i & 1]
    outside = [None] + [i for i in range(n) if not bits >> i & 1]
    out = []
    for i in inside:
        base = bits if i is None else bits & ~(1 << i)
        for j in outside:
            out.append((base if j is None else base | 1 << j, i, j))
    return out


def neighborhood(X: Subset) -> list[Subset]:
    """All ``X - x + x'`` with ``x`` in ``X`` or null and ``x'`` outside ``X`` or null.

    Ordered by ``x`` then ``x'``, null first, then label order.  The pairs
    all produce distinct sets, so the list has ``(|X|+1)(n-|X|+1)`` members.
    """
    return [Subset(X.ground, m) for m, _, _ in neighbor_masks(X.bits, X.ground.n)]
