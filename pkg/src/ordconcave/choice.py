"""Choice correspondences rationalized by a set function.

``C_u(X)`` is the family of best subsets of the menu ``X`` (within the
effective domain).  The canonical choice function picks the smallest bitmask
from that family; under the unique-maximizer condition it is the only choice
function associated with ``u``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ._menus import canonical_choices, interval_argmax, menu_families, upper_families
from .core import SetFunction, Subset, mask_of, submasks
from .errors import BadInterval, EmptyChoiceDomain, NotAChoiceSet, NotUM, NotWConcave
from .verify import PropertyReport, SubsetFamily, Violation, Witness, check_unique_maximizer


class PathForm(enum.Enum):
    UNION = "union"
    DISJOINT_UNION = "disjoint"
    BOTH = "both"


class Direction(enum.Enum):
    I = "I"  # noqa: E741
    II = "II"


@dataclass(frozen=True)
class IntervalResult:
    """The interval ``[lower, upper]`` of the Boolean lattice."""

    lower: Subset
    upper: Subset

    def __post_init__(self):
        if not self.lower.issubset(self.upper):
            raise BadInterval(f"{self.lower!r} is not contained in {self.upper!r}")

    def members(self) -> list[Subset]:
        g, lo = self.lower.ground, self.lower.bits
        return [g.from_bits(lo | s) for s in submasks(self.upper.bits & ~lo)]

    def __contains__(self, X: object) -> bool:
        return isinstance(X, Subset) and self.lower.issubset(X) and X.issubset(self.upper)


def _require_empty_in_domain(u: SetFunction) -> None:
    if not u.domain[0]:
        raise EmptyChoiceDomain("the empty set is outside the effective domain")


def choice_correspondence(u: SetFunction, X: Subset) -> SubsetFamily:
    """``C_u(X)``: maximizers of ``u`` among the subsets of ``X`` in the domain."""
    _require_empty_in_domain(u)
    bits = mask_of(u.ground, X)
    return SubsetFamily.from_masks(u.ground, interval_argmax(u, 0, bits))


def interval_maximizers(u: SetFunction, X: Subset, Y: Subset) -> SubsetFamily:
    """``C_u(X, Y)``: maximizers of ``u`` over ``[X, Y]`` within the domain."""
    lo, hi = mask_of(u.ground, X), mask_of(u.ground, Y)
    if lo & ~hi:
        raise BadInterval(f"{X!r} is not contained in {Y!r}")
    fam = interval_argmax(u, lo, hi)
    if not fam:
        raise EmptyChoiceDomain(f"[{X!r}, {Y!r}] contains no set of the effective domain")
    return SubsetFamily.from_masks(u.ground, fam)


def canonical_choice(u: SetFunction, X: Subset) -> Subset:
    """Smallest-bitmask member of ``C_u(X)``."""
    _require_empty_in_domain(u)
    return u.ground.from_bits(canonical_choices(u)[mask_of(u.ground, X)])


def _path_independence_violation(u: SetFunction, disjoint: bool) -> tuple[int, int, int, int] | None:
    C = canonical_choices(u)
    size = 1 << u.n
    for X in range(size):
        cx = C[X]
        for Y in range(size):
            rest = Y & ~X if disjoint else Y
            lhs, rhs = C[X | Y], C[cx | rest]
            if lhs != rhs:
                return X, Y, lhs, rhs
    return None


def check_path_independence(u: SetFunction, form: PathForm | str = PathForm.BOTH) -> PropertyReport:
    """Check ``C(X | Y) = C(C(X) | Y)`` (union form) and/or ``C(X | Y) = C(C(X) | (Y - X))``.

    ``BOTH`` runs the two forms and additionally fails if their verdicts
    disagree (they never should for a choice function associated with ``u``).
    """
    _require_empty_in_domain(u)
    form = PathForm(form)
    g = u.ground
    size = 1 << u.n
    results = {}
    for f in (PathForm.UNION, PathForm.DISJOINT_UNION):
        if form in (f, PathForm.BOTH):
            results[f] = _path_independence_violation(u, f is PathForm.DISJOINT_UNION)
    name = f"path-independence-{form.value}"
    if form is PathForm.BOTH:
        a, b = results[PathForm.UNION], results[PathForm.DISJOINT_UNION]
        if (a is None) != (b is None):
            X, Y, _, _ = a or b
            w = Witness(Violation.GENERIC, g.from_bits(X), g.from_bits(Y), None, "union and disjoint-union forms disagree")
            return PropertyReport(name, False, w, 2 * size * size)
    hits = [(f, h) for f, h in results.items() if h is not None]
    if not hits:
        return PropertyReport(name, True, None, len(results) * size * size)
    f, (X, Y, lhs, rhs) = hits[0]
    cx = canonical_choices(u)[X]
    rest = Y & ~X if f is PathForm.DISJOINT_UNION else Y
    detail = (
        f"C({g.from_bits(X | Y)!r}) = {g.from_bits(lhs)!r} but "
        f"C({g.from_bits(cx | rest)!r}) = {g.from_bits(rhs)!r} ({f.value} form)"
    )
    w = Witness(Violation.GENERIC, g.from_bits(X), g.from_bits(Y), None, detail)
    return PropertyReport(name, False, w, X * size + Y + 1)


def check_substitutability(u: SetFunction, direction: Direction | str = Direction.I) -> PropertyReport:
    """Substitutability of ``C_u``.

    I:  every ``U`` in ``C_u(X)`` has some ``Z`` in ``C_u(X | Y)`` with ``Z & X <= U``.
    II: every ``Z`` in ``C_u(X | Y)`` has some ``U`` in ``C_u(X)`` with ``Z & X <= U``.
    """
    _require_empty_in_domain(u)
    direction = Direction(direction)
    fams = menu_families(u)
    g = u.ground
    size = 1 << u.n
    checked = 0
    for X in range(size):
        for Y in range(size):
            small, big = fams[X], fams[X | Y]
            checked += 1
            if direction is Direction.I:
                for U in small:
                    if not any((Z & X) & ~U == 0 for Z in big):
                        detail = f"no Z in C_u({g.from_bits(X | Y)!r}) has Z & X inside {g.from_bits(U)!r}"
                        w = Witness(Violation.GENERIC, g.from_bits(X), g.from_bits(Y), None, detail)
                        return PropertyReport(f"substitutability-{direction.value}", False, w, checked)
            else:
                for Z in big:
                    if not any((Z & X) & ~U == 0 for U in small):
                        detail = f"{g.from_bits(Z)!r} in C_u({g.from_bits(X | Y)!r}) has no U in C_u({g.from_bits(X)!r}) containing Z & X"
                        w = Witness(Violation.GENERIC, g.from_bits(X), g.from_bits(Y), None, detail)
                        return PropertyReport(f"substitutability-{direction.value}", False, w, checked)
    return PropertyReport(f"substitutability-{direction.value}", True, None, checked)


def check_dual_substitutability(u: SetFunction) -> PropertyReport:
    """Every ``U`` in ``C_u(X | Y, E)`` has ``Z`` in ``C_u(X, E)`` with ``U - (X | Y) <= Z - (X | Y)``."""
    if not u.domain[u.ground.full_mask]:
        raise EmptyChoiceDomain("E is outside the effective domain, so some upper intervals are empty")
    fams = upper_families(u)
    g = u.ground
    size = 1 << u.n
    checked = 0
    for X in range(size):
        for Y in range(size):
            XY = X | Y
            checked += 1
            for U in fams[XY]:
                if not any((U & ~XY) & ~(Z & ~XY) == 0 for Z in fams[X]):
                    detail = f"{g.from_bits(U)!r} in C_u({g.from_bits(XY)!r}, E) has no partner in C_u({g.from_bits(X)!r}, E)"
                    w = Witness(Violation.GENERIC, g.from_bits(X), g.from_bits(Y), None, detail)
                    return PropertyReport("dual-substitutability", False, w, checked)
    return PropertyReport("dual-substitutability", True, None, checked)


def check_sen_alpha(u: SetFunction) -> PropertyReport:
    """A set chosen from ``X`` stays chosen from every smaller menu that still contains it."""
    _require_empty_in_domain(u)
    fams = [set(f) for f in menu_families(u)]
    g = u.ground
    checked = 0
    for X in range(1 << u.n):
        for Y in sorted(fams[X]):
            for extra in submasks(X & ~Y):
                checked += 1
                if Y not in fams[Y | extra]:
                    detail = f"{g.from_bits(Y)!r} is chosen from {g.from_bits(X)!r} but not from {g.from_bits(Y | extra)!r}"
                    w = Witness(Violation.GENERIC, g.from_bits(X), g.from_bits(Y | extra), None, detail)
                    return PropertyReport("sen-alpha", False, w, checked)
    return PropertyReport("sen-alpha", True, None, checked)


def preimage(u: SetFunction, U: Subset) -> SubsetFamily:
    """All menus ``X`` with ``U`` in ``C_u(X)``."""
    _require_empty_in_domain(u)
    bits = mask_of(u.ground, U)
    fams = menu_families(u)
    return SubsetFamily.from_masks(u.ground, (X for X, fam in enumerate(fams) if bits in fam))


def enclosure(u: SetFunction, U: Subset) -> IntervalResult:
    """``(U, U+)`` with ``preimage(u, U) == [U, U+]``.

    Raises :class:`NotWConcave` if the preimage is not an interval, which
    cannot happen for ordinally w-concave ``u``.
    """
    pre = preimage(u, U)
    if len(pre) == 0:
        raise NotAChoiceSet(f"no menu selects {U!r}")
    top = 0
    for X in pre.masks:
        top |= X
    result = IntervalResult(U, u.ground.from_bits(top))
    if set(pre.masks) != {m.bits for m in result.members()}:
        raise NotWConcave(f"the preimage of {U!r} is not the interval [{U!r}, {result.upper!r}]")
    return result


def is_proper_set(u: SetFunction, X: Subset) -> bool:
    """True when adding any single outside element changes the choice."""
    if not check_unique_maximizer(u).holds:
        raise NotUM("proper sets are defined under the unique-maximizer condition")
    C = canonical_choices(u)
    bits = mask_of(u.ground, X)
    return all(C[bits | 1 << i] != C[bits] for i in range(u.n) if not bits >> i & 1)


def choice_sets(u: SetFunction) -> list[Subset]:
    """Distinct values of the canonical choice function, ascending."""
    _require_empty_in_domain(u)
    return [u.ground.from_bits(m) for m in sorted(set(canonical_choices(u)))]
