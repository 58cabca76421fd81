"""
Symétrons: sets with a symmetry operation s(x, y), read as "x reflected
through y" (row x, column y), so that s_y(x) = s(x, y).

Axioms, checked exhaustively by `make_symetron`:

1. s(x, x) = x
2. s(s(x, y), y) = x
3. s(s(x, z), s(y, z)) = s(s(x, y), z)
4. for all x, y there is exactly one z with s(x, z) = y, the midpoint m(x, y).

On a finite carrier every singleton is convex, so indecomposability and
elliptic generation degenerate: a finite set is indecomposable iff it has at
most one element. `is_indecomposable` implements that closed form and can
cross-check it against the definition on small carriers.
"""
from dataclasses import dataclass
import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .constants import DEFAULT_CAP, INDECOMPOSABLE_SEARCH_BOUND
from .errors import (
    CapExceeded,
    InvariantViolation,
    NoUniqueMidpoint,
    NotSymetron,
    PreconditionError,
    StepBudgetExceeded,
    ensure,
)
from .tables import CayleyTable, SubsetMask, enumerate_closed_sets

logger = logging.getLogger(__name__)


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


@dataclass(frozen=True)
class SymetronStructure:
    """
    A validated symétron. `midpoint[x, y]` is the unique z with s(x, z) = y.
    Build it with `make_symetron`.
    """

    table: CayleyTable
    midpoint: np.ndarray

    @property
    def s(self) -> np.ndarray:
        return self.table.entries

    @property
    def order(self) -> int:
        return self.table.order

    def reflect_point(self, x: int, y: int) -> int:
        return int(self.s[x, y])

    def mid(self, x: int, y: int) -> int:
        return int(self.midpoint[x, y])

    def __repr__(self):
        return f"SymetronStructure(order={self.order})"


def symetron_witness(t: CayleyTable) -> Optional[Tuple[int, tuple]]:
    """
    Returns
    -------
    (int, tuple) or None
        The first failing axiom (1, 2 or 3) with its witness, or None.
    """
    s = t.entries
    n = t.order
    idx = np.arange(n)

    hit = _first(s[idx, idx] != idx)
    if hit is not None:
        return 1, hit

    hit = _first(s[s, idx[None, :]] != idx[:, None])
    if hit is not None:
        return 2, hit

    x = idx[:, None, None]
    y = idx[None, :, None]
    z = idx[None, None, :]
    hit = _first(s[s[x, z], s[y, z]] != s[s[x, y], z])
    if hit is not None:
        return 3, hit
    return None


def make_symetron(t: CayleyTable) -> SymetronStructure:
    """
    Validates a table as a symétron and computes its midpoint table.

    Parameters
    ----------
    t
        The table of s, row x and column y holding s(x, y).

    Returns
    -------
    SymetronStructure
        The symétron with its midpoints.

    Notes
    -----
    Raises `NotSymetron` (with `axiom` and `witness`) for the first failing
    axiom instance, and `NoUniqueMidpoint` (with a witness pair (x, y)) when
    some y has no or several midpoints with x.

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.make_symetron(kl.CayleyTable([[(2 * y - x) % 5 for y in range(5)] for x in range(5)]))
    >>> z5.mid(1, 3)
    2
    """
    failed = symetron_witness(t)
    if failed is not None:
        axiom, witness = failed
        raise NotSymetron(f"axiom {axiom} fails at {witness}", axiom=axiom, witness=witness)

    s = t.entries
    n = t.order
    idx = np.arange(n)
    counts = np.zeros((n, n), dtype=np.int64)
    np.add.at(counts, (idx[:, None].repeat(n, axis=1), s), 1)
    hit = _first(counts != 1)
    if hit is not None:
        raise NoUniqueMidpoint(f"{hit} has {counts[hit]} midpoints", witness=hit)

    midpoint = np.empty_like(s)
    midpoint[idx[:, None], s] = idx[None, :]
    midpoint.setflags(write=False)
    ensure(np.array_equal(midpoint, midpoint.T), "midpoints must be symmetric")
    return SymetronStructure(t, midpoint)


def _members(Y: SubsetMask) -> np.ndarray:
    return np.array(Y.members, dtype=np.int64)


def is_midpoint_closed(S: SymetronStructure, Y: SubsetMask) -> bool:
    y = _members(Y)
    return bool(Y.to_bool()[S.midpoint[np.ix_(y, y)]].all())


def is_convex(S: SymetronStructure, Y: SubsetMask) -> bool:
    """
    True iff s_y(x) ∈ Y for all x, y ∈ Y.

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.symetron_from_group(kl.cyclic_group(5))
    >>> kl.is_convex(z5, kl.SubsetMask.parse("0,1", 5))
    False
    """
    y = _members(Y)
    return bool(Y.to_bool()[S.s[np.ix_(y, y)]].all())


def reflect(S: SymetronStructure, A: SubsetMask, x: int) -> SubsetMask:
    """s(A, x) = {s(a, x) : a ∈ A}."""
    return SubsetMask.from_indices(S.order, S.s[_members(A), x])


def _symmetrizer_flags(S: SymetronStructure, Y: SubsetMask) -> np.ndarray:
    y = _members(Y)
    if len(y) == 0:
        return np.ones(S.order, dtype=bool)
    # s_x is a bijection, so s_x(Y) ⊆ Y means s_x(Y) = Y
    return Y.to_bool()[S.s[y, :]].all(axis=0)


def symmetrizer(S: SymetronStructure, Y: SubsetMask) -> SubsetMask:
    """
    Sym(Y) = {x : s_x(Y) = Y}. For nonempty Y it is convex and
    x ↦ s_x(y0) injects it into Y (both asserted).

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.symetron_from_group(kl.cyclic_group(5))
    >>> kl.symmetrizer(z5, kl.SubsetMask.parse("0", 5)).format()
    '0'
    """
    sym = SubsetMask.from_bool(_symmetrizer_flags(S, Y))
    if not Y.is_empty():
        ensure(_symmetrizer_is_sound(S, Y, sym), f"symmetrizer of {Y.format()} is unsound")
    return sym


def _symmetrizer_is_sound(S: SymetronStructure, Y: SubsetMask, sym: SubsetMask) -> bool:
    y0 = Y.members[0]
    images = S.s[y0, _members(sym)]
    injects = len(np.unique(images)) == len(sym) and Y.to_bool()[images].all()
    return bool(is_convex(S, sym) and injects)


def check_symmetrizer(S: SymetronStructure, Y: SubsetMask) -> bool:
    """For nonempty Y: Sym(Y) is convex and injects into Y."""
    if Y.is_empty():
        raise PreconditionError("the symmetrizer check needs a nonempty subset")
    return _symmetrizer_is_sound(S, Y, SubsetMask.from_bool(_symmetrizer_flags(S, Y)))


def sym_between(S: SymetronStructure, Y: SubsetMask, Z: SubsetMask) -> SubsetMask:
    """{x : s_x(Y) = Z}"""
    if len(Y) != len(Z):
        return SubsetMask.empty(S.order)
    y = _members(Y)
    if len(y) == 0:
        return SubsetMask.full(S.order)
    return SubsetMask.from_bool(Z.to_bool()[S.s[y, :]].all(axis=0))


def symmetrizer_of_family(S: SymetronStructure, family: Iterable[SubsetMask]) -> SubsetMask:
    """
    The points whose symmetry permutes a finite family of subsets. It is
    convex (asserted).
    """
    family = set(family)
    flags = np.zeros(S.order, dtype=bool)
    for x in range(S.order):
        flags[x] = {reflect(S, A, x) for A in family} == family
    sym = SubsetMask.from_bool(flags)
    ensure(is_convex(S, sym), "symmetrizer of a family must be convex")
    return sym


def _saturation_rounds(S: SymetronStructure, flags: np.ndarray, max_steps: int = None):
    steps = 0
    while True:
        y = np.flatnonzero(flags)
        new = flags.copy()
        new[S.s[np.ix_(y, y)].ravel()] = True
        new[S.midpoint[np.ix_(y, y)].ravel()] = True
        if (new == flags).all():
            return flags, steps
        if max_steps is not None and steps >= max_steps:
            raise StepBudgetExceeded(
                f"closure needs more than {max_steps} rounds",
                partial=SubsetMask.from_bool(flags),
                steps=steps,
            )
        flags = new
        steps += 1


def convex_closure(S: SymetronStructure, Y: SubsetMask) -> Tuple[SubsetMask, int]:
    """
    The least convex superset of Y, by rounds that add every symmetric s(x, y)
    and every midpoint m(x, y) of the current set.

    Returns
    -------
    (SubsetMask, int)
        The closure and the number of rounds that added points. The closure
        is convex, midpoint-closed and, when nonempty, equal to its own
        symmetrizer (asserted).

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.symetron_from_group(kl.cyclic_group(5))
    >>> hull, steps = kl.convex_closure(z5, kl.SubsetMask.parse("0,1", 5))
    >>> len(hull), steps
    (5, 1)
    """
    flags, steps = _saturation_rounds(S, Y.to_bool())
    hull = SubsetMask.from_bool(flags)
    ensure(is_convex(S, hull) and is_midpoint_closed(S, hull), "hull is not convex")
    if not hull.is_empty():
        ensure(symmetrizer(S, hull) == hull, "a convex set must equal its symmetrizer")
    return hull, steps


def convexity_equivalence_holds(S: SymetronStructure, Y: SubsetMask) -> bool:
    """convex ⇔ midpoint-closed ⇔ (Y = ∅ or Y = Sym(Y))"""
    convex = is_convex(S, Y)
    own = Y.is_empty() or SubsetMask.from_bool(_symmetrizer_flags(S, Y)) == Y
    return convex == is_midpoint_closed(S, Y) == own


def enumerate_convex(S: SymetronStructure, cap: int = DEFAULT_CAP) -> List[SubsetMask]:
    """
    Every convex subset, by next-closure enumeration of `convex_closure` in
    lectic order. The empty set comes first.

    Examples
    --------
    >>> import kloops as kl
    >>> len(kl.enumerate_convex(kl.symetron_from_group(kl.cyclic_group(5))))
    7
    """
    found = enumerate_closed_sets(S.order, lambda Y: convex_closure(S, Y)[0], cap)
    for Y in found:
        ensure(convexity_equivalence_holds(S, Y), f"{Y.format()} breaks the convexity equivalence")
    return found


def translate(S: SymetronStructure, X: SubsetMask, u: int, v: int) -> SubsetMask:
    """s_u(s_v(X)): reflect every point through v, then through u."""
    return SubsetMask.from_indices(S.order, S.s[S.s[_members(X), v], u])


def cover_by_translates(
    S: SymetronStructure, X: SubsetMask, cap: int = DEFAULT_CAP
) -> List[Tuple[int, int]]:
    """
    Greedy cover of the carrier by translates s_u s_v X: each round takes the
    pair (u, v) with the largest number of newly covered points, ties broken
    by the lexicographically least pair.

    Parameters
    ----------
    S
        A symétron.
    X
        A nonempty subset.
    cap
        Largest number of translates allowed.

    Returns
    -------
    list of (int, int)
        The selected pairs, in selection order; their translates cover S.

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.symetron_from_group(kl.cyclic_group(5))
    >>> len(kl.cover_by_translates(z5, kl.SubsetMask.parse("0", 5)))
    5
    """
    if X.is_empty():
        raise PreconditionError("cannot cover the carrier with translates of the empty set")

    n = S.order
    x = _members(X)
    images = S.s[S.s[x[:, None, None], np.arange(n)[None, None, :]], np.arange(n)[None, :, None]]
    # images[i, u, v] = s_u(s_v(x_i))
    translates = {}
    for u in range(n):
        for v in range(n):
            bits = 0
            for p in images[:, u, v].tolist():
                bits |= 1 << p
            translates[(u, v)] = bits

    full = (1 << n) - 1
    covered = 0
    chosen = []
    while covered != full:
        best, best_gain = None, 0
        for pair, bits in translates.items():
            gain = bin(bits & ~covered).count("1")
            if gain > best_gain:
                best, best_gain = pair, gain
        ensure(best is not None, "translates failed to cover the carrier")
        chosen.append(best)
        covered |= translates[best]
        if len(chosen) > cap:
            raise CapExceeded(f"more than {cap} translates selected", partial=chosen[:cap])

    return chosen


def _decomposing_family(
    A: SubsetMask, convex: List[SubsetMask]
) -> Optional[List[SubsetMask]]:
    """
    Searches pairwise disjoint convex sets, none containing A, whose union
    covers A. Returns such a family or None.
    """
    if A.is_empty():
        return None
    usable = [X for X in convex if not (X & A).is_empty() and not A.issubset(X)]

    def search(covered: SubsetMask, taken: SubsetMask, family):
        if A.issubset(covered):
            return list(family)
        first = (A - covered).members[0]
        for X in usable:
            if first in X and (X & taken).is_empty():
                family.append(X)
                found = search(covered | X, taken | X, family)
                if found is not None:
                    return found
                family.pop()
        return None

    empty = SubsetMask.empty(A.order)
    return search(empty, empty, [])


def is_indecomposable(
    S: SymetronStructure, A: SubsetMask, cross_check: bool = False, cap: int = DEFAULT_CAP
) -> bool:
    """
    A is indecomposable when any finite family of pairwise disjoint convex
    sets covering A has a member containing A. Singletons are convex, so on a
    finite carrier this holds iff |A| <= 1.

    Parameters
    ----------
    S
        A symétron.
    A
        Any subset.
    cross_check
        Also run the definitional search over all convex families (carriers
        of order <= 7 only) and assert that it agrees.
    cap
        Cap for the convex-set enumeration of the cross-check.
    """
    closed_form = len(A) <= 1
    if cross_check:
        if S.order > INDECOMPOSABLE_SEARCH_BOUND:
            logger.debug("order %d is too large for the definitional search", S.order)
        else:
            family = _decomposing_family(A, enumerate_convex(S, cap))
            ensure((family is None) == closed_form, f"indecomposability of {A.format()} disagrees")
    return closed_form


def decompose_indecomposable(S: SymetronStructure, A: SubsetMask) -> List[SubsetMask]:
    """
    Splits A into pairwise disjoint indecomposable parts: its singletons when
    |A| >= 2, [A] for a singleton and [] for the empty set.
    """
    if A.is_empty():
        return []
    return [SubsetMask.from_indices(S.order, [a]) for a in A.members]


def elliptic_generate(
    S: SymetronStructure, parts: List[SubsetMask], max_steps: int = None
) -> Tuple[SubsetMask, int]:
    """
    The sub-symétron generated by parts sharing a common point, by alternating
    symmetries and midpoints.

    Parameters
    ----------
    S
        A symétron.
    parts
        Subsets whose intersection is nonempty.
    max_steps
        Round budget; defaults to the carrier order, which always suffices.

    Returns
    -------
    (SubsetMask, int)
        The generated convex set and the number of rounds used.

    Notes
    -----
    Raises `PreconditionError` when the parts share no point and
    `StepBudgetExceeded` (with the partial closure) when the budget runs out.
    """
    if not parts:
        raise PreconditionError("elliptic generation needs at least one part")
    common = parts[0]
    union = parts[0]
    for part in parts[1:]:
        common = common & part
        union = union | part
    if common.is_empty():
        raise PreconditionError("the parts must share a common point")

    if max_steps is None:
        max_steps = S.order
    flags, steps = _saturation_rounds(S, union.to_bool(), max_steps)
    result = SubsetMask.from_bool(flags)
    if not all(p.issubset(result) and is_convex(S, result) for p in parts):
        raise InvariantViolation("generated set does not contain every part")
    return result, steps


def check_complement_injection(S: SymetronStructure, Y: SubsetMask) -> bool:
    """
    For convex Y and every x outside Y, y ↦ s_y(x) injects Y into the
    complement of Y.
    """
    if not is_convex(S, Y):
        raise PreconditionError(f"{Y.format()} is not convex")
    y = _members(Y)
    inside = Y.to_bool()
    for x in np.flatnonzero(~inside):
        images = S.s[x, y]
        if inside[images].any() or len(np.unique(images)) != len(y):
            return False
    return True


def is_automorphism(S: SymetronStructure, f) -> bool:
    """True iff f(s(x, y)) = s(f(x), f(y)) for a bijection f."""
    f = np.asarray(f, dtype=np.int64)
    if sorted(f.tolist()) != list(range(S.order)):
        return False
    return bool(np.array_equal(f[S.s], S.s[f[:, None], f[None, :]]))


def check_automorphism_preserves_convexity(S: SymetronStructure, f, Y: SubsetMask) -> bool:
    """The image of a convex set under a symétron automorphism is convex."""
    if not is_automorphism(S, f):
        raise PreconditionError("not a symétron automorphism")
    if not is_convex(S, Y):
        raise PreconditionError(f"{Y.format()} is not convex")
    f = np.asarray(f, dtype=np.int64)
    return is_convex(S, SubsetMask.from_indices(S.order, f[_members(Y)]))
