"""
Subloops, normality, quotients, morphisms, centralizers and automorphic
loops.
"""
from dataclasses import dataclass, field
import logging
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .constants import DEFAULT_CAP, POWER_WINDOW_FACTOR
from .errors import CapExceeded, NotNormal, PreconditionError, ensure
from .loops import LoopStructure, make_loop, morphism_search, power_table
from .permutations import (
    inner_generator_array,
    is_fixed_point_free,
    precession_table,
)
from .tables import CayleyTable, SubsetMask, enumerate_closed_sets

logger = logging.getLogger(__name__)


def _require_bol(L: LoopStructure):
    if not L.flags.is_bol:
        raise PreconditionError("subloops are characterised by + and - only in Bol loops")


def _saturate(L: LoopStructure, flags: np.ndarray, divisions: bool = False) -> np.ndarray:
    flags = flags.copy()
    flags[0] = True
    while True:
        s = np.flatnonzero(flags)
        new = flags.copy()
        new[L.op[np.ix_(s, s)].ravel()] = True
        new[L.left_inverse[s]] = True
        if divisions:
            new[L.ldiv[np.ix_(s, s)].ravel()] = True
            new[L.rdiv[np.ix_(s, s)].ravel()] = True
        if (new == flags).all():
            return flags
        flags = new


def _is_closed(L: LoopStructure, flags: np.ndarray, divisions: bool = False) -> bool:
    s = np.flatnonzero(flags)
    if not flags[0] or not flags[L.op[np.ix_(s, s)]].all():
        return False
    if divisions:
        return bool(flags[L.ldiv[np.ix_(s, s)]].all() and flags[L.rdiv[np.ix_(s, s)]].all())
    return bool(flags[L.left_inverse[s]].all())


def subloop_closure(L: LoopStructure, seed: SubsetMask) -> SubsetMask:
    """
    The least subloop containing `seed`: the least superset of seed ∪ {0}
    closed under + and -.

    Parameters
    ----------
    L
        A Bol loop.
    seed
        Any subset.

    Returns
    -------
    SubsetMask
        The generated subloop.

    Examples
    --------
    >>> import kloops as kl
    >>> z9 = kl.cyclic_kloop(9)
    >>> kl.subloop_closure(z9, kl.SubsetMask.parse("3", 9)).format()
    '0,3,6'
    """
    _require_bol(L)
    return SubsetMask.from_bool(_saturate(L, seed.to_bool()))


def is_subloop(L: LoopStructure, C: SubsetMask) -> bool:
    """True iff 0 ∈ C and C is closed under + and -. Needs a Bol loop."""
    _require_bol(L)
    return _is_closed(L, C.to_bool())


def subloop_structure(L: LoopStructure, C: SubsetMask) -> Tuple[LoopStructure, Tuple[int, ...]]:
    """
    The subloop C as a loop in its own right.

    Returns
    -------
    (LoopStructure, tuple of int)
        The restricted loop on indices 0..|C|-1 and the members of C, so that
        index i of the restricted loop is element members[i] of L.
    """
    members = np.array(C.members, dtype=np.int64)
    if len(members) == 0 or not _is_closed(L, C.to_bool(), divisions=True):
        raise PreconditionError(f"{C.format()} is not a subloop")
    position = np.full(L.order, -1, dtype=np.int64)
    position[members] = np.arange(len(members))
    table = CayleyTable(position[L.op[np.ix_(members, members)]])
    return make_loop(table), tuple(int(m) for m in members)


def _restrict(mask: SubsetMask, members: Tuple[int, ...]) -> SubsetMask:
    position = {m: i for i, m in enumerate(members)}
    return SubsetMask.from_indices(len(members), (position[m] for m in mask.members))


def _stable_under_inner(L: LoopStructure, flags: np.ndarray) -> bool:
    rows = inner_generator_array(L)
    return bool(flags[rows[:, np.flatnonzero(flags)]].all())


def _require_subloop(L: LoopStructure, C: SubsetMask):
    if not is_subloop(L, C):
        raise PreconditionError(f"{C.format()} is not a subloop")


def is_normal(L: LoopStructure, C: SubsetMask) -> bool:
    """
    True iff C is setwise fixed by every inner generator r_{a,b}, g_{a,b},
    c_a. Stability under the generators implies stability under the whole
    inner mapping group I(B), since each generator is a bijection of a finite
    set.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.is_normal(kl.cyclic_kloop(9), kl.SubsetMask.parse("0,3,6", 9))
    True
    """
    _require_subloop(L, C)
    return _stable_under_inner(L, C.to_bool())


def is_normal_by_cosets(L: LoopStructure, C: SubsetMask) -> bool:
    """
    True iff for all a, b:
    b+C = C+b, (a+b)+C = a+(b+C) and C+(a+b) = (C+a)+b, as sets.
    """
    _require_subloop(L, C)
    op = L.op
    n = L.order
    s = np.array(C.members, dtype=np.int64)
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    idx = np.arange(n)

    def same(x, y):
        return np.array_equal(np.sort(x, axis=-1), np.sort(y, axis=-1))

    if not same(op[idx[:, None], s[None, :]], op[s[None, :], idx[:, None]]):
        return False
    ab = op[a, b]
    if not same(op[ab, s], op[a, op[b, s]]):
        return False
    return same(op[s, ab], op[op[s, a], b])


@dataclass
class QuotientResult:
    """
    The quotient of a loop by a normal subloop C.

    Attributes
    ----------
    blocks
        The cosets x+C, ordered by least element; block 0 is C.
    table
        The block operation: block(x) ⊕ block(y) = block(x+y).
    projection
        projection[x] is the index of the block of x.
    loop
        `table` validated as a loop.
    inherited
        Which of the properties "kloop", "u2d" and "automorphic" the loop had
        and the quotient was checked to keep.
    """

    blocks: List[SubsetMask]
    table: CayleyTable
    projection: np.ndarray
    loop: LoopStructure
    inherited: Dict[str, bool] = field(default_factory=dict)


def quotient(L: LoopStructure, C: SubsetMask) -> QuotientResult:
    """
    Builds L/C, validating exhaustively that the cosets x+C partition the
    carrier and that the block operation is well defined.

    Parameters
    ----------
    L
        A loop.
    C
        A normal subloop.

    Returns
    -------
    QuotientResult
        Blocks, table and projection. When L is a K-loop (uniquely
        2-divisible, automorphic) the quotient is checked to be one too.

    Notes
    -----
    Raises `NotNormal` when the cosets do not partition the carrier or the
    operation on blocks is ill defined.

    Examples
    --------
    >>> import kloops as kl
    >>> q = kl.quotient(kl.cyclic_kloop(9), kl.SubsetMask.parse("0,3,6", 9))
    >>> q.table.order
    3
    """
    n = L.order
    s = np.array(C.members, dtype=np.int64)
    if len(s) == 0 or s[0] != 0:
        raise NotNormal(f"{C.format()} does not contain 0")

    cosets = np.sort(L.op[:, s], axis=1)
    projection = np.full(n, -1, dtype=np.int64)
    blocks = []
    for x in range(n):
        if projection[x] >= 0:
            continue
        coset = cosets[x]
        if (projection[coset] >= 0).any() or x not in coset:
            raise NotNormal(f"cosets of {C.format()} do not partition the carrier")
        projection[coset] = len(blocks)
        blocks.append(SubsetMask.from_indices(n, coset))
    if not all(np.array_equal(cosets[x], cosets[blocks[projection[x]].members[0]]) for x in range(n)):
        raise NotNormal(f"cosets of {C.format()} do not partition the carrier")

    k = len(blocks)
    representatives = np.array([blk.members[0] for blk in blocks], dtype=np.int64)
    table = projection[L.op[np.ix_(representatives, representatives)]]
    if not np.array_equal(projection[L.op], table[projection[:, None], projection[None, :]]):
        raise NotNormal(f"the operation on cosets of {C.format()} is ill defined")

    table = CayleyTable(table)
    q = make_loop(table)
    ensure(q.table == table, "quotient identity must be the block of 0")

    inherited = {}
    if L.flags.is_kloop:
        ensure(q.flags.is_kloop, "quotient of a K-loop must be a K-loop")
        inherited["kloop"] = True
        if L.flags.is_u2d:
            ensure(q.flags.is_u2d, "quotient of a u2d K-loop must be u2d")
            inherited["u2d"] = True
    if is_automorphic(L):
        ensure(is_automorphic(q), "quotient of an automorphic loop must be automorphic")
        inherited["automorphic"] = True

    logger.debug("quotient of order %d by %s has order %d", n, C.format(), k)
    return QuotientResult(blocks, table, projection, q, inherited)


@dataclass
class LoopMorphism:
    source: LoopStructure
    target: LoopStructure
    map: Tuple[int, ...]

    def __post_init__(self):
        self.map = tuple(int(v) for v in self.map)
        if len(self.map) != self.source.order:
            raise ValueError("map must have one image per source element")
        if any(not 0 <= v < self.target.order for v in self.map):
            raise ValueError("map images must be target elements")


def check_homomorphism(m: LoopMorphism) -> bool:
    """
    True iff map(0) = 0 and map(x+y) = map(x)+map(y) for all x, y.

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.cyclic_kloop(5)
    >>> kl.check_homomorphism(kl.LoopMorphism(z5, z5, (1, 2, 3, 4, 0)))
    False
    """
    f = np.array(m.map, dtype=np.int64)
    if f[0] != 0:
        return False
    return bool(np.array_equal(f[m.source.op], m.target.op[f[:, None], f[None, :]]))


def kernel(m: LoopMorphism) -> SubsetMask:
    """The preimage of 0. For a valid morphism it is a normal subloop."""
    f = np.array(m.map, dtype=np.int64)
    flags = f == 0
    if check_homomorphism(m):
        ensure(_is_closed(m.source, flags, divisions=True), "kernel is not a subloop")
        ensure(_stable_under_inner(m.source, flags), "kernel is not normal")
    return SubsetMask.from_bool(flags)


def image(m: LoopMorphism) -> SubsetMask:
    return SubsetMask.from_indices(m.target.order, set(m.map))


def induced_isomorphism(m: LoopMorphism) -> LoopMorphism:
    """
    For a homomorphism φ: B → B', the isomorphism B/ker φ → φ(B) sending the
    block of x to φ(x). The result maps into `subloop_structure(target,
    image(m))`, i.e. onto the re-indexed image.
    """
    if not check_homomorphism(m):
        raise PreconditionError("not a loop homomorphism")
    q = quotient(m.source, kernel(m))
    im = image(m)
    target, members = subloop_structure(m.target, im)
    position = {v: i for i, v in enumerate(members)}
    representatives = [blk.members[0] for blk in q.blocks]
    induced = LoopMorphism(q.loop, target, [position[m.map[r]] for r in representatives])
    ensure(check_homomorphism(induced), "induced map is not a homomorphism")
    ensure(len(set(induced.map)) == target.order, "induced map is not bijective")
    return induced


def find_isomorphism(L1: LoopStructure, L2: LoopStructure) -> Optional[Tuple[int, ...]]:
    """
    Searches for an isomorphism L1 → L2.

    Returns
    -------
    tuple of int or None
        The first isomorphism found (images of 0..n-1), deterministic under
        the lexicographic extension order; None when L1 and L2 are not
        isomorphic.

    Notes
    -----
    Generators are only mapped to elements with the same (element order,
    commutant size) fingerprint, and each partial map is checked on the
    subloop generated so far.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.find_isomorphism(kl.cyclic_kloop(9), kl.direct_product(kl.cyclic_kloop(3), kl.cyclic_kloop(3))) is None
    True
    """
    for found in morphism_search(L1, L2):
        return tuple(int(v) for v in found)
    return None


def _require_kloop(L: LoopStructure):
    if not L.flags.is_kloop:
        raise PreconditionError("centralizers are defined for K-loops")


def _trivial_precessions(L: LoopStructure) -> np.ndarray:
    """n×n boolean matrix: δ_{a,b} = Id."""
    return (precession_table(L) == np.arange(L.order)).all(axis=2)


def centralizer(L: LoopStructure, x: int) -> SubsetMask:
    """
    C_B(x) = {b : δ_{x,b} = δ_{-x,b} = Id}.

    Examples
    --------
    >>> import kloops as kl
    >>> len(kl.centralizer(kl.cyclic_kloop(5), 2))
    5
    """
    _require_kloop(L)
    trivial = _trivial_precessions(L)
    return SubsetMask.from_bool(trivial[x] & trivial[L.left_inverse[x]])


def _center_of(L: LoopStructure, c: SubsetMask, trivial: np.ndarray) -> SubsetMask:
    s = np.array(c.members, dtype=np.int64)
    flags = np.zeros(L.order, dtype=bool)
    if len(s):
        flags[s] = trivial[np.ix_(s, s)].all(axis=1)
    return SubsetMask.from_bool(flags)


def center_of_centralizer(L: LoopStructure, x: int, cap: int = DEFAULT_CAP) -> SubsetMask:
    """
    Z(C_B(x)) = {b ∈ C_B(x) : δ_{b,b'} = Id for every b' ∈ C_B(x)}.

    When L is fixed-point-free (and D(B) fits in `cap`) the centralizer lemma
    is asserted as well; see `check_centralizer_lemma`.
    """
    _require_kloop(L)
    z = _center_of(L, centralizer(L, x), _trivial_precessions(L))
    try:
        fpf = is_fixed_point_free(L, cap)
    except CapExceeded:
        logger.debug("D(B) exceeds the cap, centralizer lemma not checked")
        fpf = False
    if fpf:
        ensure(check_centralizer_lemma(L, x, cap), f"centralizer lemma fails at {x}")
    return z


def check_centralizer_lemma(L: LoopStructure, x: int, cap: int = DEFAULT_CAP) -> bool:
    """
    In a fixed-point-free K-loop: C_B(x) is stable under y ↦ y·n
    (|n| <= 2·order), and Z(C_B(x)) is a subloop whose elements pairwise
    commute and associate and which contains the subloop generated by x.

    Notes
    -----
    Raises `PreconditionError` unless L is a fixed-point-free K-loop.
    """
    _require_kloop(L)
    if not is_fixed_point_free(L, cap):
        raise PreconditionError("the centralizer lemma needs a fixed-point-free K-loop")

    trivial = _trivial_precessions(L)
    c = SubsetMask.from_bool(trivial[x] & trivial[L.left_inverse[x]])
    z = _center_of(L, c, trivial)

    cflags = c.to_bool()
    s = np.array(c.members, dtype=np.int64)
    powers = power_table(L, POWER_WINDOW_FACTOR * L.order)
    if not cflags[powers[s]].all():
        return False

    if not is_subloop(L, z):
        return False
    zs = np.array(z.members, dtype=np.int64)
    sub = L.op[np.ix_(zs, zs)]
    if not np.array_equal(sub, sub.T):
        return False
    if not trivial[np.ix_(zs, zs)].all():
        return False
    return subloop_closure(L, SubsetMask.from_indices(L.order, [x])).issubset(z)


def check_commutation_criterion(L: LoopStructure, cap: int = DEFAULT_CAP) -> bool:
    """
    In a fixed-point-free K-loop, b+b' = b'+b iff δ_{b,b'} = δ_{b',b} = Id.

    Notes
    -----
    Raises `PreconditionError` unless L is a fixed-point-free K-loop.
    """
    _require_kloop(L)
    if not is_fixed_point_free(L, cap):
        raise PreconditionError("the commutation criterion needs a fixed-point-free K-loop")
    trivial = _trivial_precessions(L)
    commute = L.op == L.op.T
    return bool(np.array_equal(commute, trivial & trivial.T))


def is_automorphic(L: LoopStructure) -> bool:
    """
    True iff every inner generator, hence every element of I(B), is an
    automorphism of L.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.is_automorphic(kl.cyclic_kloop(7))
    True
    """
    rows = np.unique(inner_generator_array(L), axis=0)
    lhs = rows[:, L.op]
    rhs = L.op[rows[:, :, None], rows[:, None, :]]
    return bool(np.array_equal(lhs, rhs))


def enumerate_subloops(L: LoopStructure, cap: int = DEFAULT_CAP) -> List[SubsetMask]:
    """
    Every subloop of L, by next-closure enumeration of `subloop_closure` in
    lectic order. {0} comes first and the full carrier last.

    Parameters
    ----------
    L
        A Bol loop.
    cap
        Largest number of subloops allowed (`CapExceeded` beyond).

    Returns
    -------
    list of SubsetMask
        The subloops.

    Examples
    --------
    >>> import kloops as kl
    >>> [c.format() for c in kl.enumerate_subloops(kl.cyclic_kloop(9))]
    ['0', '0,3,6', '0,1,2,3,4,5,6,7,8']
    """
    _require_bol(L)
    return enumerate_closed_sets(
        L.order, lambda seed: SubsetMask.from_bool(_saturate(L, seed.to_bool())), cap
    )


def join_subloops(L: LoopStructure, subsets: Iterable[SubsetMask]) -> SubsetMask:
    """The subloop generated by a family of subsets."""
    union = SubsetMask.empty(L.order)
    for c in subsets:
        union = union | c
    return subloop_closure(L, union)


def setwise_sum(L: LoopStructure, C: SubsetMask, D: SubsetMask) -> SubsetMask:
    """C+D = {c+d : c ∈ C, d ∈ D}."""
    c = np.array(C.members, dtype=np.int64)
    d = np.array(D.members, dtype=np.int64)
    return SubsetMask.from_indices(L.order, np.unique(L.op[np.ix_(c, d)]))


def check_second_isomorphism(L: LoopStructure, C: SubsetMask, D: SubsetMask) -> bool:
    """
    For subloops C, D with D normal in J = ⟨C, D⟩: checks J = C+D = D+C,
    C∩D normal in C and J/D ≅ C/(C∩D).

    Notes
    -----
    Raises `PreconditionError` when C or D is not a subloop or D is not
    normal in ⟨C, D⟩.
    """
    _require_subloop(L, C)
    _require_subloop(L, D)
    j = join_subloops(L, [C, D])
    j_loop, j_members = subloop_structure(L, j)
    d_in_j = _restrict(D, j_members)
    if not is_normal(j_loop, d_in_j):
        raise PreconditionError(f"{D.format()} is not normal in the join")

    if not (setwise_sum(L, C, D) == j and setwise_sum(L, D, C) == j):
        return False

    meet = C & D
    c_loop, c_members = subloop_structure(L, C)
    meet_in_c = _restrict(meet, c_members)
    if not is_normal(c_loop, meet_in_c):
        return False

    left = quotient(j_loop, d_in_j).loop
    right = quotient(c_loop, meet_in_c).loop
    return find_isomorphism(left, right) is not None
