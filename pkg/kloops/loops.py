"""
Loops, Bol loops and K-loops given by Cayley tables.

All axiom checks are exhaustive and vectorised: triples are built with numpy
broadcasting over the carrier and the first counterexample (in lexicographic
order) is returned as a witness.
"""
from dataclasses import dataclass, field
import logging
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .constants import DEFAULT_CAP, POWER_WINDOW_FACTOR
from .errors import (
    CapExceeded,
    NoIdentity,
    NotLatin,
    NotTwoDivisible,
    PowerAmbiguous,
    PreconditionError,
    ensure,
)
from .permutations import Permutation, precession_table
from .tables import CayleyTable, canonicalize, find_identity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoopFlags:
    is_bol: bool
    is_aip: bool
    is_u2d: bool
    is_commutative: bool
    is_associative: bool

    @property
    def is_kloop(self) -> bool:
        return self.is_bol and self.is_aip


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _latin_witness(op: np.ndarray) -> Optional[Tuple[str, int, int, int]]:
    n = op.shape[0]
    idx = np.arange(n)
    for axis, name, expected in ((1, "row", idx[None, :]), (0, "column", idx[:, None])):
        ok = (np.sort(op, axis=axis) == expected).all(axis=axis)
        if not ok.all():
            line = int(np.flatnonzero(~ok)[0])
            values = op[line, :] if axis == 1 else op[:, line]
            seen = {}
            for pos, v in enumerate(values.tolist()):
                if v in seen:
                    return name, line, seen[v], pos
                seen[v] = pos
    return None


def _bol_witness(op: np.ndarray) -> Optional[Tuple[int, int, int]]:
    n = op.shape[0]
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    lhs = op[a, op[b, op[a, c]]]
    rhs = op[op[a, op[b, a]], c]
    return _first(lhs != rhs)


def _associativity_witness(op: np.ndarray) -> Optional[Tuple[int, int, int]]:
    n = op.shape[0]
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    return _first(op[a, op[b, c]] != op[op[a, b], c])


class LoopStructure:
    def __init__(self, table: CayleyTable, relabeling: Tuple[int, ...] = None):
        """
        A validated loop whose identity is 0. Use `make_loop` to build one from
        an arbitrary table.

        Parameters
        ----------
        table
            A Latin square whose identity element is 0.
        relabeling
            The relabeling (perm[old] = new) that moved the identity of the
            input table to 0, if any.

        Attributes
        ----------
        op, ldiv, rdiv
            n×n arrays: op[a, b] = a+b, ldiv[a, b] = a\\b (the x with
            a+x = b), rdiv[b, a] = b/a (the x with x+a = b).
        left_inverse, right_inverse
            left_inverse[a]+a = 0 and a+right_inverse[a] = 0.
        doubling, halving
            doubling[x] = x+x; halving is its inverse, None unless the loop is
            uniquely 2-divisible.
        flags
            Cached `LoopFlags`.
        """
        op = table.entries
        n = table.order
        ensure(find_identity(table) == 0, "loop identity must be index 0")

        rows = np.arange(n)[:, None]
        cols = np.arange(n)[None, :]
        ldiv = np.empty_like(op)
        ldiv[rows, op] = cols
        rdiv = np.empty_like(op)
        rdiv[op, cols] = rows

        self.table = table
        self.relabeling = tuple(relabeling) if relabeling is not None else tuple(range(n))
        self.op = op
        self.ldiv = ldiv
        self.rdiv = rdiv
        self.left_inverse = rdiv[0, :].copy()
        self.right_inverse = ldiv[:, 0].copy()
        self.doubling = op[np.arange(n), np.arange(n)].copy()

        is_u2d = len(np.unique(self.doubling)) == n
        self.halving = np.argsort(self.doubling) if is_u2d else None

        for arr in (self.ldiv, self.rdiv, self.left_inverse, self.right_inverse, self.doubling):
            arr.setflags(write=False)

        self.flags = LoopFlags(
            is_bol=_bol_witness(op) is None,
            is_aip=self._aip_witness() is None,
            is_u2d=is_u2d,
            is_commutative=bool((op == op.T).all()),
            is_associative=_associativity_witness(op) is None,
        )

    @property
    def order(self) -> int:
        return self.table.order

    @property
    def identity(self) -> int:
        return 0

    def has_two_sided_inverses(self) -> bool:
        return bool((self.left_inverse == self.right_inverse).all())

    def _aip_witness(self):
        if not self.has_two_sided_inverses():
            a = int(np.flatnonzero(self.left_inverse != self.right_inverse)[0])
            return (a,)
        inv = self.left_inverse
        return _first(inv[self.op] != self.op[inv[:, None], inv[None, :]])

    def add(self, a: int, b: int) -> int:
        return int(self.op[a, b])

    def neg(self, a: int) -> int:
        """
        The two-sided inverse -a. Raises `PreconditionError` when some element
        of the loop has distinct left and right inverses.
        """
        if not self.has_two_sided_inverses():
            raise PreconditionError("inverses are not two-sided in this loop")
        return int(self.left_inverse[a])

    def __eq__(self, other):
        if not isinstance(other, LoopStructure):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        kind = "K-loop" if self.flags.is_kloop else "Bol loop" if self.flags.is_bol else "loop"
        return f"LoopStructure(order={self.order}, kind={kind})"


def make_loop(t: CayleyTable) -> LoopStructure:
    """
    Validates a table as a loop and moves its identity to index 0.

    Parameters
    ----------
    t
        Any table.

    Returns
    -------
    LoopStructure
        The loop with every flag computed by exhaustive check.

    Notes
    -----
    Raises `NotLatin` (with a witness: row/column, index and two positions
    holding the same entry) or `NoIdentity`.

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.make_loop(kl.CayleyTable([[(x + y) % 5 for y in range(5)] for x in range(5)]))
    >>> z5.flags.is_kloop, z5.flags.is_u2d
    (True, True)
    """
    witness = _latin_witness(t.entries)
    if witness is not None:
        kind, line, p, q = witness
        raise NotLatin(
            f"{kind} {line} repeats an entry at positions {p} and {q}", witness=witness
        )
    if find_identity(t) is None:
        raise NoIdentity("table has no two-sided identity element")

    table, relabeling = canonicalize(t, return_relabeling=True)
    return LoopStructure(table, relabeling)


def bol_witness(L: LoopStructure) -> Optional[Tuple[int, int, int]]:
    """First (a, b, c) with a+(b+(a+c)) != (a+(b+a))+c, or None."""
    return _bol_witness(L.op)


def aip_witness(L: LoopStructure) -> Optional[tuple]:
    """
    First (a, b) with -(a+b) != -a-b, or None. When inverses are one-sided
    the witness is the 1-tuple (a,) of an element whose inverses differ.
    """
    return L._aip_witness()


def associativity_witness(L: LoopStructure) -> Optional[Tuple[int, int, int]]:
    return _associativity_witness(L.op)


def is_bol(L: LoopStructure) -> bool:
    return L.flags.is_bol


def is_aip(L: LoopStructure) -> bool:
    return L.flags.is_aip


def is_kloop(L: LoopStructure) -> bool:
    return L.flags.is_kloop


def is_commutative(L: LoopStructure) -> bool:
    return L.flags.is_commutative


def is_associative(L: LoopStructure) -> bool:
    return L.flags.is_associative


def is_uniquely_2_divisible(L: LoopStructure) -> bool:
    return L.flags.is_u2d


def half(L: LoopStructure, x: int) -> int:
    """
    The unique y with y+y = x.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.half(kl.cyclic_kloop(5), 1)
    3
    """
    if L.halving is None:
        raise NotTwoDivisible("doubling is not a bijection on this loop")
    return int(L.halving[x])


def _accumulate(L: LoopStructure, a: int, n: int, left: bool) -> int:
    value = 0
    for _ in range(n):
        value = int(L.op[a, value]) if left else int(L.op[value, a])
    return value


def power(L: LoopStructure, a: int, n: int) -> int:
    """
    The power a·n, with a·0 = 0, a·(n+1) = a+(a·n) and a·(-n) = (-a)·n.

    Parameters
    ----------
    L
        A loop, normally Bol.
    a
        The element.
    n
        Any integer.

    Returns
    -------
    int
        The power a·n.

    Notes
    -----
    Left accumulation a+(a+(...)) is compared with right accumulation
    ((...)+a)+a. On a Bol loop they always agree; elsewhere a disagreement (or
    one-sided inverse of a for negative n) raises `PowerAmbiguous`.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.power(kl.cyclic_kloop(5), 2, 3)
    1
    """
    if n < 0:
        if L.left_inverse[a] != L.right_inverse[a]:
            raise PowerAmbiguous(f"element {a} has distinct left and right inverses")
        a = int(L.left_inverse[a])
        n = -n

    left = _accumulate(L, a, n, left=True)
    right = _accumulate(L, a, n, left=False)
    if left != right:
        ensure(not L.flags.is_bol, f"powers of {a} are ambiguous in a Bol loop")
        raise PowerAmbiguous(f"a+(a+...) and (...+a)+a disagree for a={a}, n={n}")
    return left


def power_table(L: LoopStructure, window: int) -> np.ndarray:
    """
    Returns
    -------
    numpy.ndarray
        n×(2·window+1) array P with P[a, window + k] = a·k for |k| <= window,
        by left accumulation.
    """
    n = L.order
    idx = np.arange(n)
    table = np.zeros((n, 2 * window + 1), dtype=np.int64)
    pos = np.zeros(n, dtype=np.int64)
    neg = np.zeros(n, dtype=np.int64)
    inv = L.left_inverse
    for k in range(1, window + 1):
        pos = L.op[idx, pos]
        neg = L.op[inv, neg]
        table[:, window + k] = pos
        table[:, window - k] = neg
    return table


def element_orders(L: LoopStructure) -> np.ndarray:
    """Vector of the least k > 0 with a·k = 0, for every a."""
    n = L.order
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    value = np.zeros(n, dtype=np.int64)
    for k in range(1, n + 1):
        value = L.op[idx, value]
        orders[(value == 0) & (orders == 0)] = k
        if orders.all():
            break
    return orders


def element_order(L: LoopStructure, a: int) -> int:
    """
    Least k > 0 with a·k = 0. The orbit of 0 under x ↦ a+x is finite, so this
    always terminates.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.element_order(kl.cyclic_kloop(5), 1)
    5
    """
    value = int(L.op[a, 0])
    k = 1
    while value != 0:
        value = int(L.op[a, value])
        k += 1
    return k


@dataclass(frozen=True)
class ItemVerdict:
    passed: bool
    witness: Optional[tuple] = None


@dataclass
class IdentityReport:
    """
    Verdicts for the K-loop identity suite, keyed by item:

    - "1": a+b = δ_{a,b}(b+a), witness (a, b)
    - "2": a·n + (a·m + x) = a·(n+m) + x, witness (a, n, m, x)
    - "3": δ_{a·n, a·m} = Id, witness (a, n, m)
    - "3-literal": δ_{a·m, a·m} = Id, witness (a, m)
    - "4": δ_{a,b}^{-1} = δ_{b,a}, witness (a, b)
    - "5": δ_{a,b} = δ_{-b, b+a}, witness (a, b)
    - "6": δ_{a, b+a} = δ_{a,b}, witness (a, b)
    - "7": every δ_{a,b} is an automorphism, witness (a, b, x, y)
    - "8": (a+b)·2 = a+(b·2+a), witness (a, b)
    - "9": doubling injective iff no element of order 2, witness (a,) of an
      element of order 2 or () when injectivity fails otherwise
    - "10" (only when requested): involutive fixed-point-free automorphisms
      are the negation, witness the offending image tuple
    """

    order: int
    window: int
    items: Dict[str, ItemVerdict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.items.values())

    def failures(self) -> List[str]:
        return [k for k, v in self.items.items() if not v.passed]


def _verdict(witness) -> ItemVerdict:
    return ItemVerdict(passed=witness is None, witness=witness)


def _power_items(L: LoopStructure, d: np.ndarray, window: int):
    n = L.order
    op = L.op
    p = power_table(L, 2 * window)
    offset = 2 * window
    idx = np.arange(n)
    steps = np.arange(-window, window + 1)

    item_2 = None
    for i in steps:
        # rows: m, axes (m, a, x)
        lhs = op[p[:, offset + i][None, :, None], op[p[:, offset + steps].T[:, :, None], idx[None, None, :]]]
        rhs = op[p[:, offset + i + steps].T[:, :, None], idx[None, None, :]]
        hit = _first(lhs != rhs)
        if hit is not None:
            m, a, x = hit
            item_2 = (a, int(i), int(steps[m]), x)
            break

    not_trivial = ~(d == idx).all(axis=2)
    pw = p[:, offset + steps]
    grid = not_trivial[pw[:, :, None], pw[:, None, :]]
    hit = _first(grid)
    item_3 = None if hit is None else (hit[0], int(steps[hit[1]]), int(steps[hit[2]]))
    diag = not_trivial[pw, pw]
    hit = _first(diag)
    item_3_literal = None if hit is None else (hit[0], int(steps[hit[1]]))
    return item_2, item_3, item_3_literal


def check_kloop_identities(
    L: LoopStructure, include_involution_item: bool = False, cap: int = DEFAULT_CAP
) -> IdentityReport:
    """
    Verifies the K-loop identity suite exhaustively. Items with integer
    parameters n, m range over |n|, |m| <= 2·order.

    Parameters
    ----------
    L
        A K-loop.
    include_involution_item
        Also run item 10 (`check_involutive_fpf_is_neg`); needs a uniquely
        2-divisible loop and an automorphism enumeration within `cap`.
    cap
        Automorphism cap for item 10.

    Returns
    -------
    IdentityReport
        One verdict per item; failures carry a witness.

    Notes
    -----
    Raises `PreconditionError` when L is not a K-loop. Failing items are
    reported, never raised.

    Examples
    --------
    >>> import kloops as kl
    >>> report = kl.check_kloop_identities(kl.cyclic_kloop(7))
    >>> report.passed
    True
    """
    if not L.flags.is_kloop:
        raise PreconditionError("the identity suite needs a K-loop")

    n = L.order
    op = L.op
    inv = L.left_inverse
    dbl = L.doubling
    window = POWER_WINDOW_FACTOR * n
    d = precession_table(L)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    c = np.arange(n)[None, None, :]
    report = IdentityReport(order=n, window=window)

    report.items["1"] = _verdict(_first(d[a, b, op[b, a]] != op[a, b]))

    item_2, item_3, item_3_literal = _power_items(L, d, window)
    report.items["2"] = _verdict(item_2)
    report.items["3"] = _verdict(item_3)
    report.items["3-literal"] = _verdict(item_3_literal)

    d_swapped = d.transpose(1, 0, 2)
    composed = d[a[:, :, None], b[:, :, None], d_swapped]
    report.items["4"] = _verdict(_first((composed != c).any(axis=2)))

    report.items["5"] = _verdict(_first((d[inv[b], op[b, a]] != d).any(axis=2)))
    report.items["6"] = _verdict(_first((d[a, op[b, a]] != d).any(axis=2)))

    item_7 = None
    for i in range(n):
        di = d[i]
        lhs = di[:, op]
        rhs = op[di[:, :, None], di[:, None, :]]
        hit = _first(lhs != rhs)
        if hit is not None:
            item_7 = (i,) + hit
            break
    report.items["7"] = _verdict(item_7)

    report.items["8"] = _verdict(_first(dbl[op[a, b]] != op[a, op[dbl[b], a]]))

    injective = L.flags.is_u2d
    order_two = np.flatnonzero((dbl == 0) & (np.arange(n) != 0))
    if injective == (len(order_two) == 0):
        report.items["9"] = ItemVerdict(True)
    else:
        report.items["9"] = ItemVerdict(
            False, (int(order_two[0]),) if len(order_two) else ()
        )

    if include_involution_item:
        if not L.flags.is_u2d:
            raise PreconditionError("the involution item needs a uniquely 2-divisible loop")
        offending = involutive_fpf_automorphisms(L, cap)
        offending = [f for f in offending if not np.array_equal(f.to_array(), inv)]
        report.items["10"] = ItemVerdict(
            not offending, offending[0].image if offending else None
        )

    logger.debug("identity suite on order %d: failures %s", n, report.failures())
    return report


def power_associativity_check(L: LoopStructure) -> bool:
    """a·n + (a·m + x) = a·(n+m) + x for all a, x and |n|, |m| <= 2·order."""
    window = POWER_WINDOW_FACTOR * L.order
    item_2, _, _ = _power_items(L, precession_table(L), window)
    return item_2 is None


# Morphism search shared by `automorphisms` and `subloops.find_isomorphism`.


def commutant_sizes(L: LoopStructure) -> np.ndarray:
    """Number of y with x+y = y+x, for every x."""
    return (L.op == L.op.T).sum(axis=1)


def fingerprints(L: LoopStructure) -> np.ndarray:
    """Per-element invariant (element order, commutant size), packed in one int."""
    return element_orders(L) * (L.order + 1) + commutant_sizes(L)


def generating_plan(L: LoopStructure) -> List[Tuple[int, list]]:
    """
    Chooses generators greedily (largest element order first) and records how
    every other element is derived from them.

    Returns
    -------
    list of (int, list)
        One entry per generator: the generator and the derivation steps
        (target, kind, x, y) of the elements it adds, where kind 0, 1, 2 means
        target = x+y, x\\y, x/y.
    """
    n = L.order
    tables = (L.op, L.ldiv, L.rdiv)
    orders = element_orders(L)
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    known = [0]
    plan = []

    for g in sorted(range(n), key=lambda v: (-orders[v], v)):
        if inside[g]:
            continue
        inside[g] = True
        known.append(g)
        steps = []
        changed = True
        while changed:
            changed = False
            for kind, tab in enumerate(tables):
                for x in list(known):
                    for y in list(known):
                        z = int(tab[x, y])
                        if not inside[z]:
                            inside[z] = True
                            known.append(z)
                            steps.append((z, kind, x, y))
                            changed = True
        plan.append((g, steps))
    return plan


def morphism_search(source: LoopStructure, target: LoopStructure) -> Iterator[np.ndarray]:
    """
    Yields every isomorphism source → target as an image array, in
    lexicographic order of the generator images.

    Generators of the source are mapped to target elements with the same
    fingerprint; the rest of the map follows from the derivation plan, and each
    partial map is checked on the subloop generated so far.
    """
    n = source.order
    if target.order != n:
        return
    fp_s, fp_t = fingerprints(source), fingerprints(target)
    if sorted(fp_s.tolist()) != sorted(fp_t.tolist()):
        return

    plan = generating_plan(source)
    tables = (target.op, target.ldiv, target.rdiv)
    candidates = {g: np.flatnonzero(fp_t == fp_s[g]).tolist() for g, _ in plan}

    prefixes = []
    members = [0]
    for g, steps in plan:
        members = members + [g] + [z for z, _, _, _ in steps]
        prefixes.append(np.array(members, dtype=np.int64))

    image = np.full(n, -1, dtype=np.int64)
    image[0] = 0
    used = np.zeros(n, dtype=bool)
    used[0] = True

    def extend(level):
        if level == len(plan):
            yield image.copy()
            return
        g, steps = plan[level]
        for c in candidates[g]:
            if used[c]:
                continue
            assigned = [g]
            image[g] = c
            used[c] = True
            ok = True
            for z, kind, x, y in steps:
                v = int(tables[kind][image[x], image[y]])
                if used[v]:
                    ok = False
                    break
                image[z] = v
                used[v] = True
                assigned.append(z)
            if ok:
                s = prefixes[level]
                fs = image[s]
                ok = np.array_equal(image[source.op[np.ix_(s, s)]], target.op[np.ix_(fs, fs)])
            if ok:
                yield from extend(level + 1)
            for z in assigned:
                used[image[z]] = False
                image[z] = -1

    yield from extend(0)


def automorphisms(L: LoopStructure, cap: int = DEFAULT_CAP) -> List[Permutation]:
    """
    Every automorphism of L, found by backtracking over generator images with
    partial-image pruning.

    Parameters
    ----------
    L
        A loop.
    cap
        Largest number of automorphisms allowed.

    Returns
    -------
    list of Permutation
        The automorphisms, the identity first.

    Notes
    -----
    Raises `CapExceeded` (with the automorphisms found so far as `partial`)
    when there are more than `cap`.

    Examples
    --------
    >>> import kloops as kl
    >>> len(kl.automorphisms(kl.cyclic_kloop(5)))
    4
    """
    found = []
    for image in morphism_search(L, L):
        found.append(Permutation.from_array(image))
        if len(found) > cap:
            raise CapExceeded(
                f"more than {cap} automorphisms", partial=found[:cap]
            )
    logger.debug("order %d loop has %d automorphisms", L.order, len(found))
    return found


def involutive_fpf_automorphisms(L: LoopStructure, cap: int = DEFAULT_CAP) -> List[Permutation]:
    """Automorphisms ε with ε∘ε = Id whose only fixed point is 0."""
    out = []
    for f in automorphisms(L, cap):
        arr = f.to_array()
        if np.array_equal(arr[arr], np.arange(L.order)) and f.fixed_points() == (0,):
            out.append(f)
    return out


def check_involutive_fpf_is_neg(L: LoopStructure, cap: int = DEFAULT_CAP) -> bool:
    """
    Checks that every involutive automorphism of L fixing only 0 is the
    negation x ↦ -x. Vacuously true when there is no such automorphism.

    Notes
    -----
    Raises `PreconditionError` unless L is a uniquely 2-divisible K-loop, and
    `CapExceeded` from the automorphism enumeration.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.check_involutive_fpf_is_neg(kl.cyclic_kloop(3))
    True
    """
    if not (L.flags.is_kloop and L.flags.is_u2d):
        raise PreconditionError("needs a uniquely 2-divisible K-loop")
    neg = L.left_inverse
    return all(np.array_equal(f.to_array(), neg) for f in involutive_fpf_automorphisms(L, cap))
