"""
Groups and the K-loops built from them, plus exhaustive enumeration of small
K-loops.

Half-sandwich construction: a group G in which squaring is a bijection is a
K-loop for x+y = σ(x)·y·σ(x), where σ inverts squaring. The same operation,
restricted to X = {α(g)·g⁻¹} for an involutive automorphism α, gives a
K-loop on X whenever X is closed under it and squaring is a bijection of X.
"""
from dataclasses import dataclass
from itertools import permutations
import logging
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from .constants import CANONICAL_FORM_ORDER_BOUND, DEFAULT_CAP, ENUMERATION_ORDER_BOUND
from .errors import (
    CapExceeded,
    EvenOrder,
    NotAGroup,
    NotAutomorphism,
    NotClosed,
    NotInvolutive,
    NotTwoDivisibleGroup,
    NotTwoDivisibleSet,
    OrderTooLarge,
    ensure,
)
from .loops import LoopStructure, make_loop
from .subloops import find_isomorphism
from .symetron import SymetronStructure, make_symetron
from .tables import CayleyTable, canonicalize, find_identity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupTable:
    """
    A finite group given by its table. Build it with `make_group`.

    Attributes
    ----------
    table
        The multiplication table, row is the left factor.
    identity
        Index of the identity element.
    inverse
        inverse[g] is g⁻¹.
    """

    table: CayleyTable
    identity: int
    inverse: np.ndarray

    @property
    def op(self) -> np.ndarray:
        return self.table.entries

    @property
    def order(self) -> int:
        return self.table.order

    @property
    def squaring(self) -> np.ndarray:
        n = self.order
        return self.op[np.arange(n), np.arange(n)]

    def is_abelian(self) -> bool:
        return bool((self.op == self.op.T).all())

    def mul(self, g: int, h: int) -> int:
        return int(self.op[g, h])

    def __repr__(self):
        return f"GroupTable(order={self.order})"


def make_group(t: CayleyTable) -> GroupTable:
    """
    Checks that t is a group table: a two-sided identity, two-sided inverses
    and associativity over all triples. Raises `NotAGroup` otherwise.
    """
    e = find_identity(t)
    if e is None:
        raise NotAGroup("table has no identity element")

    op = t.entries
    n = t.order
    is_one = op == e
    if not (is_one.sum(axis=1) == 1).all() or not np.array_equal(is_one, is_one.T):
        raise NotAGroup("some element has no two-sided inverse")
    inverse = np.argmax(is_one, axis=1)

    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    bad = np.argwhere(op[a, op[b, c]] != op[op[a, b], c])
    if len(bad) > 0:
        raise NotAGroup(f"associativity fails at {tuple(int(v) for v in bad[0])}")

    inverse.setflags(write=False)
    return GroupTable(t, e, inverse)


def cyclic_group(n: int) -> GroupTable:
    """Z/n under addition."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    idx = np.arange(n)
    return make_group(CayleyTable((idx[:, None] + idx[None, :]) % n))


def metacyclic_group(m: int, n: int, r: int) -> GroupTable:
    """
    The semidirect product Z/m ⋊ Z/n where the generator of Z/n acts on Z/m
    by multiplication by r (which needs r**n ≡ 1 mod m).

    Element (t, e) has index e*m + t and

        (t, e)·(t', e') = (t + r**e · t', e + e').

    Examples
    --------
    >>> import kloops as kl
    >>> kl.metacyclic_group(3, 2, 2).is_abelian()  # S3
    False
    >>> kl.metacyclic_group(7, 3, 2).order  # Frobenius group of order 21
    21
    """
    if pow(r, n, m) != 1 % m:
        raise NotAGroup(f"{r}**{n} is not 1 modulo {m}")
    size = m * n
    t = np.arange(size) % m
    e = np.arange(size) // m
    twist = np.array([pow(r, k, m) for k in range(n)], dtype=np.int64)
    tt = (t[:, None] + twist[e][:, None] * t[None, :]) % m
    ee = (e[:, None] + e[None, :]) % n
    return make_group(CayleyTable(ee * m + tt))


def group_product(G1: GroupTable, G2: GroupTable) -> GroupTable:
    """G1 × G2, the pair (g, h) having index g * |G2| + h."""
    n2 = G2.order
    a = np.arange(G1.order * n2)
    g, h = a // n2, a % n2
    return make_group(CayleyTable(G1.op[g[:, None], g[None, :]] * n2 + G2.op[h[:, None], h[None, :]]))


def heisenberg27() -> GroupTable:
    """
    Unitriangular 3×3 matrices over Z/3, as triples (a, b, c) with index
    9a + 3b + c and

        (a, b, c)·(a', b', c') = (a + a', b + b', c + c' + a·b').

    Examples
    --------
    >>> import kloops as kl
    >>> H = kl.heisenberg27()
    >>> H.mul(9, 3)  # (1,0,0)·(0,1,0) = (1,1,1)
    13
    >>> H.mul(3, 9)  # (0,1,0)·(1,0,0) = (1,1,0)
    12
    """
    k = np.arange(27)
    a, b, c = k // 9, (k // 3) % 3, k % 3
    aa = (a[:, None] + a[None, :]) % 3
    bb = (b[:, None] + b[None, :]) % 3
    cc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % 3
    return make_group(CayleyTable(9 * aa + 3 * bb + cc))


def cyclic_kloop(n: int) -> LoopStructure:
    """
    Z/n as a K-loop. Raises `EvenOrder` unless n is odd.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.cyclic_kloop(5).flags.is_u2d
    True
    """
    if n < 1 or n % 2 == 0:
        raise EvenOrder(f"cyclic K-loops need an odd order, got {n}")
    return make_loop(cyclic_group(n).table)


def _square_root(G: GroupTable) -> np.ndarray:
    squares = G.squaring
    if len(np.unique(squares)) != G.order:
        raise NotTwoDivisibleGroup("squaring is not a bijection of the group")
    return np.argsort(squares)


def kloop_from_group(G: GroupTable) -> LoopStructure:
    """
    The half-sandwich K-loop x+y = σ(x)·y·σ(x) of a group where squaring is a
    bijection (σ is its inverse).

    Parameters
    ----------
    G
        A group. Squaring is checked for injectivity directly; it raises
        `NotTwoDivisibleGroup` on failure.

    Returns
    -------
    LoopStructure
        A uniquely 2-divisible K-loop (asserted). It is associative when G is
        abelian, and also for some nonabelian G such as `heisenberg27()`.

    Examples
    --------
    >>> import kloops as kl
    >>> L = kl.kloop_from_group(kl.metacyclic_group(7, 3, 2))
    >>> L.flags.is_kloop, L.flags.is_associative
    (True, False)
    """
    root = _square_root(G)
    idx = np.arange(G.order)
    r = root[:, None]
    table = G.op[G.op[r, idx[None, :]], r]
    L = make_loop(CayleyTable(table))
    ensure(L.flags.is_kloop and L.flags.is_u2d, "a half-sandwich loop must be a u2d K-loop")
    return L


def kloop_from_involution(
    G: GroupTable,
    alpha: Union[Sequence[int], Callable[[int], int]],
    return_index_map: bool = False,
):
    """
    The half-sandwich K-loop on X = {α(g)·g⁻¹ : g ∈ G}.

    Parameters
    ----------
    G
        A group.
    alpha
        An involutive automorphism of G, as a sequence of images or a callable.
    return_index_map
        If True, also return the tuple of group elements in loop index order.

    Returns
    -------
    LoopStructure
        The K-loop on X, re-indexed 0..|X|-1 with the identity at 0.

    Notes
    -----
    Raises `NotAutomorphism`, `NotInvolutive`, `NotTwoDivisibleSet` when
    squaring does not permute X, and `NotClosed` when X is not closed under
    the half-sandwich operation.

    Examples
    --------
    >>> import kloops as kl
    >>> Z3xZ3 = kl.group_product(kl.cyclic_group(3), kl.cyclic_group(3))
    >>> swap = [3 * (g % 3) + g // 3 for g in range(9)]
    >>> kl.kloop_from_involution(Z3xZ3, swap).order
    3
    """
    n = G.order
    if callable(alpha):
        alpha = [alpha(g) for g in range(n)]
    alpha = np.asarray(alpha, dtype=np.int64)
    if alpha.shape != (n,) or sorted(alpha.tolist()) != list(range(n)):
        raise NotAutomorphism("alpha is not a bijection of the group")
    if not np.array_equal(alpha[G.op], G.op[alpha[:, None], alpha[None, :]]):
        raise NotAutomorphism("alpha does not preserve the group operation")
    if not np.array_equal(alpha[alpha], np.arange(n)):
        raise NotInvolutive("alpha∘alpha is not the identity")

    members = np.unique(G.op[alpha, G.inverse])
    ensure(np.array_equal(alpha[members], G.inverse[members]), "α(x) must be x⁻¹ on X")

    inside = np.zeros(n, dtype=bool)
    inside[members] = True
    squares = G.squaring[members]
    if len(np.unique(squares)) != len(members) or not inside[squares].all():
        raise NotTwoDivisibleSet("squaring is not a bijection of X")

    root = np.full(n, -1, dtype=np.int64)
    root[squares] = members
    r = root[members][:, None]
    table = G.op[G.op[r, members[None, :]], r]
    if not inside[table].all():
        raise NotClosed("X is not closed under the half-sandwich operation")

    position = np.full(n, -1, dtype=np.int64)
    position[members] = np.arange(len(members))
    L = make_loop(CayleyTable(position[table]))
    ensure(L.flags.is_kloop and L.flags.is_u2d, "a twisted half-sandwich must be a u2d K-loop")

    if return_index_map:
        back = np.argsort(np.asarray(L.relabeling))
        return L, tuple(int(v) for v in members[back])
    return L


def direct_product(L1: LoopStructure, L2: LoopStructure) -> LoopStructure:
    """
    L1 × L2 with componentwise operation, the pair (x, y) having index
    x * |L2| + y.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.direct_product(kl.cyclic_kloop(3), kl.cyclic_kloop(3)).order
    9
    """
    n2 = L2.order
    a = np.arange(L1.order * n2)
    x, y = a // n2, a % n2
    table = L1.op[x[:, None], x[None, :]] * n2 + L2.op[y[:, None], y[None, :]]
    L = make_loop(CayleyTable(table))
    ensure(L.flags.is_kloop == (L1.flags.is_kloop and L2.flags.is_kloop), "K-loop flag of a product")
    ensure(L.flags.is_u2d == (L1.flags.is_u2d and L2.flags.is_u2d), "u2d flag of a product")
    return L


def symetron_from_group(G: GroupTable) -> SymetronStructure:
    """
    The symétron s(x, y) = y·x⁻¹·y of a group where squaring is a bijection.

    Examples
    --------
    >>> import kloops as kl
    >>> S = kl.symetron_from_group(kl.cyclic_group(5))
    >>> S.mid(1, 3)
    2
    """
    _square_root(G)
    y = np.arange(G.order)[None, :]
    x_inv = G.inverse[:, None]
    return make_symetron(CayleyTable(G.op[G.op[y, x_inv], y]))


def canonical_form(t: CayleyTable, return_relabeling: bool = False):
    """
    The lexicographically least table among all relabelings of t that keep
    its identity at 0.

    Parameters
    ----------
    t
        A table with a two-sided identity.
    return_relabeling
        If True, also return the relabeling (perm[old] = new) from t.

    Returns
    -------
    CayleyTable
        The canonical form; two loops are isomorphic iff their canonical forms
        are equal.

    Notes
    -----
    Searches all (n-1)! relabelings, so orders above 9 raise `OrderTooLarge`.
    """
    n = t.order
    if n > CANONICAL_FORM_ORDER_BOUND:
        raise OrderTooLarge(f"canonical forms are computed up to order {CANONICAL_FORM_ORDER_BOUND}")
    base, first = canonicalize(t, return_relabeling=True)
    first = np.asarray(first, dtype=np.int64)

    perms = np.array([(0,) + p for p in permutations(range(1, n))], dtype=np.int64)
    inv = np.argsort(perms, axis=1)
    rows = np.arange(len(perms))[:, None, None]
    relabeled = perms[rows, base.entries[inv[:, :, None], inv[:, None, :]]].reshape(len(perms), -1)
    best = int(np.lexsort(relabeled.T[::-1])[0])

    out = CayleyTable(relabeled[best].reshape(n, n))
    if return_relabeling:
        return out, tuple(int(v) for v in perms[best][first])
    return out


def _compose(p: tuple, q: tuple) -> tuple:
    """p∘q"""
    return tuple(p[v] for v in q)


def _inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _assign(rows: list, a: int, row: tuple) -> bool:
    """Sets row a if it is free and fits the columns; False on conflict."""
    if rows[a] is not None:
        return rows[a] == row
    for b, other in enumerate(rows):
        if other is not None and any(u == v for u, v in zip(row, other)):
            return False
    rows[a] = row
    return True


def _propagate(rows: list) -> bool:
    """
    Closes a partial table of left translations under L_{-a} = L_a⁻¹ and
    L_a L_b L_a = L_{a+(b+a)}, the left Bol identity. False on conflict.
    """
    changed = True
    while changed:
        changed = False
        known = [(a, r) for a, r in enumerate(rows) if r is not None]
        for a, ra in known:
            inv = _inverse(ra)
            if rows[inv[0]] is None:
                changed = True
            if not _assign(rows, inv[0], inv):
                return False
        for a, ra in known:
            for b, rb in known:
                lab = _compose(ra, _compose(rb, ra))
                if rows[lab[0]] is None:
                    changed = True
                if not _assign(rows, lab[0], lab):
                    return False
    return True


def _row_candidates(rows: list, a: int):
    n = len(rows)
    taken = [set() for _ in range(n)]
    for r in rows:
        if r is not None:
            for x, v in enumerate(r):
                taken[x].add(v)
    row = [a] + [-1] * (n - 1)
    used = {a}

    def fill(x):
        if x == n:
            yield tuple(row)
            return
        for v in range(n):
            if v not in used and v not in taken[x]:
                row[x] = v
                used.add(v)
                yield from fill(x + 1)
                used.discard(v)
        row[x] = -1

    yield from fill(1)


def _bol_tables(n: int):
    """Yields every left Bol loop table of order n with identity 0."""

    def search(rows):
        free = [a for a, r in enumerate(rows) if r is None]
        if not free:
            yield [list(r) for r in rows]
            return
        a = free[0]
        for row in _row_candidates(rows, a):
            trial = list(rows)
            if _assign(trial, a, row) and _propagate(trial):
                yield from search(trial)

    rows = [None] * n
    rows[0] = tuple(range(n))
    yield from search(rows)


def enumerate_kloops(n: int, cap: int = DEFAULT_CAP) -> List[CayleyTable]:
    """
    One table per isomorphism class of loops of order n satisfying the left
    Bol and automorphic inverse properties.

    Parameters
    ----------
    n
        The order, at most 8.
    cap
        Largest number of labelled Bol tables to examine.

    Returns
    -------
    list of CayleyTable
        Canonical forms, sorted lexicographically.

    Notes
    -----
    Left translations are chosen row by row; each choice is closed under
    L_{-a} = L_a⁻¹ and L_a L_b L_a = L_{a+(b+a)}, which together with the
    column condition is exactly the left Bol identity.

    Examples
    --------
    >>> import kloops as kl
    >>> [len(kl.enumerate_kloops(n)) for n in range(1, 6)]
    [1, 1, 1, 2, 1]
    """
    if n > ENUMERATION_ORDER_BOUND:
        raise OrderTooLarge(f"enumeration is limited to order {ENUMERATION_ORDER_BOUND}")
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")

    representatives: List[LoopStructure] = []
    examined = 0
    for rows in _bol_tables(n):
        examined += 1
        if examined > cap:
            raise CapExceeded(
                f"more than {cap} labelled tables of order {n}",
                partial=sorted((canonical_form(r.table) for r in representatives), key=_table_key),
            )
        L = make_loop(CayleyTable(rows))
        ensure(L.flags.is_bol, "enumerated table must be left Bol")
        if not L.flags.is_aip:
            continue
        if any(find_isomorphism(L, R) is not None for R in representatives):
            continue
        representatives.append(L)

    found = sorted((canonical_form(R.table) for R in representatives), key=_table_key)
    logger.info("order %d: %d labelled Bol tables, %d K-loop classes", n, examined, len(found))
    return found


def _table_key(t: CayleyTable) -> Tuple[int, ...]:
    return tuple(int(v) for v in t.entries.ravel())


def standard_fixtures() -> Dict[str, LoopStructure]:
    """
    The named K-loops used throughout the test suite and the processing
    scripts.
    """
    return {
        "z1": cyclic_kloop(1),
        "z3": cyclic_kloop(3),
        "z5": cyclic_kloop(5),
        "z7": cyclic_kloop(7),
        "z9": cyclic_kloop(9),
        "z15": cyclic_kloop(15),
        "z3xz3": direct_product(cyclic_kloop(3), cyclic_kloop(3)),
        "frobenius21": kloop_from_group(metacyclic_group(7, 3, 2)),
        "heisenberg27": kloop_from_group(heisenberg27()),
    }
