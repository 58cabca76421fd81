"""
Passing between uniquely 2-divisible K-loops and symétrons.

A u2d K-loop B carries the symmetry s(x, y) = y+(-x+y). Conversely a
symétron S with a basepoint a is a u2d K-loop for

    x +ₐ y = s(s(y, a), m(x, a))

whose neutral element is a. The reflections s_u carry (S, +ₐ) onto
(S, +_{s(a, u)}), and x ↦ m(x, a) carries the symétron of (S, +ₐ) back onto S.
"""
import logging
from typing import Tuple

import numpy as np

from .errors import PreconditionError, ensure
from .loops import LoopStructure, half, make_loop
from .subloops import find_isomorphism, is_subloop
from .symetron import SymetronStructure, is_convex, make_symetron, reflect
from .tables import CayleyTable, SubsetMask

logger = logging.getLogger(__name__)


def _require_u2d_kloop(L: LoopStructure):
    if not (L.flags.is_kloop and L.flags.is_u2d):
        raise PreconditionError("a uniquely 2-divisible K-loop is required")


def kloop_to_symetron(L: LoopStructure) -> SymetronStructure:
    """
    The symétron s(x, y) = y+(-x+y) of a uniquely 2-divisible K-loop.

    Examples
    --------
    >>> import kloops as kl
    >>> S = kl.kloop_to_symetron(kl.cyclic_kloop(5))
    >>> S.reflect_point(1, 3)  # 2·3 - 1
    0
    """
    _require_u2d_kloop(L)
    n = L.order
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    s = L.op[y, L.op[L.left_inverse[x], y]]
    S = make_symetron(CayleyTable(s))
    ensure(
        np.array_equal(S.midpoint[0, :], L.halving),
        "the midpoint of 0 and a must be half of a",
    )
    return S


def basepoint_table(S: SymetronStructure, a: int) -> CayleyTable:
    """
    The table of x +ₐ y = s(s(y, a), m(x, a)) on the labels of S; its
    identity element is a.
    """
    if not 0 <= a < S.order:
        raise PreconditionError(f"basepoint {a} is outside [0, {S.order})")
    through = S.midpoint[:, a][:, None]
    reflected = S.s[:, a][None, :]
    return CayleyTable(S.s[reflected, through])


def symetron_to_kloop(S: SymetronStructure, a: int = 0) -> LoopStructure:
    """
    The K-loop (S, +ₐ).

    Parameters
    ----------
    S
        A symétron.
    a
        The basepoint, which becomes the neutral element.

    Returns
    -------
    LoopStructure
        A uniquely 2-divisible K-loop (asserted). The basepoint is moved to
        index 0 and the swap is kept in `relabeling`.

    Examples
    --------
    >>> import kloops as kl
    >>> S = kl.kloop_to_symetron(kl.cyclic_kloop(5))
    >>> L = kl.symetron_to_kloop(S, 2)
    >>> L.relabeling[2]
    0
    """
    L = make_loop(basepoint_table(S, a))
    ensure(L.relabeling[a] == 0, f"basepoint {a} must be the neutral element")
    ensure(L.flags.is_kloop and L.flags.is_u2d, "a symétron must give a u2d K-loop")
    return L


def kloop_midpoint(L: LoopStructure, a: int, b: int) -> int:
    """
    The midpoint of a and b computed in the loop: with h = a/2 and
    s(x, y) = y+(-x+y), it is s(s(b, h)/2, h).

    Examples
    --------
    >>> import kloops as kl
    >>> kl.kloop_midpoint(kl.cyclic_kloop(5), 1, 3)
    2
    """
    _require_u2d_kloop(L)

    def s(x, y):
        return L.add(y, L.add(L.neg(x), y))

    h = half(L, a)
    z = s(half(L, s(b, h)), h)
    ensure(s(a, z) == b, f"{z} is not the midpoint of {a} and {b}")
    return z


def check_su_isomorphism(S: SymetronStructure, a: int, u: int) -> bool:
    """True iff x ↦ s(x, u) is an isomorphism (S, +ₐ) → (S, +_{s(a, u)})."""
    f = S.s[:, u]
    source = basepoint_table(S, a).entries
    target = basepoint_table(S, S.reflect_point(a, u)).entries
    return bool(np.array_equal(f[source], target[f[:, None], f[None, :]]))


def check_midpoint_isomorphism(S: SymetronStructure, a: int) -> bool:
    """
    True iff x ↦ m(x, a) is a symétron isomorphism from the symétron of
    (S, +ₐ) onto S.
    """
    L = symetron_to_kloop(S, a)
    perm = np.asarray(L.relabeling, dtype=np.int64)
    back = np.argsort(perm)
    induced = kloop_to_symetron(L).s
    sa = back[induced[perm[:, None], perm[None, :]]]

    f = S.midpoint[:, a]
    return bool(np.array_equal(f[sa], S.s[f[:, None], f[None, :]]))


def roundtrip_check(L: LoopStructure) -> Tuple[bool, bool]:
    """
    Compares L with the K-loop of its symétron at basepoint 0.

    Returns
    -------
    (bool, bool)
        Whether the two tables are equal, and whether they are isomorphic.
        The second is always True (asserted).

    Examples
    --------
    >>> import kloops as kl
    >>> kl.roundtrip_check(kl.cyclic_kloop(5))
    (True, True)
    """
    back = symetron_to_kloop(kloop_to_symetron(L), 0)
    equal = back.table == L.table
    isomorphic = equal or find_isomorphism(L, back) is not None
    ensure(isomorphic, "a K-loop must be isomorphic to the K-loop of its symétron")
    logger.debug("roundtrip of order %d: equal=%s", L.order, equal)
    return equal, isomorphic


def symmetric_quasigroup(S: SymetronStructure) -> CayleyTable:
    """The quasigroup x+y = s(y, x) of a symétron."""
    return CayleyTable(S.s.T)


def subloop_from_convex(L: LoopStructure, X: SubsetMask, x: int) -> SubsetMask:
    """
    s(X, x/2) for a nonempty convex X and x ∈ X: a subloop with as many
    elements as X (asserted).
    """
    S = kloop_to_symetron(L)
    if x not in X:
        raise PreconditionError(f"{x} is not in {X.format()}")
    if not is_convex(S, X):
        raise PreconditionError(f"{X.format()} is not convex")
    moved = reflect(S, X, half(L, x))
    ensure(len(moved) == len(X) and is_subloop(L, moved), "s(X, x/2) must be a subloop")
    return moved


def check_convex_subloop_bridge(L: LoopStructure, X: SubsetMask) -> bool:
    """
    True iff X is a subloop exactly when it contains 0 and is convex, and a
    subloop X is closed under halving.
    """
    S = kloop_to_symetron(L)
    subloop = is_subloop(L, X)
    if subloop != (0 in X and is_convex(S, X)):
        return False
    if subloop:
        members = np.array(X.members, dtype=np.int64)
        return bool(X.to_bool()[L.halving[members]].all())
    return True
