"""
Permutations of a loop's carrier: translations, precession maps, and the
groups they generate (M_g(B), M(B), D(B) and the inner mapping group I(B)).

Conventions
-----------
- `p * q` is the composition p∘q (apply q first).
- Precessions compose right-to-left:
  δ_{a,b}(c) = g_{a+b}^{-1}(g_a(g_b(c))), so that a+(b+c) = (a+b)+δ_{a,b}(c).
- The inner generators r_{a,b}, g_{a,b} and c_a are read with maps acting on
  the right (left-to-right composition), which is the reading under which
  they fix 0:
  r_{a,b}(x) = r_{a+b}^{-1}(r_b(r_a(x))),
  g_{a,b}(x) = g_{b+a}^{-1}(g_b(g_a(x))),
  c_a(x) = g_a^{-1}(r_a(x)).
"""
from dataclasses import dataclass
import logging
from typing import List, Tuple

import numpy as np

from .constants import DEFAULT_CAP
from .errors import CapExceeded, PreconditionError, ensure

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Permutation:
    """
    A bijection of 0..n-1, stored as its image sequence. Permutations compare
    lexicographically by image.

    Examples
    --------
    >>> import kloops as kl
    >>> p = kl.Permutation((1, 2, 0))
    >>> q = kl.Permutation((0, 2, 1))
    >>> (p * q).image   # p after q
    (1, 0, 2)
    >>> p.inverse().image
    (2, 0, 1)
    """

    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a bijection of [0, {len(image)})")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_array(cls, arr) -> "Permutation":
        return cls(tuple(int(v) for v in arr))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("permutations act on carriers of different sizes")
        return Permutation(tuple(self.image[i] for i in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.image):
            inv[y] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.image) if x == y)

    def to_array(self) -> np.ndarray:
        return np.array(self.image, dtype=np.int64)

    def __repr__(self):
        return f"Permutation({self.image})"


class GeneratedGroup:
    def __init__(
        self,
        generators: List[Permutation],
        images: np.ndarray,
        complete: bool,
        cap: int,
    ):
        """
        The closure of a list of generators under composition. Elements are
        kept as rows of `images`, in breadth-first discovery order, the
        identity first.

        Parameters
        ----------
        generators
            The generators, as given to `closure`.
        images
            k×n array, one element per row.
        complete
            False when the closure was cut short by the cap.
        cap
            The element cap used.
        """
        self.generators = list(generators)
        self.images = images
        self.complete = complete
        self.cap = cap
        self._keys = {row.tobytes() for row in images}

    @property
    def degree(self) -> int:
        return self.images.shape[1]

    @property
    def elements(self) -> List[Permutation]:
        return [Permutation.from_array(row) for row in self.images]

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def key_set(self) -> frozenset:
        return frozenset(self._keys)

    def __len__(self):
        return self.images.shape[0]

    def __contains__(self, p: Permutation):
        return np.array(p.image, dtype=np.int64).tobytes() in self._keys

    def fixing(self, point: int) -> np.ndarray:
        """Rows of the elements that fix `point`."""
        return self.images[self.images[:, point] == point]

    def __repr__(self):
        return (
            f"GeneratedGroup(size={len(self)}, degree={self.degree}, "
            f"complete={self.complete})"
        )


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    """Distinct rows in first-occurrence order."""
    seen = set()
    keep = []
    for i, row in enumerate(rows):
        key = row.tobytes()
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return rows[keep]


def _closure_of_rows(gens: np.ndarray, degree: int, cap: int, generators) -> GeneratedGroup:
    identity = np.arange(degree, dtype=np.int64)
    gens = _unique_rows(gens)
    gens = gens[~(gens == identity).all(axis=1)]

    images = [identity]
    keys = {identity.tobytes()}
    frontier = identity[None, :]
    n_gens = gens.shape[0]

    while frontier.shape[0] > 0 and n_gens > 0:
        # products[i, j] = gens[j] ∘ frontier[i]
        products = gens[:, frontier].transpose(1, 0, 2).reshape(-1, degree)
        new_rows = []
        for row in products:
            key = row.tobytes()
            if key in keys:
                continue
            keys.add(key)
            new_rows.append(row)
            images.append(row)
            if len(images) > cap:
                partial = GeneratedGroup(generators, np.array(images[:cap]), False, cap)
                raise CapExceeded(
                    f"group closure exceeded the cap of {cap} elements", partial=partial
                )
        frontier = np.array(new_rows, dtype=np.int64).reshape(-1, degree)
        logger.debug("closure: %d elements, frontier %d", len(images), len(new_rows))

    return GeneratedGroup(generators, np.array(images, dtype=np.int64), True, cap)


def closure(gens: List[Permutation], cap: int = DEFAULT_CAP, degree: int = None) -> GeneratedGroup:
    """
    Breadth-first closure of a list of permutations under composition.

    Parameters
    ----------
    gens
        Generators, all of the same degree. An empty list needs `degree`.
    cap
        Largest number of elements allowed.
    degree
        Degree of the carrier, only needed when `gens` is empty.

    Returns
    -------
    GeneratedGroup
        The generated group, complete.

    Notes
    -----
    Raises `CapExceeded` when the group has more than `cap` elements; the
    exception's `partial` attribute holds the incomplete group.

    Examples
    --------
    >>> import kloops as kl
    >>> len(kl.closure([kl.Permutation((1, 2, 3, 4, 0))]))
    5
    """
    if not gens and degree is None:
        raise ValueError("degree is required when there are no generators")
    if degree is None:
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("all generators must have the same degree")

    rows = np.array([g.image for g in gens], dtype=np.int64).reshape(-1, degree)
    return _closure_of_rows(rows, degree, cap, gens)


def left_translation(L, a: int) -> Permutation:
    """g_a : x ↦ a+x"""
    return Permutation.from_array(L.op[a, :])


def right_translation(L, a: int) -> Permutation:
    """r_a : x ↦ x+a"""
    return Permutation.from_array(L.op[:, a])


def precession_table(L) -> np.ndarray:
    """
    Returns
    -------
    numpy.ndarray
        n×n×n array D with D[a, b, c] = δ_{a,b}(c).
    """
    op = L.op
    n = L.order
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    return L.ldiv[op[a, b], op[a, op[b, c]]]


def precession(L, a: int, b: int) -> Permutation:
    """
    The precession map δ_{a,b} = g_{a+b}^{-1} g_a g_b.

    Parameters
    ----------
    L
        A loop.
    a, b
        Elements of L.

    Returns
    -------
    Permutation
        δ with a+(b+c) = (a+b)+δ(c) for every c, and δ(0) = 0.

    Examples
    --------
    >>> import kloops as kl
    >>> z5 = kl.cyclic_kloop(5)
    >>> kl.precession(z5, 2, 3).is_identity()
    True
    """
    op = L.op
    image = L.ldiv[op[a, b], op[a, op[b, :]]]
    ensure(
        np.array_equal(op[op[a, b], image], op[a, op[b, :]]),
        f"precession {a},{b} does not satisfy its defining identity",
    )
    ensure(image[0] == 0, f"precession {a},{b} moves 0")
    return Permutation.from_array(image)


def mlt_left(L, cap: int = DEFAULT_CAP) -> GeneratedGroup:
    """M_g(B), generated by the left translations."""
    gens = [left_translation(L, a) for a in range(L.order)]
    return closure(gens, cap)


def mlt(L, cap: int = DEFAULT_CAP) -> GeneratedGroup:
    """M(B), generated by the left and right translations."""
    gens = [left_translation(L, a) for a in range(L.order)]
    gens += [right_translation(L, a) for a in range(L.order)]
    return closure(gens, cap)


def precession_group(L, cap: int = DEFAULT_CAP) -> GeneratedGroup:
    """D(B), generated by the precession maps."""
    n = L.order
    rows = precession_table(L).reshape(n * n, n)
    gens = [Permutation.from_array(row) for row in _unique_rows(rows)]
    return closure(gens, cap, degree=n)


def inner_generator_array(L) -> np.ndarray:
    """
    Returns
    -------
    numpy.ndarray
        (2n²+n)×n array: the rows r_{a,b} for all (a, b) in lexicographic
        order, then g_{a,b} likewise, then c_a.
    """
    op, ldiv, rdiv = L.op, L.ldiv, L.rdiv
    n = L.order
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    x = np.arange(n)[None, None, :]

    r = rdiv[op[op[x, a], b], op[a, b]]
    g = ldiv[op[b, a], op[b, op[a, x]]]
    c = ldiv[np.arange(n)[:, None], op[np.arange(n)[None, :], np.arange(n)[:, None]]]

    return np.concatenate([r.reshape(n * n, n), g.reshape(n * n, n), c], axis=0)


def inner_generators(L) -> List[Permutation]:
    """
    The generators r_{a,b}, g_{a,b} (for all a, b) and c_a (for all a) of the
    inner mapping group I(B). Every one of them fixes 0.

    Returns
    -------
    list of Permutation
        2n²+n permutations, duplicates included.
    """
    rows = inner_generator_array(L)
    ensure(bool((rows[:, 0] == 0).all()), "an inner generator moves 0")
    return [Permutation.from_array(row) for row in rows]


def inner_group(L, cap: int = DEFAULT_CAP) -> GeneratedGroup:
    """I(B), the closure of `inner_generators`."""
    rows = inner_generator_array(L)
    gens = [Permutation.from_array(row) for row in _unique_rows(rows)]
    return closure(gens, cap, degree=L.order)


def stabilizer_check(L, cap: int = DEFAULT_CAP) -> bool:
    """
    Computes M(B), keeps the elements that fix 0 and compares them with the
    elements of I(B).

    Returns
    -------
    bool
        True iff the stabilizer of 0 in M(B) equals I(B) elementwise.
    """
    m = mlt(L, cap)
    i = inner_group(L, cap)
    stabilizer = {row.tobytes() for row in m.fixing(0)}
    logger.debug("stabilizer of 0 in M(B): %d, I(B): %d", len(stabilizer), len(i))
    return stabilizer == set(i.key_set())


def is_fixed_point_free(L, cap: int = DEFAULT_CAP) -> bool:
    """
    Returns
    -------
    bool
        True iff every non-identity element of D(B) fixes only 0.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.is_fixed_point_free(kl.cyclic_kloop(5))
    True
    """
    d = precession_group(L, cap)
    fixed = d.images == np.arange(L.order)
    moving = ~fixed.all(axis=1)
    return not bool(fixed[moving][:, 1:].any())


def precession_determinacy_check(L, cap: int = DEFAULT_CAP) -> bool:
    """
    In a fixed-point-free loop δ_{a,b} only depends on the pair (a+b, b+a).

    Returns
    -------
    bool
        True iff (a+b = x+y and b+a = y+x) implies δ_{a,b} = δ_{x,y}.

    Notes
    -----
    Raises `PreconditionError` when L is not fixed-point-free.
    """
    if not is_fixed_point_free(L, cap):
        raise PreconditionError("precession determinacy needs a fixed-point-free loop")

    n = L.order
    d = precession_table(L)
    representative = {}
    for a in range(n):
        for b in range(n):
            key = (int(L.op[a, b]), int(L.op[b, a]))
            if key not in representative:
                representative[key] = (a, b)
                continue
            x, y = representative[key]
            if not np.array_equal(d[a, b], d[x, y]):
                logger.debug("precessions %s and %s differ", (a, b), (x, y))
                return False
    return True
