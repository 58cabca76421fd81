"""
Cayley tables and subsets of a finite carrier.

A table of order n stores the entry `x∘y` at row x, column y. Elements are the
indices 0..n-1; when an identity exists it is canonically index 0.

Table file format::

    # optional comments, '#' to end of line
    3
    0 1 2
    1 2 0
    2 0 1

Subset literal format: comma-separated indices, e.g. "0,5,10".
"""
from pathlib import Path
import re
from typing import Callable, Iterable, Iterator, List, Tuple

import numpy as np

from .errors import CapExceeded, MalformedInput, NoIdentity

# ASCII digits only; str.isdigit() also matches "²"
_INDEX = re.compile(r"[0-9]+")


def _index(token: str, what: str, line: int = None) -> int:
    if not _INDEX.fullmatch(token):
        raise MalformedInput(f"{what} {token!r}", line)
    return int(token)


class CayleyTable:
    def __init__(self, entries):
        """
        An immutable n×n operation table on the elements 0..n-1. No axiom is
        checked beyond the range of the entries.

        Parameters
        ----------
        entries
            Anything `numpy.asarray` turns into an n×n integer matrix. Entry
            [x, y] is x∘y (row is the left operand).

        Examples
        --------
        >>> import kloops as kl
        >>> t = kl.CayleyTable([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
        >>> t.order
        3
        >>> t[1, 2]
        0
        """
        arr = np.array(entries, dtype=np.int64)

        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise MalformedInput(f"expected a non-empty square table, got {arr.shape}")
        if arr.min() < 0 or arr.max() >= arr.shape[0]:
            raise MalformedInput(f"entries must lie in [0, {arr.shape[0]})")

        arr.setflags(write=False)
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def order(self) -> int:
        return self._entries.shape[0]

    def __getitem__(self, key):
        value = self._entries[key]
        if isinstance(value, np.integer):
            return int(value)
        return value

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return self.order == other.order and np.array_equal(
            self._entries, other._entries
        )

    def __hash__(self):
        return hash((self.order, self._entries.tobytes()))

    def __repr__(self):
        return f"CayleyTable(order={self.order})"

    def rows(self) -> List[Tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self._entries]


class SubsetMask:
    def __init__(self, order: int, bits: int = 0):
        """
        A subset of the carrier 0..order-1 stored as an integer bit mask
        (bit i set iff i is a member).

        Parameters
        ----------
        order
            Size of the carrier.
        bits
            The bit mask. Bits at positions >= order are rejected.

        Examples
        --------
        >>> import kloops as kl
        >>> c = kl.SubsetMask.parse("0,3,6", order=9)
        >>> c.members
        (0, 3, 6)
        >>> 3 in c
        True
        >>> c.format()
        '0,3,6'
        """
        if order < 1:
            raise MalformedInput(f"order must be positive, got {order}")
        if bits < 0 or bits >> order:
            raise MalformedInput(f"subset has members outside [0, {order})")
        self.order = order
        self.bits = bits

    @classmethod
    def from_indices(cls, order: int, indices: Iterable[int]) -> "SubsetMask":
        bits = 0
        for i in indices:
            i = int(i)
            if not 0 <= i < order:
                raise MalformedInput(f"index {i} outside [0, {order})")
            bits |= 1 << i
        return cls(order, bits)

    @classmethod
    def from_bool(cls, flags) -> "SubsetMask":
        flags = np.asarray(flags, dtype=bool)
        return cls.from_indices(len(flags), np.flatnonzero(flags))

    @classmethod
    def full(cls, order: int) -> "SubsetMask":
        return cls(order, (1 << order) - 1)

    @classmethod
    def empty(cls, order: int) -> "SubsetMask":
        return cls(order, 0)

    @classmethod
    def parse(cls, text: str, order: int) -> "SubsetMask":
        """
        Parses a subset literal such as "0,5,10". The empty string is the
        empty subset.
        """
        text = text.strip()
        if text == "":
            return cls.empty(order)
        indices = []
        for token in text.split(","):
            token = token.strip()
            indices.append(_index(token, "invalid subset literal token"))
        return cls.from_indices(order, indices)

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.order) if self.bits >> i & 1)

    def to_bool(self) -> np.ndarray:
        flags = np.zeros(self.order, dtype=bool)
        flags[list(self.members)] = True
        return flags

    def format(self) -> str:
        return ",".join(str(i) for i in self.members)

    def issubset(self, other: "SubsetMask") -> bool:
        return self.bits & ~other.bits == 0

    def is_empty(self) -> bool:
        return self.bits == 0

    def _check_compatible(self, other):
        if not isinstance(other, SubsetMask) or other.order != self.order:
            raise ValueError("subsets must share the same carrier")

    def __or__(self, other):
        self._check_compatible(other)
        return SubsetMask(self.order, self.bits | other.bits)

    def __and__(self, other):
        self._check_compatible(other)
        return SubsetMask(self.order, self.bits & other.bits)

    def __sub__(self, other):
        self._check_compatible(other)
        return SubsetMask(self.order, self.bits & ~other.bits)

    def complement(self) -> "SubsetMask":
        return SubsetMask(self.order, ((1 << self.order) - 1) & ~self.bits)

    def __contains__(self, i):
        return 0 <= i < self.order and bool(self.bits >> i & 1)

    def __len__(self):
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, SubsetMask):
            return NotImplemented
        return self.order == other.order and self.bits == other.bits

    def __hash__(self):
        return hash((self.order, self.bits))

    def __repr__(self):
        return f'SubsetMask(order={self.order}, members="{self.format()}")'


def enumerate_closed_sets(
    order: int, close: Callable[[SubsetMask], SubsetMask], cap: int
) -> List[SubsetMask]:
    """
    Lists every closed set of a closure operator on 0..order-1 in lectic
    order, starting from the closure of the empty set (next-closure
    enumeration).

    Parameters
    ----------
    order
        Size of the carrier.
    close
        An extensive, monotone and idempotent map on subsets.
    cap
        Largest number of closed sets allowed.

    Returns
    -------
    list of SubsetMask
        The closed sets, each exactly once.

    Notes
    -----
    Raises `CapExceeded` (with the sets found so far as `partial`) when there
    are more than `cap`.
    """
    current = close(SubsetMask.empty(order))
    found = [current]
    full = (1 << order) - 1

    while current.bits != full:
        for i in range(order - 1, -1, -1):
            if current.bits >> i & 1:
                continue
            below = (1 << i) - 1
            candidate = close(SubsetMask(order, (current.bits & below) | (1 << i)))
            if (candidate.bits & below) == (current.bits & below):
                current = candidate
                break
        found.append(current)
        if len(found) > cap:
            raise CapExceeded(f"more than {cap} closed sets", partial=found[:cap])

    return found


def _tokenize(text: str) -> Iterator[Tuple[str, int]]:
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", maxsplit=1)[0]
        for token in line.split():
            yield token, line_no


def _read_one(tokens: list, pos: int, last_line: int) -> Tuple[CayleyTable, int]:
    token, line_no = tokens[pos]
    n = _index(token, "expected a positive order, got", line_no)
    if n < 1:
        raise MalformedInput(f"expected a positive order, got {token!r}", line_no)
    pos += 1

    if len(tokens) - pos < n * n:
        raise MalformedInput(
            f"expected {n * n} entries for order {n}, got {len(tokens) - pos}",
            last_line,
        )

    entries = np.empty((n, n), dtype=np.int64)
    for k in range(n * n):
        token, line_no = tokens[pos + k]
        value = _index(token, "non-numeric entry", line_no)
        if value >= n:
            raise MalformedInput(f"entry {value} out of range for order {n}", line_no)
        entries[k // n, k % n] = value

    return CayleyTable(entries), pos + n * n


def parse_table(text: str) -> CayleyTable:
    """
    Parses a single table from the external text format. The table is returned
    exactly as written; no axiom is checked.

    Parameters
    ----------
    text
        The table text: optional comment lines, the order n, then n rows of n
        whitespace-separated decimal indices.

    Returns
    -------
    CayleyTable
        The parsed table.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.parse_table("3\\n0 1 2\\n1 2 0\\n2 0 1").order
    3
    >>> kl.parse_table("2\\n0 1\\n1 2")
    Traceback (most recent call last):
    kloops.errors.MalformedInput: line 3: entry 2 out of range for order 2
    """
    tokens = list(_tokenize(text))
    if not tokens:
        raise MalformedInput("empty input", 1)

    last_line = max(1, len(text.splitlines()))
    table, pos = _read_one(tokens, 0, last_line)

    if pos != len(tokens):
        token, line_no = tokens[pos]
        raise MalformedInput(f"unexpected trailing token {token!r}", line_no)

    return table


def parse_tables(text: str) -> List[CayleyTable]:
    """
    Parses every table of a stream of concatenated tables, such as the output
    of `kloops enumerate`.
    """
    tokens = list(_tokenize(text))
    last_line = max(1, len(text.splitlines()))
    tables = []
    pos = 0
    while pos < len(tokens):
        table, pos = _read_one(tokens, pos, last_line)
        tables.append(table)
    return tables


def serialize_table(t: CayleyTable) -> str:
    """
    Returns
    -------
    str
        The order on the first line, then one line per row. No comments and no
        trailing newline, so that `parse_table(serialize_table(t)) == t`.

    Examples
    --------
    >>> import kloops as kl
    >>> kl.serialize_table(kl.CayleyTable([[0]]))
    '1\\n0'
    """
    lines = [str(t.order)]
    lines.extend(" ".join(str(int(v)) for v in row) for row in t.entries)
    return "\n".join(lines)


def read_table(path) -> CayleyTable:
    try:
        with open(Path(path).expanduser(), "r", encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise MalformedInput(f"{path} is not UTF-8 text: {e.reason}") from e
    return parse_table(text)


def write_table(t: CayleyTable, path):
    with open(Path(path).expanduser(), "w", encoding="utf-8") as f:
        f.write(serialize_table(t))
        f.write("\n")


def find_identity(t: CayleyTable):
    """
    Returns the least two-sided identity of t, or None when there is none.
    """
    idx = np.arange(t.order)
    left = (t.entries == idx[None, :]).all(axis=1)
    right = (t.entries == idx[:, None]).all(axis=0)
    candidates = np.flatnonzero(left & right)
    if len(candidates) == 0:
        return None
    return int(candidates[0])


def relabel(t: CayleyTable, perm) -> CayleyTable:
    """
    Applies a relabeling of the carrier.

    Parameters
    ----------
    t
        The table to relabel.
    perm
        Sequence with perm[old] = new; must be a bijection of 0..n-1.

    Returns
    -------
    CayleyTable
        The table u with u[perm[x], perm[y]] = perm[t[x, y]].
    """
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(t.order)):
        raise ValueError(f"relabeling is not a bijection of [0, {t.order})")
    inv = np.argsort(perm)
    return CayleyTable(perm[t.entries[np.ix_(inv, inv)]])


def canonicalize(t: CayleyTable, return_relabeling: bool = False):
    """
    Moves the identity of t to index 0 by swapping it with the current index 0.

    Parameters
    ----------
    t
        A table with a two-sided identity.
    return_relabeling
        If True, also return the relabeling that was applied (perm[old] = new).

    Returns
    -------
    CayleyTable
        An isomorphic table whose identity is 0. A table whose identity is
        already 0 is returned unchanged.

    Examples
    --------
    >>> import kloops as kl
    >>> t = kl.parse_table("3\\n1 2 0\\n2 0 1\\n0 1 2")  # identity is 2
    >>> kl.find_identity(kl.canonicalize(t))
    0
    """
    e = find_identity(t)
    if e is None:
        raise NoIdentity("table has no two-sided identity element")

    perm = np.arange(t.order)
    perm[[0, e]] = perm[[e, 0]]
    out = t if e == 0 else relabel(t, perm)

    if return_relabeling:
        return out, tuple(int(v) for v in perm)
    return out
