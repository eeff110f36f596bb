"""Permutations in sequence representation, matrix lines, and small-n group machinery.

A permutation of ``{1..n}`` is a plain tuple ``(f(1), ..., f(n))``; a square
matrix is a tuple of row tuples.  Composition follows function application:
``compose(p, q)[i] == p[q[i]]``.

Everything that walks the whole of S_n is capped (default ``n <= 8``) and
refuses larger orders instead of degrading.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

DEFAULT_CAP = 8

LINE_KINDS = ("row", "column", "reverse-row", "reverse-column")


class PermError(ValueError):
    """Raised on malformed permutations, matrices, or group inputs."""


class CapExceeded(PermError):
    """Raised when an exhaustive enumeration would exceed the configured cap."""


def check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(
            f"order {n} exceeds the enumeration cap {cap}; raise the cap to opt in")


def perm(seq: Iterable[int]) -> Perm:
    """Validate *seq* as a permutation of 1..n and return it as a tuple."""
    p = tuple(int(x) for x in seq)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise PermError(f"{p!r} is not a permutation of 1..{len(p)}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def reversal(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def cyclic_shift(n: int) -> Perm:
    """The shift (2, 3, ..., n, 1)."""
    return tuple(range(2, n + 1)) + (1,)


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    if len(p) != len(q):
        raise PermError(f"cannot compose permutations of sizes {len(p)} and {len(q)}")
    return tuple(p[x - 1] for x in q)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p, 1):
        out[x - 1] = i
    return tuple(out)


def square_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    """Validate an n x n matrix with entries in 1..n."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(m)
    if n == 0:
        raise PermError("matrix must have positive order")
    for i, row in enumerate(m, 1):
        if len(row) != n:
            raise PermError(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 1 <= x <= n:
                raise PermError(f"entry {x} in row {i} lies outside 1..{n}")
    return m


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


@dataclass(frozen=True)
class Line:
    seq: tuple[int, ...]
    kind: str
    index: int


def line_seqs(m: Matrix) -> Iterator[tuple[int, ...]]:
    """Yield the 4n line sequences in canonical order.

    Rows, then columns, then reverse rows, then reverse columns, each indexed
    1..n.
    """
    cols = transpose(m)
    yield from m
    yield from cols
    for row in m:
        yield row[::-1]
    for col in cols:
        yield col[::-1]


def line_location(n: int, position: int) -> tuple[str, int]:
    """Map a 0-based position in ``line_seqs`` order to ``(kind, index)``."""
    return LINE_KINDS[position // n], position % n + 1


def lines(m: Matrix) -> list[Line]:
    n = len(m)
    return [Line(seq, *line_location(n, pos)) for pos, seq in enumerate(line_seqs(m))]


def apply_entrywise(r: Sequence[int], m: Matrix) -> Matrix:
    """Relabel every entry of *m* by *r*: ``result[i][j] = r(m[i][j])``."""
    if len(r) != len(m):
        raise PermError(f"permutation of size {len(r)} cannot relabel a matrix of order {len(m)}")
    return tuple(tuple(r[x - 1] for x in row) for row in m)


class PermGroup:
    """A finite permutation group held as an explicit element set."""

    def __init__(self, elements: Iterable[Sequence[int]], n: int):
        self.n = n
        self.elements = frozenset(tuple(e) for e in elements)
        for e in self.elements:
            if len(e) != n:
                raise PermError(f"element {e!r} does not act on 1..{n}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Perm]:
        return iter(sorted(self.elements))

    def __contains__(self, p: object) -> bool:
        return p in self.elements

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))

    def __repr__(self) -> str:
        return f"PermGroup(order={len(self)}, n={self.n})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_closed(self) -> bool:
        return is_group(self.elements, self.n)


def is_group(elements: Iterable[Sequence[int]], n: int) -> bool:
    """True iff *elements* contain the identity and are closed under composition and inverse."""
    elems = {tuple(e) for e in elements}
    if identity(n) not in elems:
        return False
    if any(inverse(a) not in elems for a in elems):
        return False
    return all(compose(a, b) in elems for a in elems for b in elems)


def generate_group(generators: Iterable[Sequence[int]], n: int) -> PermGroup:
    gens = [perm(g) for g in generators]
    for g in gens:
        if len(g) != n:
            raise PermError(f"generator {g!r} does not act on 1..{n}")
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(g, a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return PermGroup(seen, n)


def _require_subgroup(h: PermGroup, n: int, name: str = "H") -> None:
    if h.n != n:
        raise PermError(f"{name} acts on 1..{h.n}, expected 1..{n}")
    if not h.is_closed():
        raise PermError(f"{name} is not closed under composition and inverse")


def left_coset_reps(h: PermGroup, n: int, cap: int | None = None) -> list[Perm]:
    """Lexicographically smallest member of each left coset ``gH`` in S_n, in order."""
    check_cap(n, cap)
    _require_subgroup(h, n)
    hs = list(h.elements)
    seen: set[Perm] = set()
    reps = []
    # permutations() walks S_n in lexicographic order, so the first unseen
    # member of a coset is its smallest
    for g in itertools.permutations(range(1, n + 1)):
        if g in seen:
            continue
        reps.append(g)
        seen.update(compose(g, x) for x in hs)
    return reps


def double_coset(c: PermGroup, g: Sequence[int], r: PermGroup) -> frozenset[Perm]:
    left = [compose(x, g) for x in c.elements]
    return frozenset(compose(a, y) for a in left for y in r.elements)


def double_cosets(c: PermGroup, r: PermGroup, n: int,
                  cap: int | None = None) -> list[frozenset[Perm]]:
    """Partition S_n into double cosets ``CgR``, sorted by smallest member.

    When the orders of C and R are coprime, every double coset is checked to
    have exactly ``|C| * |R|`` members.
    """
    check_cap(n, cap)
    _require_subgroup(c, n, "C")
    _require_subgroup(r, n, "R")
    coprime = math.gcd(c.order, r.order) == 1
    seen: set[Perm] = set()
    out = []
    for g in itertools.permutations(range(1, n + 1)):
        if g in seen:
            continue
        dc = double_coset(c, g, r)
        if coprime and len(dc) != c.order * r.order:
            raise AssertionError(
                f"double coset of {g!r} has {len(dc)} members, expected {c.order * r.order}")
        seen.update(dc)
        out.append(dc)
    return out


def symmetric_group(n: int, cap: int | None = None) -> PermGroup:
    check_cap(n, cap)
    return PermGroup(itertools.permutations(range(1, n + 1)), n)
