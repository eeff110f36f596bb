"""Builders for packed Latin squares and related matrices.

Modular constructions compute with residues internally and print symbols
1..k, residue 0 becoming symbol k.  Every builder is deterministic unless a
``random.Random`` is passed in for the alternative pairings.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import ring as rings
from .perm_core import (
    Matrix,
    PermError,
    PermGroup,
    apply_entrywise,
    cyclic_shift,
    double_cosets,
    generate_group,
    is_group,
    left_coset_reps,
    line_seqs,
    reversal,
)

PACK_ODD_CAP = 9
PACK_EVEN_CAP = 8
MOLS_CAP = 17

BoolMatrix = tuple[tuple[int, ...], ...]


class ConstructionError(ValueError):
    """A construction was asked for parameters outside its preconditions."""


@dataclass
class PackingSet:
    matrices: list[Matrix]
    order: int

    def __post_init__(self):
        for m in self.matrices:
            if len(m) != self.order:
                raise ConstructionError(f"matrix of order {len(m)} in a set of order {self.order}")

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    @property
    def claimed_group_order(self) -> int:
        return 4 * self.order * len(self.matrices)


@dataclass
class CoupleList:
    p: int
    couples: list[tuple[int, int]] = field(default_factory=list)


def _sym(x: int, k: int) -> int:
    """Residue -> symbol in 1..k (residue 0 prints as k)."""
    return (x - 1) % k + 1


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ConstructionError(f"{what}: order {n} exceeds the cap {cap}; raise the cap to opt in")


# -- odd orders -------------------------------------------------------------

def addition_square(p: Sequence[int], q: Sequence[int]) -> Matrix:
    """``M(i, j) = p(i) + q(j)`` modulo n, in symbols 1..n."""
    n = len(p)
    return tuple(tuple(_sym(a + b, n) for b in q) for a in p)


def pack_odd(n: int, cap: int = PACK_ODD_CAP, rng: random.Random | None = None) -> PackingSet:
    """Pack all of S_n (n odd, n >= 5) into (n-1)!/4 addition squares.

    The double cosets of the cyclic-shift group and the reversal group are
    paired consecutively by smallest member, and each pair's smallest members
    become the column and row permutations of one square.  Passing *rng*
    shuffles the pairing and picks random representatives instead.
    """
    if n % 2 == 0:
        raise ConstructionError(
            f"pack_odd needs odd n, got {n}: the addition-square construction does not "
            "work for even n (the half-turn shift is conjugate to the reversal)")
    if n < 5:
        raise ConstructionError(
            f"pack_odd needs n >= 5, got {n}: S_{n} is a single double coset that cannot be paired")
    _check_cap(n, cap, "pack_odd")
    c = generate_group([cyclic_shift(n)], n)
    r = generate_group([reversal(n)], n)
    cosets = double_cosets(c, r, n, cap=cap)
    if rng is None:
        reps = [min(dc) for dc in cosets]
    else:
        cosets = list(cosets)
        rng.shuffle(cosets)
        reps = [rng.choice(sorted(dc)) for dc in cosets]
    return PackingSet([addition_square(reps[k], reps[k + 1]) for k in range(0, len(reps), 2)], n)


# -- even orders ------------------------------------------------------------

def double_occurrence_base(m: int) -> Matrix:
    if m <= 2:
        raise ConstructionError(f"double occurrence base needs m > 2, got {m}")
    return tuple(tuple(_sym(i + j, m) for j in range(1, m + 1)) for i in range(1, m + 1))


def line_group(matrices: Sequence[Matrix], n: int) -> PermGroup:
    """The distinct lines of *matrices*, as a PermGroup (closure is checked)."""
    elems = {s for m in matrices for s in line_seqs(m)}
    if not is_group(elems, n):
        raise ConstructionError("the lines do not form a permutation group")
    return PermGroup(elems, n)


def double_occurrence_set(m: int, cap: int = PACK_EVEN_CAP) -> list[Matrix]:
    """(m-1)!/2 relabelled copies of the base square, covering all of S_m."""
    base = double_occurrence_base(m)
    _check_cap(m, cap, "double_occurrence_set")
    g = line_group([base], m)
    return [apply_entrywise(r, base) for r in left_coset_reps(g, m, cap=cap)]


def _bool_vectors(m: int) -> list[tuple[int, ...]]:
    return [(0,) + rest for rest in itertools.product((0, 1), repeat=m - 1)]


def boolean_matrices(m: int, rng: random.Random | None = None) -> list[BoolMatrix]:
    """The 2^(m-2) matrices ``A(i, j) = v(i) + w(j) mod 2``.

    Vectors with leading 0 are sorted and the k-th is paired with the
    (k + 2^(m-2))-th.  With *rng*, the pairing and orientation are random.
    """
    if m < 3:
        raise ConstructionError(f"boolean_matrices needs m >= 3, got {m}")
    vecs = _bool_vectors(m)
    half = len(vecs) // 2
    if rng is None:
        pairs = list(zip(vecs[:half], vecs[half:]))
    else:
        vecs = list(vecs)
        rng.shuffle(vecs)
        pairs = [(a, b) if rng.random() < 0.5 else (b, a) for a, b in zip(vecs[::2], vecs[1::2])]
    return [tuple(tuple((a + b) % 2 for b in w) for a in v) for v, w in pairs]


def composite(lsq: Matrix, a: BoolMatrix) -> Matrix:
    """Blow up each entry k of *lsq* into the 2x2 block chosen by ``a``.

    Bit 0 gives ``[[2k-1, 2k], [2k, 2k-1]]``, bit 1 its column swap.
    """
    m = len(lsq)
    if len(a) != m or any(len(row) != m for row in a) or any(len(row) != m for row in lsq):
        raise ConstructionError(f"composite needs L and A of the same order, got {m} and {len(a)}")
    out = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        for j in range(m):
            k = lsq[i][j]
            lo, hi = 2 * k - 1, 2 * k
            if a[i][j]:
                lo, hi = hi, lo
            out[2 * i][2 * j], out[2 * i][2 * j + 1] = lo, hi
            out[2 * i + 1][2 * j], out[2 * i + 1][2 * j + 1] = hi, lo
    return tuple(tuple(row) for row in out)


def decompose_composite(mat: Matrix) -> tuple[Matrix, BoolMatrix]:
    size = len(mat)
    if size % 2:
        raise ConstructionError("not a composite matrix: odd order")
    m = size // 2
    lsq = [[0] * m for _ in range(m)]
    a = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            x, y = mat[2 * i][2 * j], mat[2 * i][2 * j + 1]
            k = max(x, y) // 2
            bit = int(x > y)
            lo, hi = (2 * k, 2 * k - 1) if bit else (2 * k - 1, 2 * k)
            block = (mat[2 * i][2 * j], mat[2 * i][2 * j + 1],
                     mat[2 * i + 1][2 * j], mat[2 * i + 1][2 * j + 1])
            if k < 1 or block != (lo, hi, hi, lo):
                raise ConstructionError(
                    f"not a composite matrix: block at ({2 * i + 1}, {2 * j + 1}) is {block}")
            lsq[i][j], a[i][j] = k, bit
    return tuple(map(tuple, lsq)), tuple(map(tuple, a))


def pack_even_subgroup(n: int, cap: int = PACK_EVEN_CAP,
                       rng: random.Random | None = None) -> PackingSet:
    """Pack the pair-preserving permutations of 1..n (n = 2m > 4) into composites."""
    if n % 2 or n <= 4:
        raise ConstructionError(f"pack_even_subgroup needs even n > 4, got {n}")
    _check_cap(n, cap, "pack_even_subgroup")
    m = n // 2
    bools = boolean_matrices(m, rng)
    return PackingSet([composite(lsq, a) for lsq in double_occurrence_set(m, cap) for a in bools], n)


def extend_packing(s: PackingSet, n: int, cap: int = PACK_EVEN_CAP) -> PackingSet:
    """Relabel a packing of a subgroup G by left-coset representatives to pack S_n."""
    _check_cap(n, cap, "extend_packing")
    g = line_group(s.matrices, n)
    reps = left_coset_reps(g, n, cap=cap)
    return PackingSet([apply_entrywise(r, mat) for r in reps for mat in s.matrices], n)


def pack_even(n: int, cap: int = PACK_EVEN_CAP, rng: random.Random | None = None) -> PackingSet:
    if n % 2 or n < 6:
        raise ConstructionError(f"pack_even needs even n >= 6, got {n}")
    return extend_packing(pack_even_subgroup(n, cap, rng), n, cap)


# -- one square packing a group of order 4n ----------------------------------

def pack_single(n: int) -> Matrix:
    """A strongly asymmetric Latin square whose 4n lines form a group.

    ``M(i, j) = z_i + d z_j`` over a ring with a quartet, d the quartet's
    canonical non-trivial element and z a reflectable enumeration.  Each ring
    element is printed as its 1-based position in z, so positions and symbols
    share one labelling.
    """
    if n < 5:
        raise ConstructionError(f"pack_single needs n >= 5, got {n}")
    try:
        ring, quartet = rings.construct_quartet(n)
    except rings.NoQuartet as exc:
        raise ConstructionError(str(exc)) from exc
    z = rings.reflectable_enumeration(ring).z
    label = {x: k for k, x in enumerate(z, 1)}
    c, d = ring.one, quartet.c
    return tuple(
        tuple(label[ring.add(ring.mul(c, zi), ring.mul(d, zj))] for zj in z) for zi in z)


# -- packed MOLS -------------------------------------------------------------

def _det_ok(a: tuple[int, int], b: tuple[int, int], p: int) -> bool:
    return (a[0] * b[1] - b[0] * a[1]) % p != 0


def couple_selection(p: int) -> CoupleList:
    """Split 1..(p-1)/2 into ordered couples with pairwise non-zero determinants mod p.

    Backtracking: the smallest unused value is paired with the smallest
    admissible partner, trying orientation (small, large) before (large, small).
    """
    if not rings.is_prime(p) or p % 4 != 1:
        raise ConstructionError(f"couple_selection needs a prime p = 1 mod 4, got {p}")
    values = list(range(1, (p - 1) // 2 + 1))

    def extend(chosen: list[tuple[int, int]], unused: list[int]) -> list[tuple[int, int]] | None:
        if not unused:
            return chosen
        a, rest = unused[0], unused[1:]
        for k, b in enumerate(rest):
            remaining = rest[:k] + rest[k + 1:]
            for cand in ((a, b), (b, a)):
                if all(_det_ok(cand, other, p) for other in chosen):
                    found = extend(chosen + [cand], remaining)
                    if found is not None:
                        return found
        return None

    couples = extend([], values)
    if couples is None:
        raise ConstructionError(f"no admissible couple system found for p = {p}")
    return CoupleList(p, couples)


def linear_square(r: int, s: int, p: int) -> Matrix:
    """``M(i, j) = r i + s j`` over GF(p) on symbols 1..p."""
    return tuple(tuple(_sym(r * i + s * j, p) for j in range(1, p + 1)) for i in range(1, p + 1))


def mols_packed(p: int, cap: int = MOLS_CAP) -> PackingSet:
    _check_cap(p, cap, "mols_packed")
    couples = couple_selection(p).couples
    return PackingSet([linear_square(r, s, p) for r, s in couples], p)


# -- few lines ---------------------------------------------------------------

def _reverse_cols(m: Matrix) -> Matrix:
    return tuple(row[::-1] for row in m)


def min_lines_square(n: int) -> Matrix:
    """A Latin square with the fewest possible distinct lines: 2n for odd n, n for even n."""
    if n < 2:
        raise ConstructionError(f"min_lines_square needs n >= 2, got {n}")
    if n % 2:
        return tuple(tuple(_sym(i + j - 1, n) for j in range(1, n + 1)) for i in range(1, n + 1))
    m = n // 2
    if m == 1:
        a: Matrix = ((1,),)
    elif m == 2:
        a = ((1, 2), (2, 1))
    else:
        a = double_occurrence_base(m)
    b = tuple(tuple(x + m for x in row) for row in a)
    bj = _reverse_cols(b)
    jb = b[::-1]
    jaj = _reverse_cols(a[::-1])
    top = [ra + rb for ra, rb in zip(a, bj)]
    bottom = [ra + rb for ra, rb in zip(jb, jaj)]
    return tuple(top + bottom)


# -- an order-4n subgroup for even n ----------------------------------------

def subgroup_4n(n: int) -> PermGroup:
    if n % 2 or n < 6:
        raise ConstructionError(f"subgroup_4n needs even n >= 6, got {n}")
    m = n // 2
    if m == 3:
        return PermGroup((p + (5, 6) for p in itertools.permutations(range(1, 5))), n)
    elems = []
    rest = tuple(range(m + 5, n + 1))
    for shift in range(m):
        for k in (1, -1):
            head = tuple(_sym(shift + k * j, m) for j in range(1, m + 1))
            for a, b in itertools.product(((m + 1, m + 2), (m + 2, m + 1)),
                                          ((m + 3, m + 4), (m + 4, m + 3))):
                elems.append(head + a + b + rest)
    return PermGroup(elems, n)


def partition_preserving(p: Sequence[int]) -> bool:
    """Whether *p* maps every pair {2k-1, 2k} onto some pair {2l-1, 2l}."""
    return all((p[i] + 1) // 2 == (p[i + 1] + 1) // 2 for i in range(0, len(p), 2))


def expected_subgroup_order(n: int) -> int:
    m = n // 2
    return math.factorial(m) * 2 ** m
