"""Exact checkers: Latin property, line census, packings, orthogonality, symmetry.

Also holds the exhaustive Latin-square enumerator used as an oracle for the
minimum-line results on orders up to 5.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .perm_core import Matrix, is_group, line_location, line_seqs

ENUMERATE_CAP = 5


class VerifyError(ValueError):
    pass


def _is_perm(seq: Sequence[int], n: int) -> bool:
    return len(seq) == n and set(seq) == set(range(1, n + 1))


def is_latin(m: Matrix) -> bool:
    n = len(m)
    return all(_is_perm(row, n) for row in m) and all(_is_perm(col, n) for col in zip(*m))


def distinct_line_count(m: Matrix) -> int:
    return len(set(line_seqs(m)))


def is_strongly_asymmetric(m: Matrix) -> bool:
    return distinct_line_count(m) == 4 * len(m)


@dataclass(frozen=True)
class Location:
    matrix: int
    kind: str
    index: int

    def as_dict(self) -> dict:
        return {"matrix": self.matrix, "kind": self.kind, "index": self.index}


@dataclass(frozen=True)
class Violation:
    """A line at ``at`` that repeats the line first seen at ``duplicate_of``."""
    at: Location
    duplicate_of: Location

    def as_dict(self) -> dict:
        return {**self.at.as_dict(), "duplicate_of": self.duplicate_of.as_dict()}


@dataclass
class PackingReport:
    order: int
    matrix_count: int
    total_lines: int
    distinct_lines: int
    all_latin: bool
    all_strongly_asymmetric: bool
    violations: list[Violation] = field(default_factory=list)

    @property
    def is_packing(self) -> bool:
        return self.all_latin and self.distinct_lines == self.total_lines


def verify_packing(matrices: Iterable[Matrix]) -> PackingReport:
    """Census every line of every matrix; list each colliding pair once.

    A pair is reported at its later position (canonical order: matrix, then
    rows/columns/reverse rows/reverse columns) pointing back at the earlier one.
    """
    mats = list(matrices)
    if not mats:
        raise VerifyError("cannot verify an empty set of matrices")
    n = len(mats[0])
    if any(len(m) != n for m in mats):
        raise VerifyError("matrices of mixed orders cannot form a packing")
    seen: dict[tuple[int, ...], list[Location]] = {}
    violations = []
    all_latin = True
    all_asym = True
    for k, m in enumerate(mats, 1):
        all_latin = all_latin and is_latin(m)
        local = set()
        for pos, seq in enumerate(line_seqs(m)):
            local.add(seq)
            here = Location(k, *line_location(n, pos))
            earlier = seen.get(seq)
            if earlier is None:
                seen[seq] = [here]
                continue
            violations.extend(Violation(here, e) for e in earlier)
            earlier.append(here)
        all_asym = all_asym and len(local) == 4 * n
    return PackingReport(
        order=n,
        matrix_count=len(mats),
        total_lines=4 * n * len(mats),
        distinct_lines=len(seen),
        all_latin=all_latin,
        all_strongly_asymmetric=all_asym,
        violations=violations,
    )


def line_set(matrices: Matrix | Iterable[Matrix]) -> set[tuple[int, ...]]:
    mats = _as_matrix_list(matrices)
    return {s for m in mats for s in line_seqs(m)}


def _as_matrix_list(matrices) -> list[Matrix]:
    mats = list(matrices)
    if mats and isinstance(mats[0][0], int):
        return [tuple(mats)]
    return mats


def lines_form_group(matrices: Matrix | Iterable[Matrix]) -> tuple[bool, int]:
    """Whether the distinct lines are closed under composition and inverse, and how many there are.

    Accepts a single matrix or any iterable of matrices.
    """
    mats = _as_matrix_list(matrices)
    if not all(is_latin(m) for m in mats):
        raise VerifyError("lines of a non-Latin matrix are not all permutations")
    lines = line_set(mats)
    n = len(mats[0])
    return is_group(lines, n), len(lines)


def are_orthogonal(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b):
        raise VerifyError(f"orders differ: {len(a)} and {len(b)}")
    if not (is_latin(a) and is_latin(b)):
        raise VerifyError("orthogonality is defined for Latin squares only")
    n = len(a)
    pairs = {(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)}
    return len(pairs) == n * n


def verify_mols(matrices: Sequence[Matrix]) -> bool:
    return all(are_orthogonal(a, b) for a, b in itertools.combinations(matrices, 2))


def is_affine(seq: Sequence[int], p: int) -> bool:
    """Whether ``x -> seq[x]`` (symbols read mod p) equals ``x -> r x + c`` for some r != 0."""
    vals = [v % p for v in seq]
    x1, x2 = 1, 2
    r = (vals[x2 - 1] - vals[x1 - 1]) % p
    c = (vals[x1 - 1] - r * x1) % p
    return r != 0 and all(vals[x - 1] == (r * x + c) % p for x in range(1, p + 1))


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    centrosymmetric: bool
    hankel_symmetric: bool
    distinct_lines: int

    def coherent(self) -> bool:
        """Any two of the three symmetry flags imply the third."""
        return sum((self.symmetric, self.centrosymmetric, self.hankel_symmetric)) != 2


def classify_symmetry(m: Matrix) -> SymmetryReport:
    """Compare *m* with its transpose, its half-turn, and its anti-transpose."""
    m = tuple(tuple(row) for row in m)
    t = tuple(zip(*m))
    return SymmetryReport(
        symmetric=m == t,
        centrosymmetric=m == tuple(row[::-1] for row in m[::-1]),
        hankel_symmetric=m == tuple(row[::-1] for row in t[::-1]),
        distinct_lines=distinct_line_count(m),
    )


def _check_enum_cap(n: int, cap: int) -> None:
    if n > cap:
        raise VerifyError(f"enumeration of Latin squares is capped at order {cap}, got {n}")


def enumerate_latin_squares(n: int, first_row: Sequence[int] | None = None,
                            cap: int = ENUMERATE_CAP) -> Iterator[Matrix]:
    """Yield every Latin square of order n once, rows chosen in lexicographic order.

    *first_row* pins the first row, which splits the search space for
    parallel sweeps.
    """
    _check_enum_cap(n, cap)
    if n < 1:
        raise VerifyError(f"order must be positive, got {n}")
    perms = list(itertools.permutations(range(1, n + 1)))
    # rows (as indices into perms) that agree with perms[a] in no column
    compatible = [{b for b, q in enumerate(perms) if all(x != y for x, y in zip(p, q))}
                  for p in perms]

    def walk(rows: list[int], cands: list[int]) -> Iterator[Matrix]:
        if len(rows) == n:
            yield tuple(perms[k] for k in rows)
            return
        for k in cands:
            ok = compatible[k]
            yield from walk(rows + [k], [c for c in cands if c in ok])

    if first_row is None:
        yield from walk([], list(range(len(perms))))
    else:
        first = perms.index(tuple(first_row))
        yield from walk([first], sorted(compatible[first]))


@dataclass
class SweepResult:
    """Counts from an exhaustive sweep over all Latin squares of one order."""
    order: int
    squares: int = 0
    min_distinct_lines: int | None = None
    line_histogram: Counter = field(default_factory=Counter)
    counterexamples: list[Matrix] = field(default_factory=list)

    def merge(self, other: SweepResult) -> None:
        self.squares += other.squares
        self.line_histogram.update(other.line_histogram)
        if other.min_distinct_lines is not None:
            self.min_distinct_lines = (other.min_distinct_lines if self.min_distinct_lines is None
                                       else min(self.min_distinct_lines, other.min_distinct_lines))
        self.counterexamples.extend(other.counterexamples)


def theoretical_min_lines(n: int) -> int:
    return 2 * n if n % 2 and n > 1 else n


def classification_holds(m: Matrix, report: SymmetryReport | None = None) -> bool:
    """Check the minimum-line characterisation on one Latin square.

    Odd n > 1: at least 2n lines, and exactly 2n iff symmetric or Hankel
    symmetric.  Even n: at least n lines, and exactly n iff symmetric and
    Hankel symmetric.
    """
    n = len(m)
    rep = report or classify_symmetry(m)
    lo = theoretical_min_lines(n)
    if rep.distinct_lines < lo or not rep.coherent():
        return False
    if n == 1:
        return True
    at_min = rep.distinct_lines == lo
    if n % 2:
        return at_min == (rep.symmetric or rep.hankel_symmetric)
    return at_min == (rep.symmetric and rep.hankel_symmetric)


def _sweep_part(n: int, first_row: Sequence[int] | None, cap: int) -> SweepResult:
    res = SweepResult(n)
    for m in enumerate_latin_squares(n, first_row, cap):
        rep = classify_symmetry(m)
        res.squares += 1
        res.line_histogram[rep.distinct_lines] += 1
        if res.min_distinct_lines is None or rep.distinct_lines < res.min_distinct_lines:
            res.min_distinct_lines = rep.distinct_lines
        if not classification_holds(m, rep):
            res.counterexamples.append(m)
    return res


def sweep(n: int, workers: int = 1, cap: int = ENUMERATE_CAP) -> SweepResult:
    """Classify every Latin square of order n, optionally split by first row across processes."""
    _check_enum_cap(n, cap)
    if workers <= 1:
        return _sweep_part(n, None, cap)
    total = SweepResult(n)
    rows = list(itertools.permutations(range(1, n + 1)))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sweep_part, itertools.repeat(n), rows, itertools.repeat(cap)):
            total.merge(part)
    return total

