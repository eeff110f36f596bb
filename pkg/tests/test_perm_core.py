import itertools
import math

import pytest

from latinpack.perm_core import (
    CapExceeded,
    PermError,
    PermGroup,
    apply_entrywise,
    compose,
    cyclic_shift,
    double_cosets,
    generate_group,
    identity,
    inverse,
    is_group,
    left_coset_reps,
    line_seqs,
    lines,
    perm,
    reversal,
    square_matrix,
    symmetric_group,
)

CYCLIC3 = ((2, 3, 1), (3, 1, 2), (1, 2, 3))


def test_compose_examples():
    assert compose((2, 3, 1), (2, 3, 1)) == (3, 1, 2)
    p = (3, 1, 4, 2)
    assert compose(p, identity(4)) == p
    # pointwise: p(q(1)) = p(1) = 2, p(q(2)) = p(3) = 3, p(q(3)) = p(2) = 1
    assert compose((2, 1, 3), (1, 3, 2)) == (2, 3, 1)


def test_compose_size_mismatch():
    with pytest.raises(PermError):
        compose((1, 2), (1, 2, 3))


@pytest.mark.parametrize("p, inv", [((2, 3, 1), (3, 1, 2)), ((1, 2, 3), (1, 2, 3)),
                                    ((4, 3, 2, 1), (4, 3, 2, 1))])
def test_inverse(p, inv):
    assert inverse(p) == inv
    assert compose(p, inverse(p)) == identity(len(p))


def test_perm_validation():
    assert perm([3, 1, 2]) == (3, 1, 2)
    with pytest.raises(PermError):
        perm([1, 1, 2])


def test_square_matrix_validation():
    with pytest.raises(PermError):
        square_matrix([[1, 2], [2]])
    with pytest.raises(PermError):
        square_matrix([[1, 3], [2, 1]])


def test_lines_order_two():
    ls = lines(((1, 2), (2, 1)))
    assert len(ls) == 8
    assert {ln.seq for ln in ls} == {(1, 2), (2, 1)}


def test_lines_canonical_order():
    m = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    ls = lines(m)
    assert [ln.kind for ln in ls] == ["row"] * 3 + ["column"] * 3 + ["reverse-row"] * 3 + ["reverse-column"] * 3
    assert [ln.index for ln in ls[:3]] == [1, 2, 3]
    assert ls[4].seq == (2, 3, 1)
    assert ls[7].seq == (1, 3, 2)
    assert ls[10].seq == (1, 3, 2)
    assert ls[11].seq == (2, 1, 3)


def test_lines_cyclic3_each_twice():
    seqs = [ln.seq for ln in lines(CYCLIC3)]
    assert len(seqs) == 12
    counts = {s: seqs.count(s) for s in seqs}
    assert len(counts) == 6
    assert set(counts.values()) == {2}


def test_generate_group():
    assert generate_group([], 3).elements == {(1, 2, 3)}
    assert generate_group([(2, 3, 1)], 3).elements == {(1, 2, 3), (2, 3, 1), (3, 1, 2)}
    g = generate_group([(2, 1, 3), (1, 3, 2)], 3)
    assert g.elements == set(itertools.permutations(range(1, 4)))


def test_generate_group_closed_n5():
    g = generate_group([cyclic_shift(5), reversal(5)], 5)
    assert g.order == 10
    assert g.is_closed()


def test_left_coset_reps_whole_group():
    assert left_coset_reps(symmetric_group(4), 4) == [identity(4)]


def _pair_preserving(n):
    return PermGroup((p for p in itertools.permutations(range(1, n + 1))
                      if all((p[i] + 1) // 2 == (p[i + 1] + 1) // 2 for i in range(0, n, 2))), n)


def test_left_coset_reps_partition():
    h = _pair_preserving(6)
    assert h.order == 48
    reps = left_coset_reps(h, 6)
    assert len(reps) == 720 // 48 == 15
    translates = [{compose(r, x) for x in h.elements} for r in reps]
    assert sum(map(len, translates)) == 720
    assert set().union(*translates) == set(itertools.permutations(range(1, 7)))
    assert all(r == min(t) for r, t in zip(reps, translates))


def test_left_coset_reps_line_group_of_cyclic3():
    h = PermGroup(line_seqs(CYCLIC3), 3)
    assert h.order == 6
    assert left_coset_reps(h, 3) == [(1, 2, 3)]


def test_left_coset_reps_errors():
    with pytest.raises(PermError):
        left_coset_reps(PermGroup([(1, 2, 3), (2, 3, 1)], 3), 3)
    with pytest.raises(CapExceeded, match="cap 8"):
        left_coset_reps(PermGroup([identity(9)], 9), 9)


def _brute_double_cosets(c, r, n):
    """Independent oracle: the set of all distinct {c g r} over every g."""
    out = set()
    for g in itertools.permutations(range(1, n + 1)):
        out.add(frozenset(tuple(x[g[y[i] - 1] - 1] for i in range(n)) for x in c for y in r))
    return out


@pytest.mark.parametrize("n, count, size", [(5, 12, 10), (3, 1, 6)])
def test_double_cosets_shift_reversal(n, count, size):
    c = generate_group([cyclic_shift(n)], n)
    r = generate_group([reversal(n)], n)
    dcs = double_cosets(c, r, n)
    assert len(dcs) == count
    assert {len(d) for d in dcs} == {size}
    assert set(dcs) == _brute_double_cosets(c.elements, r.elements, n)
    assert [min(d) for d in dcs] == sorted(min(d) for d in dcs)


def test_double_cosets_trivial_groups():
    e = PermGroup([identity(4)], 4)
    dcs = double_cosets(e, e, 4)
    assert len(dcs) == math.factorial(4)
    assert all(len(d) == 1 for d in dcs)


def test_double_cosets_rejects_non_subgroup():
    bad = PermGroup([identity(3), (2, 3, 1)], 3)
    with pytest.raises(PermError):
        double_cosets(bad, bad, 3)


def test_apply_entrywise():
    m = ((1, 2), (2, 1))
    assert apply_entrywise(identity(2), m) == m
    with pytest.raises(PermError):
        apply_entrywise((2, 3, 1), m)
    assert apply_entrywise((2, 1, 3), CYCLIC3) == ((1, 3, 2), (3, 2, 1), (2, 1, 3))


def test_apply_entrywise_lines_are_composed():
    r = (3, 1, 2)
    out = apply_entrywise(r, CYCLIC3)
    assert list(line_seqs(out)) == [compose(r, s) for s in line_seqs(CYCLIC3)]


def test_is_group():
    assert is_group(itertools.permutations(range(1, 4)), 3)
    assert not is_group([(1, 2, 3), (2, 3, 1)], 3)
    assert not is_group([(2, 1, 3)], 3)
