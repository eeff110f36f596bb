import itertools
import math

import pytest

from latinpack.ring import (
    NoQuartet,
    Ring,
    RingError,
    construct_quartet,
    find_quartet,
    is_prime,
    is_quartet,
    make_ring,
    reflectable_enumeration,
    units,
)


def product_rings(limit):
    """Every Z_k1 x ... x Z_kt with 2 <= k1 <= ... <= kt and size <= limit."""
    def grow(prefix, size):
        yield prefix
        lo = prefix[-1] if prefix else 2
        for k in range(lo, limit // size + 1):
            yield from grow(prefix + (k,), size * k)
    return [moduli for moduli in grow((), 1) if moduli]


def brute_quartets(moduli):
    """Independent oracle: every 4-subset of units that is a multiplicative
    subgroup closed under negation, using raw componentwise arithmetic."""
    elems = list(itertools.product(*(range(k) for k in moduli)))
    unit = [e for e in elems if all(math.gcd(x, k) == 1 for x, k in zip(e, moduli))]
    mul = lambda a, b: tuple(x * y % k for x, y, k in zip(a, b, moduli))
    neg = lambda a: tuple(-x % k for x, k in zip(a, moduli))
    found = []
    for sub in itertools.combinations(unit, 4):
        s = set(sub)
        if all(mul(a, b) in s for a in s for b in s) and all(neg(a) in s for a in s):
            found.append(s)
    return found


@pytest.mark.parametrize("moduli, size", [([5], 5), ([3, 3], 9), ([2, 3, 3], 18)])
def test_make_ring(moduli, size):
    r = make_ring(moduli)
    assert r.size == size
    assert r.zero == (0,) * len(moduli)
    assert r.one == (1,) * len(moduli)


@pytest.mark.parametrize("moduli", [[], [0], [3, -1]])
def test_make_ring_rejects(moduli):
    with pytest.raises(RingError):
        make_ring(moduli)


def test_units():
    assert units(Ring([5])) == [(1,), (2,), (3,), (4,)]
    assert len(units(Ring([9]))) == 6
    assert len(units(Ring([3, 3]))) == 4


def test_find_quartet_examples():
    assert find_quartet(Ring([9])) is None
    q5 = find_quartet(Ring([5]))
    assert q5 == ((1,), (4,), (2,), (3,))
    q33 = find_quartet(Ring([3, 3]))
    assert q33.as_set() == {(1, 1), (2, 2), (1, 2), (2, 1)}
    assert q33.c == (1, 2)


def test_no_quartet_in_characteristic_two():
    assert find_quartet(Ring([2, 2, 2])) is None
    assert find_quartet(Ring([2])) is None


def test_z5_squared_has_quartet():
    # {1, -1, (2, 2), (3, 3)}: (2, 2)^2 = (4, 4) = -1
    ring = Ring([5, 5])
    assert is_quartet(ring, [(1, 1), (4, 4), (2, 2), (3, 3)])
    assert find_quartet(ring) is not None
    assert brute_quartets((5, 5))


def test_find_quartet_matches_brute_force():
    for moduli in product_rings(30):
        ring = Ring(moduli)
        q = find_quartet(ring)
        brute = brute_quartets(moduli)
        assert (q is not None) == bool(brute), moduli
        if q is not None:
            assert q.as_set() in brute


@pytest.mark.parametrize("n, moduli, elems", [
    (9, (3, 3), {(1, 1), (2, 2), (1, 2), (2, 1)}),
    (8, (8,), {(1,), (7,), (3,), (5,)}),
])
def test_construct_quartet_examples(n, moduli, elems):
    ring, q = construct_quartet(n)
    assert ring.moduli == moduli
    assert q.as_set() == elems


@pytest.mark.parametrize("n", [7, 11, 6, 14, 4, 3])
def test_construct_quartet_errors(n):
    with pytest.raises(RingError):
        construct_quartet(n)


def test_construct_quartet_error_message():
    with pytest.raises(NoQuartet, match="no quartet exists for this order"):
        construct_quartet(7)


def _excluded(n):
    return any(is_prime(p) and p % 4 == 3 and n in (p, 2 * p) for p in range(2, n + 1))


@pytest.mark.parametrize("n", range(5, 51))
def test_construct_quartet_boundary(n):
    if _excluded(n):
        with pytest.raises(NoQuartet):
            construct_quartet(n)
        return
    ring, q = construct_quartet(n)
    assert ring.size == n
    assert is_quartet(ring, list(q))
    assert q.one == ring.one and q.minus_one == ring.minus_one
    assert q.minus_c == ring.neg(q.c)
    assert ring.mul(q.c, q.c) in (ring.one, ring.minus_one)


def test_reflectable_z5():
    e = reflectable_enumeration(Ring([5]))
    assert e.u == (4,)
    assert e.z == tuple((k,) for k in range(5))
    assert tuple((4 - x,) for (x,) in e.z) == e.z[::-1]


def test_reflectable_z4():
    e = reflectable_enumeration(Ring([4]))
    assert e.u == (3,)
    assert e.z == ((0,), (1,), (2,), (3,))


def test_reflectable_z3xz3():
    ring = Ring([3, 3])
    e = reflectable_enumeration(ring)
    assert e.u == (2, 2)
    assert e.z[4] == (1, 1)
    assert ring.add((1, 1), (1, 1)) == e.u


@pytest.mark.parametrize("moduli", product_rings(30))
def test_reflection_identity_and_unique_half(moduli):
    ring = Ring(moduli)
    e = reflectable_enumeration(ring)
    n = ring.size
    assert sorted(e.z) == sorted(ring.elements())
    assert all(ring.sub(e.u, e.z[i]) == e.z[n - 1 - i] for i in range(n))
    halves = [x for x in ring.elements() if ring.add(x, x) == e.u]
    assert len(halves) <= 1
    assert (len(halves) == 1) == (n % 2 == 1)
