"""Finite commutative rings Z_k1 x ... x Z_kt, quartets, and reflectable enumerations.

Ring elements are tuples of residues.  Elements are ordered canonically as
tuples (lexicographic over residues), which is also the order produced by
``Ring.elements()``.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, NamedTuple, Sequence

Element = tuple[int, ...]


class RingError(ValueError):
    pass


class NoQuartet(RingError):
    """No ring of the requested order has a quartet."""


class Ring:
    """The direct product of residue-class rings ``Z_k1 x ... x Z_kt``."""

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(k) for k in moduli)
        if not moduli:
            raise RingError("a ring needs at least one modulus")
        if any(k < 1 for k in moduli):
            raise RingError(f"moduli must be positive, got {moduli}")
        self.moduli = moduli
        self.size = math.prod(moduli)

    def __repr__(self) -> str:
        return "Ring(" + " x ".join(f"Z_{k}" for k in self.moduli) + ")"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self.moduli == other.moduli

    def __hash__(self) -> int:
        return hash(self.moduli)

    def __len__(self) -> int:
        return self.size

    @property
    def zero(self) -> Element:
        return tuple(0 for _ in self.moduli)

    @property
    def one(self) -> Element:
        return tuple(1 % k for k in self.moduli)

    @property
    def minus_one(self) -> Element:
        return self.neg(self.one)

    def element(self, residues: Sequence[int]) -> Element:
        if len(residues) != len(self.moduli):
            raise RingError(f"{residues!r} has {len(residues)} components, expected {len(self.moduli)}")
        return tuple(int(x) % k for x, k in zip(residues, self.moduli))

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(k) for k in self.moduli))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % k for x, y, k in zip(a, b, self.moduli))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % k for x, y, k in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple(-x % k for x, k in zip(a, self.moduli))

    def mul(self, a: Element, b: Element) -> Element:
        return tuple((x * y) % k for x, y, k in zip(a, b, self.moduli))

    def is_unit(self, a: Element) -> bool:
        return all(math.gcd(x, k) == 1 for x, k in zip(a, self.moduli))

    def index(self, a: Element) -> int:
        """0-based position of *a* in canonical order."""
        pos = 0
        for x, k in zip(a, self.moduli):
            pos = pos * k + x
        return pos


def make_ring(moduli: Sequence[int]) -> Ring:
    return Ring(moduli)


def units(ring: Ring) -> list[Element]:
    return [a for a in ring.elements() if ring.is_unit(a)]


class Quartet(NamedTuple):
    one: Element
    minus_one: Element
    c: Element
    minus_c: Element

    def as_set(self) -> frozenset[Element]:
        return frozenset(self)


def _quartet_from(ring: Ring, c: Element) -> Quartet | None:
    one, m1 = ring.one, ring.minus_one
    if not ring.is_unit(c) or ring.mul(c, c) not in (one, m1):
        return None
    q = Quartet(one, m1, c, ring.neg(c))
    return q if len(set(q)) == 4 else None


def find_quartet(ring: Ring) -> Quartet | None:
    """The quartet ``{1, -1, c, -c}`` with the smallest admissible ``c``, if any."""
    for c in ring.elements():
        if c in (ring.one, ring.minus_one):
            continue
        q = _quartet_from(ring, c)
        if q is not None:
            return q
    return None


def is_quartet(ring: Ring, elems: Sequence[Element]) -> bool:
    """Direct check of the quartet definition on an arbitrary 4-element set.

    Four distinct units closed under multiplication and under negation.
    """
    s = set(elems)
    if len(s) != 4 or not all(ring.is_unit(a) for a in s):
        return False
    if any(ring.neg(a) not in s for a in s):
        return False
    return all(ring.mul(a, b) in s for a in s for b in s)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def quartet_exists_for_order(n: int) -> bool:
    """Whether some n-element ring (n >= 5) has a quartet."""
    p = n // 2 if n % 2 == 0 else n
    return not (is_prime(p) and p % 4 == 3)


def _odd_quartet(n: int) -> tuple[Ring, Quartet]:
    # n odd, n >= 5, not a prime = 3 mod 4
    if not is_prime(n):
        m = next(d for d in range(3, n) if n % d == 0)
        ring = Ring((m, n // m))
        return ring, Quartet((1, 1), (m - 1, n // m - 1), (1, n // m - 1), (m - 1, 1))
    ring = Ring((n,))
    r = next(x for x in range(2, n - 1) if x * x % n == n - 1)
    return ring, Quartet((1,), (n - 1,), (r,), (n - r,))


def construct_quartet(n: int) -> tuple[Ring, Quartet]:
    """An n-element ring together with a quartet, built case by case.

    Odd composite n uses ``Z_m x Z_q`` with ``(+-1, +-1)``; a prime n = 1 mod 4
    uses ``Z_n`` and a square root of -1; ``4 | n`` uses ``Z_n`` with
    ``(n-2)/2`` and ``(n+2)/2``; ``n = 2m`` with m odd prefixes the odd
    construction for m with a ``Z_2`` factor.
    """
    if n < 5:
        raise RingError(f"quartet construction needs n >= 5, got {n}")
    if not quartet_exists_for_order(n):
        p = n // 2 if n % 2 == 0 else n
        form = "p" if p == n else "2p"
        raise NoQuartet(
            f"no quartet exists for this order: n = {n} has the form {form} "
            f"with p = {p} prime and p = 3 mod 4")
    if n % 2 == 1:
        return _odd_quartet(n)
    if n % 4 == 0:
        ring = Ring((n,))
        c = (n - 2) // 2
        return ring, Quartet((1,), (n - 1,), (c,), ((n + 2) // 2,))
    inner_ring, q = _odd_quartet(n // 2)
    ring = Ring((2,) + inner_ring.moduli)
    return ring, Quartet(*((1,) + e for e in q))


class ReflectableEnumeration(NamedTuple):
    u: Element
    z: tuple[Element, ...]


def reflectable_enumeration(ring: Ring) -> ReflectableEnumeration:
    """Enumerate *ring* so that reflecting ``x -> u - x`` reverses the order, ``u = -1``.

    Elements are paired with their reflections in canonical order; the smaller
    of each pair goes to the front half and the fixed point, if any, sits in
    the middle.
    """
    u = ring.minus_one
    n = ring.size
    front: list[Element] = []
    fixed = None
    placed: set[Element] = set()
    for x in ring.elements():
        if x in placed:
            continue
        y = ring.sub(u, x)
        if y == x:
            fixed = x
        else:
            front.append(x)
            placed.add(y)
        placed.add(x)
    back = [ring.sub(u, x) for x in reversed(front)]
    z = front + ([fixed] if fixed is not None else []) + back
    assert len(z) == n
    return ReflectableEnumeration(u, tuple(z))
