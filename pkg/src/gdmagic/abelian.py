"""Finite Abelian groups written as products of cyclic groups.

A group is a :class:`GroupSpec` holding the cyclic orders exactly as the user
gave them; elements are plain tuples of residues, one per factor.  Anything
that needs to pick out a specific cyclic 2-factor works on the canonical
primary form (prime-power factors, primes ascending, exponents descending),
e.g. ``GroupSpec((2, 6)).canonical()`` is ``2x2x3`` and ``GroupSpec((12,))``
canonicalizes to ``4x3``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Optional, Sequence

from sympy import factorint
from sympy.utilities.iterables import partitions

Element = tuple[int, ...]

_SPEC_RE = re.compile(r"[1-9][0-9]*(x[1-9][0-9]*)*")


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(n) for n in self.factors)
        if any(n < 2 for n in factors):
            raise GroupError(f"cyclic factors must be >= 2, got {list(factors)}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        """Parse ``"4x2x5"``; a bare ``"40"`` is the cyclic group of order 40."""
        if not _SPEC_RE.fullmatch(text):
            raise GroupError(f"malformed group spec {text!r}")
        parts = [int(s) for s in text.split("x")]
        if parts == [1]:
            return cls(())
        return cls(tuple(parts))

    def __str__(self) -> str:
        return "x".join(map(str, self.factors)) or "1"

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    # -- arithmetic -------------------------------------------------------

    def check(self, x: Sequence[int]) -> Element:
        if len(x) != len(self.factors):
            raise GroupError(f"element {tuple(x)} has {len(x)} coordinates, group {self} has {len(self.factors)}")
        if any(not 0 <= r < n for r, n in zip(x, self.factors)):
            raise GroupError(f"element {tuple(x)} out of range for {self}")
        return tuple(x)

    def add(self, x: Element, y: Element) -> Element:
        if len(x) != len(self.factors) or len(y) != len(self.factors):
            raise GroupError(f"dimension mismatch for {self}: {x}, {y}")
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def neg(self, x: Element) -> Element:
        if len(x) != len(self.factors):
            raise GroupError(f"dimension mismatch for {self}: {x}")
        return tuple(-a % n for a, n in zip(x, self.factors))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.factors))

    def total(self, xs: Iterable[Element]) -> Element:
        acc = [0] * len(self.factors)
        for x in xs:
            for k, a in enumerate(x):
                acc[k] += a
        return tuple(a % n for a, n in zip(acc, self.factors))

    def elements(self) -> list[Element]:
        """All elements in lexicographic order of residue vectors; the first is zero."""
        return list(itertools.product(*(range(n) for n in self.factors)))

    def index(self, x: Element) -> int:
        i = 0
        for a, n in zip(x, self.factors):
            i = i * n + a
        return i

    # -- canonical form ---------------------------------------------------

    @cached_property
    def _primary(self) -> tuple[tuple[int, int, int, int], ...]:
        # (prime, exponent, source factor, prime power), sorted into canonical order
        parts = []
        for src, n in enumerate(self.factors):
            for p, e in factorint(n).items():
                parts.append((p, e, src, p**e))
        parts.sort(key=lambda t: (t[0], -t[1], t[2]))
        return tuple(parts)

    def canonical(self) -> GroupSpec:
        return GroupSpec(tuple(q for _, _, _, q in self._primary))

    def is_canonical(self) -> bool:
        return self.canonical().factors == self.factors

    def is_isomorphic(self, other: GroupSpec) -> bool:
        return self.canonical() == other.canonical()

    def to_canonical(self, x: Element) -> Element:
        return tuple(x[src] % q for _, _, src, q in self._primary)

    def from_canonical(self, y: Element) -> Element:
        residues: list[list[tuple[int, int]]] = [[] for _ in self.factors]
        for (_, _, src, q), r in zip(self._primary, y):
            residues[src].append((r, q))
        return tuple(_crt(pairs) for pairs in residues)

    def canonical_positions(self) -> list[int]:
        """Position in the canonical form of each factor.

        Only meaningful when every factor is already a prime power.
        """
        if any(len(factorint(n)) != 1 for n in self.factors):
            raise GroupError(f"{self} has a factor that is not a prime power")
        pos = [0] * len(self.factors)
        for k, (_, _, src, _) in enumerate(self._primary):
            pos[src] = k
        return pos


def _crt(pairs: list[tuple[int, int]]) -> int:
    x, m = 0, 1
    for r, q in pairs:
        # m and q are coprime
        t = (r - x) * pow(m, -1, q) % q
        x, m = x + m * t, m * q
    return x


def transport(x: Element, source: GroupSpec, target: GroupSpec) -> Element:
    """Carry ``x`` across the isomorphism between two presentations of one group."""
    if not source.is_isomorphic(target):
        raise GroupError(f"{source} and {target} are not isomorphic")
    return target.from_canonical(source.to_canonical(x))


# -- module-level operations ---------------------------------------------


def add(g: GroupSpec, x: Element, y: Element) -> Element:
    return g.add(x, y)


def neg(g: GroupSpec, x: Element) -> Element:
    return g.neg(x)


def enumerate_elements(g: GroupSpec) -> list[Element]:
    return g.elements()


def _exponent_partitions(e: int) -> list[tuple[int, ...]]:
    parts = []
    for p in partitions(e):
        parts.append(tuple(sorted(itertools.chain.from_iterable([k] * m for k, m in p.items()), reverse=True)))
    # largest first part first: [8], [4, 2], [2, 2, 2]
    parts.sort(reverse=True)
    return parts


def enumerate_groups(order: int) -> list[GroupSpec]:
    """One canonical representative per isomorphism class of Abelian groups of ``order``."""
    if order < 1:
        raise GroupError("order must be >= 1")
    if order == 1:
        return [GroupSpec(())]
    per_prime = []
    for p, e in sorted(factorint(order).items()):
        per_prime.append([tuple(p**k for k in part) for part in _exponent_partitions(e)])
    return [GroupSpec(tuple(itertools.chain.from_iterable(combo))) for combo in itertools.product(*per_prime)]


def involutions(g: GroupSpec) -> list[Element]:
    halves = [(0, n // 2) if n % 2 == 0 else (0,) for n in g.factors]
    return [x for x in itertools.product(*halves) if any(x)]


def sum_all(g: GroupSpec) -> Element:
    """Sum of every element of ``g``."""
    N = g.order
    # each residue of factor n appears N/n times
    return tuple((N // n) * (n * (n - 1) // 2) % n for n in g.factors)


def quadruple_image_contains(g: GroupSpec, x: Element) -> bool:
    """Whether ``x = 4y`` for some ``y`` in ``g``."""
    return all(a % gcd(4, n) == 0 for a, n in zip(x, g.factors))


def split_cyclic_two_factor(g: GroupSpec, alpha: int) -> Optional[tuple[int, GroupSpec]]:
    """Find a canonical factor of order exactly ``2**alpha``.

    Returns its position in ``g.canonical()`` and the complementary group, or
    ``None`` if there is no such factor.
    """
    if alpha < 1:
        raise GroupError("alpha must be >= 1")
    canon = g.canonical().factors
    target = 2**alpha
    if target not in canon:
        return None
    pos = canon.index(target)
    return pos, GroupSpec(canon[:pos] + canon[pos + 1 :])


def has_z2_z2_summand(g: GroupSpec) -> bool:
    return g.canonical().factors.count(2) >= 2


def two_part_factors(g: GroupSpec) -> list[int]:
    """Orders of the cyclic 2-power factors of the canonical form, largest first."""
    return [q for q in g.canonical().factors if q % 2 == 0]
