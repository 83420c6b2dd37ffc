"""
Sheet sets and permutations of sheets.

Two kinds of sheet sets are supported: a finite set ``1..n`` and the
integers with a period ``p``.  A permutation of the periodic set is stored
through the images of the residues ``0..p-1`` and is extended by
``sigma(j + p) = sigma(j) + p``.

Composition order is "apply the left argument first" everywhere in this
package: ``compose(s, t)(j) == t(s(j))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class SheetSet:
    """Either ``Finite(n)`` (labels 1..n) or ``PeriodicIntegers(p)`` (all integers)."""

    size: int
    periodic: bool = False

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"sheet set size must be a positive integer, got {self.size!r}")

    def __str__(self):
        if self.periodic:
            return f"PeriodicIntegers({self.size})"
        return f"Finite({self.size})"

    def labels(self) -> range:
        """Finite labels, or the residue representatives ``0..p-1`` for a periodic set."""
        if self.periodic:
            return range(self.size)
        return range(1, self.size + 1)

    def __contains__(self, label) -> bool:
        if not isinstance(label, int) or isinstance(label, bool):
            return False
        return self.periodic or 1 <= label <= self.size


def Finite(n: int) -> SheetSet:
    return SheetSet(n, periodic=False)


def PeriodicIntegers(p: int) -> SheetSet:
    return SheetSet(p, periodic=True)


class SheetSetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """
    Bijection of a sheet set.

    ``images`` holds ``sigma(1), ..., sigma(n)`` for a finite set and
    ``sigma(0), ..., sigma(p-1)`` for a periodic one.
    """

    sheet_set: SheetSet
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = self.sheet_set.size
        if len(images) != n:
            raise ValueError(f"expected {n} images, got {len(images)}")
        if self.sheet_set.periodic:
            if sorted(a % n for a in images) != list(range(n)):
                raise ValueError(f"residues of {images} mod {n} are not a permutation")
        elif sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{n}")

    # -- construction --

    @classmethod
    def identity(cls, sheet_set: SheetSet) -> "Permutation":
        return cls(sheet_set, tuple(sheet_set.labels()))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """
        Finite permutation from disjoint cycles; omitted labels are fixed.

        >>> Permutation.from_cycles(3, [(1, 2, 3)]).images
        (2, 3, 1)
        """
        images = list(range(1, n + 1))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 1 <= a <= n:
                    raise ValueError(f"label {a} out of range 1..{n}")
                if a in seen:
                    raise ValueError(f"label {a} repeated")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b
        return cls(Finite(n), tuple(images))

    @classmethod
    def periodic_map(cls, images: Sequence[int]) -> "Permutation":
        """Periodic permutation with period ``len(images)``."""
        return cls(PeriodicIntegers(len(images)), tuple(images))

    # -- evaluation --

    @property
    def period(self) -> int | None:
        return self.sheet_set.size if self.sheet_set.periodic else None

    def __call__(self, j: int) -> int:
        n = self.sheet_set.size
        if self.sheet_set.periodic:
            r = j % n
            return self.images[r] + (j - r)
        if not 1 <= j <= n:
            raise ValueError(f"sheet {j} not in 1..{n}")
        return self.images[j - 1]

    def is_identity(self) -> bool:
        return self.images == tuple(self.sheet_set.labels())

    def with_period(self, period: int) -> "Permutation":
        """Re-express a periodic permutation over a multiple of its period."""
        if not self.sheet_set.periodic:
            raise SheetSetMismatch("only periodic permutations have a period")
        if period % self.sheet_set.size:
            raise ValueError(f"{period} is not a multiple of {self.sheet_set.size}")
        return Permutation(PeriodicIntegers(period), tuple(self(r) for r in range(period)))

    def cycle_notation(self) -> str:
        """Canonical cycle string of a finite permutation, ``()`` for the identity."""
        if self.sheet_set.periodic:
            raise SheetSetMismatch("cycle notation is only defined for finite permutations")
        cycles = [o.elements for o in cycle_structure(self) if len(o.elements) > 1]
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def map_notation(self) -> str:
        if not self.sheet_set.periodic:
            raise SheetSetMismatch("MAP notation is only defined for periodic permutations")
        return "MAP " + " ".join(f"{r}->{a}" for r, a in enumerate(self.images))

    def __str__(self):
        if self.sheet_set.periodic:
            return self.map_notation()
        return self.cycle_notation()


def common_period(perms: Iterable[Permutation]) -> int:
    return math.lcm(*(s.sheet_set.size for s in perms))


def _align(sigma: Permutation, tau: Permutation) -> tuple[Permutation, Permutation]:
    a, b = sigma.sheet_set, tau.sheet_set
    if a.periodic != b.periodic:
        raise SheetSetMismatch(f"cannot combine {a} with {b}")
    if not a.periodic:
        if a != b:
            raise SheetSetMismatch(f"cannot combine {a} with {b}")
        return sigma, tau
    p = math.lcm(a.size, b.size)
    return sigma.with_period(p), tau.with_period(p)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """``j -> tau(sigma(j))``: the left argument is applied first."""
    sigma, tau = _align(sigma, tau)
    return Permutation(sigma.sheet_set, tuple(tau(sigma(j)) for j in sigma.sheet_set.labels()))


def inverse(sigma: Permutation) -> Permutation:
    ss = sigma.sheet_set
    if not ss.periodic:
        images = [0] * ss.size
        for j, a in enumerate(sigma.images, start=1):
            images[a - 1] = j
        return Permutation(ss, tuple(images))
    p = ss.size
    images = [0] * p
    for r, a in enumerate(sigma.images):
        # sigma(r) = a  =>  sigma^-1(a % p) = r - (a - a % p)
        images[a % p] = r - (a - a % p)
    return Permutation(ss, tuple(images))


@dataclass(frozen=True)
class Orbit:
    """
    One orbit descriptor of a permutation.

    For a finite permutation ``elements`` is a cycle, started at its
    smallest label.  For a periodic permutation a descriptor stands for a
    whole translation class: ``elements`` is the stretch of the orbit of
    the smallest residue until it comes back to that residue, and ``shift``
    is the net displacement over that stretch.  A zero shift means finite
    orbits of length ``len(elements)``; a nonzero shift means the class
    consists of ``count`` distinct bi-infinite orbits.
    """

    elements: tuple[int, ...]
    shift: int = 0
    count: int = 1

    @property
    def infinite(self) -> bool:
        return self.shift != 0

    @property
    def length(self) -> float:
        return math.inf if self.infinite else len(self.elements)


def cycle_structure(sigma: Permutation) -> list[Orbit]:
    ss = sigma.sheet_set
    orbits = []
    seen = set()
    if not ss.periodic:
        for start in ss.labels():
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = sigma(start)
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = sigma(j)
            orbits.append(Orbit(tuple(cycle)))
        return orbits

    p = ss.size
    for start in range(p):
        if start in seen:
            continue
        elements = [start]
        seen.add(start)
        j = sigma(start)
        while j % p != start:
            elements.append(j)
            seen.add(j % p)
            j = sigma(j)
        shift = j - start
        count = abs(shift) // p if shift else 1
        orbits.append(Orbit(tuple(elements), shift, count))
    return orbits
