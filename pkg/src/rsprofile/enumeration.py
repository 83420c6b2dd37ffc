"""
Exhaustive and random generation of finite constellations.

Random constellations use a fixed, portable generator so that a seed gives
the same stream in any language:

* SplitMix64 with ``state = seed mod 2**64``; each draw adds
  ``0x9E3779B97F4A7C15`` to the state and returns the usual SplitMix64
  mix of it.
* A draw below ``m`` rejects raw values ``>= 2**64 - (2**64 mod m)`` and
  returns ``raw mod m``.
* Each column is a Fisher-Yates shuffle of ``[1..n]``: for ``i`` from
  ``n-1`` down to ``1`` swap positions ``i`` and ``draw(i + 1)``.  The
  shuffled list is the image list ``sigma(1), ..., sigma(n)``.  Columns are
  drawn in order ``1..q`` from one stream.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .covering import backtracking_cover_oracle, find_exact_covering
from .model import Constellation, from_constellation, is_transitive, monodromy_product
from .perm import Finite, Permutation

BUDGET = 10**7
MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class EnumFilter:
    require_transitive: bool = False
    require_identity_product: bool = False

    def accepts(self, c: Constellation) -> bool:
        if self.require_identity_product and not monodromy_product(c).is_identity():
            return False
        if self.require_transitive and not is_transitive(c):
            return False
        return True


def _check_budget(n: int, q: int) -> None:
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    if math.factorial(n) ** q > BUDGET:
        raise ValueError(f"(n!)^q = {math.factorial(n) ** q} exceeds the budget {BUDGET}")


def enumerate_constellations(n: int, q: int, filter: EnumFilter | None = None) -> Iterator[Constellation]:
    """All q-tuples of permutations of 1..n in lexicographic order of image lists."""
    _check_budget(n, q)
    return _generate(n, q, filter or EnumFilter())


def _generate(n: int, q: int, filter: EnumFilter) -> Iterator[Constellation]:
    ss = Finite(n)
    perms = [Permutation(ss, p) for p in itertools.permutations(range(1, n + 1))]
    for combo in itertools.product(perms, repeat=q):
        c = Constellation(combo)
        if filter.accepts(c):
            yield c


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            x = self.next()
            if x < limit:
                return x % m


def random_constellation(n: int, q: int, seed: int) -> Constellation:
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    rng = SplitMix64(seed)
    sigmas = []
    for _ in range(q):
        images = list(range(1, n + 1))
        for i in range(n - 1, 0, -1):
            k = rng.below(i + 1)
            images[i], images[k] = images[k], images[i]
        sigmas.append(Permutation(Finite(n), tuple(images)))
    return Constellation(tuple(sigmas))


@dataclass(frozen=True)
class CrossCheckSummary:
    """
    Outcome of running the three realizability deciders on every transitive
    constellation of a given size.

    ``disagreements`` holds ``(constellation, walks, oracle, product)``
    answer tuples where the three deciders differ; ``shape_failures`` holds
    coverable constellations whose covering has the wrong number or length
    of paths, or where the oracle found a different covering.
    """

    n: int
    q: int
    instances: int
    coverable: int
    disagreements: tuple = ()
    shape_failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.shape_failures)


def cross_check_theorem(n: int, q: int) -> CrossCheckSummary:
    instances = coverable = 0
    disagreements = []
    shape_failures = []
    for c in enumerate_constellations(n, q, EnumFilter(require_transitive=True)):
        instances += 1
        profile = from_constellation(c)
        walks = find_exact_covering(profile)
        oracle = backtracking_cover_oracle(profile)
        product = monodromy_product(c).is_identity()
        answers = (walks is not None, oracle is not None, product)
        if len(set(answers)) > 1:
            disagreements.append((c, *answers))
            continue
        if walks is None:
            continue
        coverable += 1
        good_shape = len(walks) == n and all(
            len(p.arcs) == q and len(p.edges) == q for p in walks)
        if not good_shape or set(walks) != set(oracle):
            shape_failures.append(c)
    return CrossCheckSummary(n, q, instances, coverable, tuple(disagreements), tuple(shape_failures))
