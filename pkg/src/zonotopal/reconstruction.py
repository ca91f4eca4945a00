"""Recover the projective column multiset of a matrix from length queries alone.

For a candidate point ``s`` with support ``I``, the number of columns whose
restriction to ``I`` is a nonzero multiple of ``s`` equals the generic length
of ``sum_{i in I} b_i x_i`` minus the generic length of ``sum_{i in I} c_i x_i``
with ``c . s = 0``.  These cumulative counts are indexed by the dominance
order and invert to exact multiplicities.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import GuardExceeded, NegativeMultiplicity, RandomnessExhausted
from .linalg import QMatrix, canonical_vector
from .squarefree import LengthOracle

CANDIDATE_GUARD = 10 ** 5
DEFAULT_RADIUS = 10 ** 6
DEFAULT_TRIALS = 5
MAX_REJECTIONS = 100


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point of projective space as a primitive integer vector, first nonzero entry positive."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("the zero vector is not a projective point")
        if canonical_vector(self.coords) != tuple(self.coords):
            raise ValueError(f"{self.coords} is not in canonical form; use ProjPoint.of")

    @classmethod
    def of(cls, values: Sequence) -> "ProjPoint":
        return cls(canonical_vector(values))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.coords) if x)

    def __str__(self) -> str:
        return "(" + ":".join(str(x) for x in self.coords) + ")"


class ProjMultiset:
    """Multiset of projective points with positive counts."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[ProjPoint, int] | Iterable[ProjPoint] = ()):
        if isinstance(entries, Mapping):
            counts = Counter(entries)
        else:
            counts = Counter(entries)
        self.entries = {p: int(c) for p, c in sorted(counts.items()) if c > 0}

    @classmethod
    def from_columns(cls, A: QMatrix) -> "ProjMultiset":
        return cls(ProjPoint.of(c) for c in A.columns() if any(c))

    def total(self) -> int:
        return sum(self.entries.values())

    def profile(self) -> list[int]:
        """Multiplicities sorted descending."""
        return sorted(self.entries.values(), reverse=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjMultiset) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(frozenset(self.entries.items()))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {c}" for p, c in self.entries.items())
        return "{" + body + "}"

    def to_json(self) -> list:
        return [[list(p.coords), c] for p, c in self.entries.items()]


@dataclass(frozen=True)
class CandidateSet:
    ratio_set: frozenset[Fraction]
    candidates: tuple[ProjPoint, ...]


def ratio_set(O: LengthOracle) -> frozenset[Fraction]:
    out: set[Fraction] = set()
    for i, j in itertools.permutations(range(O.n), 2):
        out |= O.critical_ratios(i, j)
    return frozenset(out)


def is_ratio_closed(S: Iterable[Fraction]) -> bool:
    S = set(S)
    return all(1 / s in S for s in S)


def candidate_set(S: Iterable[Fraction], n: int, guard: int = CANDIDATE_GUARD,
                  prune: bool = True) -> CandidateSet:
    """Every projective point whose normalised coordinates come from ``S``.

    The least index of each support is set to 1 and the rest range over
    ``S | {1}``.  With ``prune`` a candidate is dropped unless every ratio of
    two of its nonzero coordinates lies in ``S | {1}``.
    """
    S = frozenset(Fraction(s) for s in S)
    values = sorted(S | {Fraction(1)})
    size = len(values) ** max(n - 1, 0) * 2 ** n
    if size > guard:
        raise GuardExceeded("candidate grid", size, guard)
    allowed = set(values)
    seen: dict[tuple[int, ...], ProjPoint] = {}
    for r in range(1, n + 1):
        for support in itertools.combinations(range(n), r):
            for fill in itertools.product(values, repeat=r - 1):
                coords = [Fraction(0)] * n
                coords[support[0]] = Fraction(1)
                for idx, v in zip(support[1:], fill):
                    coords[idx] = v
                if prune and any(coords[a] / coords[b] not in allowed
                                 for a, b in itertools.permutations(support, 2)):
                    continue
                p = ProjPoint.of(coords)
                seen.setdefault(p.coords, p)
    return CandidateSet(S, tuple(sorted(seen.values(), key=lambda p: (len(p.support), p.coords))))


def dominates(p: ProjPoint, q: ProjPoint) -> bool:
    """``p >= q``: ``q`` arises from ``p`` by zeroing coordinates and rescaling."""
    if p.n != q.n:
        raise ValueError("points of different projective spaces")
    sq = q.support
    if any(p.coords[i] == 0 for i in sq):
        return False
    i0 = sq[0]
    # q_i / p_i must be constant on the support of q
    return all(q.coords[i] * p.coords[i0] == q.coords[i0] * p.coords[i] for i in sq)


def _rng_for(seed: int, s: ProjPoint) -> random.Random:
    return random.Random(f"{seed}:{','.join(map(str, s.coords))}")


def cumulative_multiplicity(O: LengthOracle, s: ProjPoint, trials: int = DEFAULT_TRIALS,
                            rng: random.Random | None = None, radius: int = DEFAULT_RADIUS,
                            seed: int = 0) -> int:
    """Number of columns ``s'`` (with multiplicity) such that ``s' >= s``.

    Generic coefficients are emulated by random integers in ``[-radius, radius]``;
    taking the maximum length over ``trials`` draws removes accidental drops.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if s.n != O.n:
        raise ValueError("candidate dimension does not match the oracle")
    if rng is None:
        rng = _rng_for(seed, s)
    support = s.support
    rejections = 0

    def draw() -> list[int]:
        return [rng.randint(-radius, radius) for _ in support]

    best_b = best_c = 0
    for _ in range(trials):
        while True:
            b = draw()
            if any(b):
                break
            rejections += 1
            if rejections > MAX_REJECTIONS:
                raise RandomnessExhausted("could not draw a nonzero coefficient vector")
        full = [0] * O.n
        for i, v in zip(support, b):
            full[i] = v
        best_b = max(best_b, O.length(full))

        if len(support) == 1:
            continue  # c . s = 0 forces c = 0, whose length is 0
        while True:
            c = [Fraction(v) for v in draw()]
            # solve the last coordinate from c . s = 0
            last = len(support) - 1
            partial = sum((c[t] * s.coords[support[t]] for t in range(last)), Fraction(0))
            c[last] = -partial / s.coords[support[last]]
            if any(c):
                break
            rejections += 1
            if rejections > MAX_REJECTIONS:
                raise RandomnessExhausted("could not draw a nonzero constrained vector")
        full = [Fraction(0)] * O.n
        for i, v in zip(support, c):
            full[i] = v
        best_c = max(best_c, O.length(full))
    return best_b - best_c


def reconstruct(O: LengthOracle, trials: int = DEFAULT_TRIALS, seed: int = 0,
                guard: int = CANDIDATE_GUARD) -> ProjMultiset:
    """Projective multiset of the oracle's hidden columns.

    Cumulative counts are inverted from the largest support down; within one
    support size no candidate strictly dominates another, so the order inside
    a stratum does not matter.
    """
    S = ratio_set(O)
    if not is_ratio_closed(S):
        raise AssertionError("oracle ratio set is not closed under inversion")
    cands = candidate_set(S, O.n, guard).candidates
    cum = {s: cumulative_multiplicity(O, s, trials, seed=seed) for s in cands}

    strata: dict[int, list[ProjPoint]] = {}
    for s in cands:
        strata.setdefault(len(s.support), []).append(s)
    found: dict[ProjPoint, int] = {}
    for size in sorted(strata, reverse=True):
        layer = strata[size]
        above = list(found.items())
        for s in layer:
            mult = cum[s] - sum(c for p, c in above if dominates(p, s))
            if mult < 0:
                raise NegativeMultiplicity(f"multiplicity {mult} at {s}")
            if mult:
                found[s] = mult
        assert not any(dominates(p, q) for p in layer for q in layer if p != q and found.get(p))
    return ProjMultiset(found)
