"""Caps: verification, chord numbers, the m2 bound oracle and exhaustive search."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import NotACap, PointInSet, SpaceTooLargeForSearch
from .space import ProjectiveSpace

SEARCH_LIMIT = 121


class PointSet:
    """A duplicate-free, sorted set of PointIds of one projective space."""

    def __init__(self, space: ProjectiveSpace, ids: Iterable[int]):
        members = np.unique(np.asarray(list(ids) if not isinstance(ids, np.ndarray) else ids, dtype=np.int64))
        if members.size and (members[0] < 0 or members[-1] >= space.n):
            raise ValueError("PointId out of range")
        self.space = space
        self.members = members
        self.members.setflags(write=False)
        self.mask = np.zeros(space.n, dtype=bool)
        self.mask[members] = True

    @classmethod
    def from_coords(cls, space: ProjectiveSpace, coords) -> "PointSet":
        return cls(space, [space.id_of(c) for c in coords])

    def __len__(self) -> int:
        return int(self.members.size)

    def __iter__(self):
        return (int(x) for x in self.members)

    def __contains__(self, pid) -> bool:
        return bool(self.mask[pid])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and other.space is self.space
            and np.array_equal(other.members, self.members)
        )

    def __repr__(self) -> str:
        return f"PointSet({self.space}, {len(self)} points)"

    def complement(self) -> np.ndarray:
        return np.flatnonzero(~self.mask)

    def coords(self) -> list[tuple[int, ...]]:
        return [self.space.point(int(i)) for i in self.members]


@dataclass(frozen=True)
class CapCheck:
    is_cap: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.is_cap


def is_cap(s: PointSet) -> CapCheck:
    """Check that no three members are collinear.

    Pairs are scanned in lexicographic order; for each pair the q-1 other
    points of its line are looked up in the membership mask.  The first hit
    is returned as a sorted witness triple.
    """
    space, m = s.space, s.members
    for i in range(len(m) - 1):
        rest = m[i + 1 :]
        third = space.third_points(np.full(rest.size, m[i]), rest)
        hits = s.mask[third]
        rows = np.flatnonzero(hits.any(axis=1))
        if rows.size:
            j = rows[0]
            c = int(third[j][hits[j]].min())
            return CapCheck(False, (int(m[i]), int(rest[j]), c))
    return CapCheck(True)


def _chord_points(s: PointSet) -> np.ndarray:
    """Third points of every chord, one row per unordered member pair."""
    m = s.members
    if len(m) < 2:
        return np.empty((0, s.space.q - 1), dtype=np.int64)
    i, j = np.triu_indices(len(m), k=1)
    return s.space.third_points(m[i], m[j])


def _require_cap(s: PointSet) -> None:
    check = is_cap(s)
    if not check:
        raise NotACap(f"collinear triple {check.witness}")


def is_complete(s: PointSet) -> bool:
    """True iff every external point lies on a chord."""
    _require_cap(s)
    covered = np.zeros(s.space.n, dtype=bool)
    covered[_chord_points(s).ravel()] = True
    return bool((covered | s.mask).all())


@dataclass(frozen=True)
class ChordProfile:
    counts: dict[int, int]
    min: int
    max: int

    @property
    def is_constant(self) -> bool:
        return self.min == self.max

    def multiset(self) -> list[int]:
        return sorted(self.counts.values())

    def total(self) -> int:
        return sum(self.counts.values())


def chord_profile(s: PointSet) -> ChordProfile:
    """Chord numbers of all external points of a cap."""
    _require_cap(s)
    counts = np.bincount(_chord_points(s).ravel(), minlength=s.space.n)
    ext = s.complement()
    vals = counts[ext]
    return ChordProfile(
        {int(x): int(c) for x, c in zip(ext, vals)},
        int(vals.min()) if vals.size else 0,
        int(vals.max()) if vals.size else 0,
    )


def chord_number(s: PointSet, x: int) -> int:
    """Number of chords of the cap ``s`` through the external point ``x``."""
    if x in s:
        raise PointInSet(f"point {x} belongs to the cap")
    if len(s) < 2:
        return 0
    # members a whose line with x meets s again; each chord is seen from both ends
    third = s.space.third_points(np.full(len(s), x), s.members)
    return int(s.mask[third].any(axis=1).sum()) // 2


def expected_chord_number(k: int, m: int, q: int) -> Fraction:
    """``k(k-1)(q-1) / 2m``: the chord number forced on a co-transitive complement."""
    return Fraction(k * (k - 1) * (q - 1), 2 * m)


def chord_integrality(c: Fraction) -> bool:
    return c.denominator == 1


def a8_orbit_sizes(q: int) -> tuple[int, int]:
    """Point-orbit sizes of SL(5,q) on the skew square of V(5,q)."""
    return (q**5 - 1) * (q**2 + 1) // (q - 1), q**2 * (q**5 - 1) * (q**3 - 1) // (q - 1)


def a10_orbit_sizes(q: int) -> tuple[int, int]:
    """Point-orbit sizes of the half-spin module of Omega+(10,q)."""
    return (q**8 - 1) * (q**3 + 1) // (q - 1), q**3 * (q**8 - 1) * (q**5 - 1) // (q - 1)


def chord_formula_a8(q: int) -> Fraction:
    return Fraction((q**2 + 1) * (q**3 + q + 1), 2 * q)


def chord_formula_a10(q: int) -> Fraction:
    return Fraction((q**3 + 1) * (q**5 + q**2 + 1), 2 * q**2)


@dataclass(frozen=True)
class CapBound:
    value: int
    exact: bool

    def __str__(self) -> str:
        return f"{self.value}" if self.exact else f"<= {self.value}"


def cap_size_bound(r: int, q: int) -> CapBound:
    """Known value (or upper bound) of the largest cap size in PG(r, q)."""
    if r < 2 or q < 2:
        raise ValueError("need r >= 2 and q >= 2")
    if q == 2:
        return CapBound(2**r, True)
    if r == 2:
        return CapBound(q + 1 if q % 2 else q + 2, True)
    if r == 3:
        return CapBound(q**2 + 1, True)
    return CapBound(q ** (r - 1), False)


class LemmaVerdict(str, enum.Enum):
    SMALLER = "smaller"
    HYPERPLANE_COMPLEMENT = "hyperplane-complement"
    VIOLATION = "violation"


def complement_majority_check(s: PointSet) -> tuple[LemmaVerdict, int | None]:
    """Either the cap is smaller than its complement, or q = 2 and the
    complement is a hyperplane.  Returns the verdict and, in the hyperplane
    case, the PointId of the hyperplane's canonical covector."""
    _require_cap(s)
    space = s.space
    q, total = space.q, space.n
    if 2 * len(s) < total:
        return LemmaVerdict.SMALLER, None
    if q == 2:
        comp = s.complement()
        for pid, hyp in enumerate(space.hyperplanes()):
            if np.array_equal(hyp, comp):
                return LemmaVerdict.HYPERPLANE_COMPLEMENT, pid
    return LemmaVerdict.VIOLATION, None


@dataclass(frozen=True)
class SearchResult:
    max_size: int
    example: tuple[int, ...]
    nodes: int


def _line_masks(space: ProjectiveSpace) -> list[list[int]]:
    """``masks[a][b]``: bitmask of the line through points a and b."""
    n = space.n
    masks = [[0] * n for _ in range(n)]
    for line in space.lines():
        bits = 0
        for x in line:
            bits |= 1 << int(x)
        pts = [int(x) for x in line]
        for a in pts:
            row = masks[a]
            for b in pts:
                if a != b:
                    row[b] = bits
    return masks


def complete_cap_search(
    space: ProjectiveSpace, limit: int = SEARCH_LIMIT, symmetry: bool = False
) -> SearchResult:
    """Largest cap in ``space`` by exhaustive depth-first search.

    Caps are extended only by points with a larger PointId that lie on no
    chord of the current cap, with branch-and-bound on the number of
    remaining candidates.  The example returned is the lexicographically
    first cap of maximum size.  ``symmetry=True`` fixes point 0 in the cap
    (valid because the collineation group is point-transitive).
    """
    n = space.n
    if n > limit:
        raise SpaceTooLargeForSearch(f"{space} has {n} points (limit {limit})")
    masks = _line_masks(space)
    full = (1 << n) - 1
    above = [full & ~((1 << (p + 1)) - 1) for p in range(n)]
    best: list = [0, ()]
    nodes = 0

    def dfs(cap: list[int], cand: int) -> None:
        nonlocal nodes
        nodes += 1
        if len(cap) > best[0]:
            best[0], best[1] = len(cap), tuple(cap)
        while cand:
            if len(cap) + cand.bit_count() <= best[0]:
                return
            low = cand & -cand
            p = low.bit_length() - 1
            cand ^= low
            blocked = 0
            row = masks[p]
            for c in cap:
                blocked |= row[c]
            cap.append(p)
            dfs(cap, cand & above[p] & ~blocked)
            cap.pop()
            if symmetry and not cap:
                return

    dfs([], full)
    return SearchResult(best[0], best[1], nodes)
