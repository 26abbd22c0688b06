"""Collineations, point orbits and brute-force setwise stabilizers in PGammaL(r+1, q)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .caps import PointSet, chord_profile, expected_chord_number
from .errors import DimensionMismatch, GroupTooLarge
from .singer import OrbitPartition, partition_from_labels
from .space import ProjectiveSpace, normalize

GROUP_LIMIT = 20_000_000


@dataclass(frozen=True)
class Collineation:
    """``x -> matrix . x^(p^frobenius_power)`` on projective points."""

    matrix: tuple[tuple[int, ...], ...]
    frobenius_power: int = 0

    @classmethod
    def of(cls, matrix, frobenius_power: int = 0) -> "Collineation":
        return cls(tuple(tuple(int(v) for v in row) for row in matrix), frobenius_power)

    @classmethod
    def identity(cls, dim: int) -> "Collineation":
        return cls.of(linalg.identity(dim))

    @property
    def dim(self) -> int:
        return len(self.matrix)


def apply(g: Collineation, x: Sequence[int], space: ProjectiveSpace) -> tuple[int, ...]:
    """Image of one point (coordinates in, canonical coordinates out)."""
    if len(x) != g.dim or g.dim != space.dim:
        raise DimensionMismatch("collineation and point dimensions differ")
    F = space.field
    y = [F.frobenius(a, g.frobenius_power) for a in x] if g.frobenius_power else list(x)
    return normalize(F, linalg.matvec(F, g.matrix, y))


def point_permutation(g: Collineation, space: ProjectiveSpace) -> np.ndarray:
    if g.dim != space.dim:
        raise DimensionMismatch("collineation and space dimensions differ")
    perm = space.transform(g.matrix, frobenius=g.frobenius_power)
    if (perm < 0).any():
        raise ValueError("matrix is singular")
    return perm


def orbits_of_permutations(perms: Iterable[np.ndarray], n: int) -> OrbitPartition:
    """Orbits of the group generated by point permutations."""
    perms = list(perms)
    labels = np.arange(n)
    while True:
        new = labels
        for perm in perms:
            new = np.minimum(new, new[perm])
        if np.array_equal(new, labels):
            break
        labels = new
    return partition_from_labels(labels)


@dataclass
class OrbitResult:
    partition: OrbitPartition
    generators: list[Collineation]
    group_order: int | None = None

    @property
    def orbits(self) -> list[np.ndarray]:
        return self.partition.orbits


def point_orbits(gens: Sequence[Collineation], space: ProjectiveSpace) -> OrbitResult:
    """Orbit partition of PG(r, q) under the group generated by ``gens``."""
    perms = [point_permutation(g, space) for g in gens]
    return OrbitResult(orbits_of_permutations(perms, space.n), list(gens))


def pgl_order(n: int, q: int) -> int:
    """|PGL(n, q)|."""
    if n < 2:
        raise ValueError("n must be >= 2")
    total = 1
    for i in range(n):
        total *= q**n - q**i
    return total // (q - 1)


def pgammal_order(n: int, q: int) -> int:
    from .field import prime_power

    return pgl_order(n, q) * prime_power(q)[1]


@dataclass
class StabilizerCertificate:
    order: int
    transitive_on_set: bool
    transitive_on_complement: bool
    set_orbit_sizes: list[int]
    complement_orbit_sizes: list[int]
    linear_order: int  # elements with trivial field automorphism
    elements: list[Collineation]

    @property
    def transitive_cotransitive(self) -> bool:
        return self.transitive_on_set and self.transitive_on_complement


def _frame(space: ProjectiveSpace, inside: np.ndarray) -> list[int]:
    """r+2 points in general position, taken from ``inside`` whenever possible."""
    F = space.field
    inside_ids = [int(x) for x in np.flatnonzero(inside)]
    outside_ids = [int(x) for x in np.flatnonzero(~inside)]
    basis: list[int] = []
    for pid in inside_ids + outside_ids:
        if len(basis) == space.dim:
            break
        if linalg.rank(F, [space.point(b) for b in basis + [pid]]) == len(basis) + 1:
            basis.append(pid)
    B = linalg.transpose([space.point(b) for b in basis])
    Binv = linalg.inverse(F, B)
    for pid in inside_ids + outside_ids:
        if pid in basis:
            continue
        if all(linalg.matvec(F, Binv, space.point(pid))):
            return basis + [pid]
    raise AssertionError("no unit point")  # pragma: no cover


def _frame_matrix(F, pts: list[tuple[int, ...]]) -> list[list[int]]:
    """Matrix sending e_i to multiples of pts[i] and (1,...,1) to pts[-1]."""
    basis = linalg.transpose(pts[:-1])
    coeffs = linalg.matvec(F, linalg.inverse(F, basis), pts[-1])
    return [[F.mul(basis[i][j], coeffs[j]) for j in range(len(coeffs))] for i in range(len(basis))]


def setwise_stabilizer_bruteforce(
    space: ProjectiveSpace, s: PointSet, limit: int = GROUP_LIMIT
) -> StabilizerCertificate:
    """All collineations of PGammaL(r+1, q) that fix ``s`` setwise.

    Every collineation is determined by the image of a frame (r+2 points in
    general position).  For each field automorphism the frame is chosen
    inside the pre-image of ``s`` as far as possible, and each frame point is
    sent through every admissible image (members of ``s`` for frame points
    in the set, non-members otherwise).  Every stabilizer element arises
    exactly once, so the enumeration is exhaustive.
    """
    F = space.field
    q, dim = space.q, space.dim
    if pgl_order(dim, q) * F.h > limit:
        raise GroupTooLarge(f"|PGammaL({dim},{q})| exceeds {limit}")
    target = s.mask
    in_ids = [int(x) for x in s.members]
    out_ids = [int(x) for x in s.complement()]
    frame = _frame(space, target)
    choices = [in_ids if target[pid] else out_ids for pid in frame]
    elements: list[Collineation] = []
    perms: list[np.ndarray] = []
    for f in range(F.h):
        src_pts = [tuple(F.frobenius(a, f) for a in space.point(pid)) for pid in frame]
        Ainv = linalg.inverse(F, _frame_matrix(F, src_pts))
        chosen: list[int] = []

        def extend(depth: int) -> None:
            if depth == dim + 1:
                pts = [space.point(c) for c in chosen]
                basis_inv = linalg.inverse(F, linalg.transpose(pts[:-1]))
                if not all(linalg.matvec(F, basis_inv, pts[-1])):
                    return
                M = linalg.matmul(F, _frame_matrix(F, pts), Ainv)
                perm = space.transform(M, frobenius=f)
                if np.array_equal(target[perm], target):
                    elements.append(Collineation.of(M, f))
                    perms.append(perm)
                return
            for c in choices[depth]:
                if c in chosen:
                    continue
                if depth < dim:
                    rows = [space.point(x) for x in chosen + [c]]
                    if linalg.rank(F, rows) < len(rows):
                        continue
                chosen.append(c)
                extend(depth + 1)
                chosen.pop()

        extend(0)
    part = orbits_of_permutations(perms, space.n)
    set_sizes = sorted(len(o) for o in part.orbits if target[o[0]])
    comp_sizes = sorted(len(o) for o in part.orbits if not target[o[0]])
    return StabilizerCertificate(
        order=len(elements),
        transitive_on_set=len(set_sizes) <= 1,
        transitive_on_complement=len(comp_sizes) <= 1,
        set_orbit_sizes=set_sizes,
        complement_orbit_sizes=comp_sizes,
        linear_order=sum(1 for g in elements if g.frobenius_power == 0),
        elements=elements,
    )


@dataclass(frozen=True)
class NecessaryVerdict:
    passes: bool
    constant: bool
    value: int | None
    expected: str


def cotransitivity_necessary(s: PointSet) -> NecessaryVerdict:
    """Constant chord profile equal to the integer ``k(k-1)(q-1)/2m``.

    Necessary, not sufficient, for co-transitivity.
    """
    prof = chord_profile(s)
    k, m, q = len(s), s.space.n - len(s), s.space.q
    expected = expected_chord_number(k, m, q)
    ok = prof.is_constant and expected.denominator == 1 and prof.min == expected
    return NecessaryVerdict(ok, prof.is_constant, prof.min if prof.is_constant else None, str(expected))
