"""Point sets named in the classification: the five cap families and the
non-cap witnesses used to rule out the other rank-3 classes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .caps import CapCheck, PointSet, is_cap
from .errors import BadDimension, BadParameter, NotASquare
from .field import field_of_order, make_field, prime_power, subfield_elements
from .singer import build_singer, subgroup_orbits
from .space import (
    ProjectiveSpace,
    collinear,
    elliptic_form,
    hermitian_form,
    hyperbolic_form,
    isotropic_points,
    normalize,
    pg,
    quadratic_values,
    singular_points,
)

# --- the five families --------------------------------------------------------


def elliptic_quadric(q: int) -> PointSet:
    """Zeros of ``x0 x1 + x2^2 + a x2 x3 + b x3^2`` in PG(3, q): q^2+1 points.

    q = 2 is accepted (the set is still an ovoid) even though the cap bound
    for PG(3, 2) is attained by other sets.
    """
    S = pg(3, q)
    return PointSet(S, singular_points(S, elliptic_form(S.field)))


def hyperbolic_quadric(q: int) -> PointSet:
    """Zeros of ``x0 x1 + x2 x3`` in PG(3, q): (q+1)^2 points, ruled by lines."""
    S = pg(3, q)
    return PointSet(S, singular_points(S, hyperbolic_form(S.field)))


def tits_ovoid(q: int) -> PointSet:
    """The Suzuki-Tits ovoid in PG(3, q), q = 2^h with h odd and at least 3.

    ``{(1, s, t, st + s^(sigma+2) + t^sigma)} + {(0,0,0,1)}`` where
    ``sigma = 2^((h+1)/2)``, so that sigma^2 acts as the Frobenius map.
    """
    p, h = prime_power(q)
    if p != 2 or h % 2 == 0 or h < 3:
        raise BadParameter(f"Tits ovoids need q = 2^h with h odd >= 3, got {q}")
    S = pg(3, q)
    F = S.field
    sigma = 2 ** ((h + 1) // 2)
    pts = [(0, 0, 0, 1)]
    for s, t in itertools.product(range(q), repeat=2):
        z = F.add(F.add(F.mul(s, t), F.pow(s, sigma + 2)), F.pow(t, sigma))
        pts.append((1, s, t, z))
    return PointSet.from_coords(S, pts)


def hyperoval_pg24() -> PointSet:
    """The conic ``y^2 = xz`` of PG(2, 4) plus its nucleus (0,1,0)."""
    S = pg(2, 4)
    F = S.field
    pts = [(1, t, F.mul(t, t)) for t in range(4)] + [(0, 0, 1), (0, 1, 0)]
    return PointSet.from_coords(S, pts)


def hyperplane_complement(r: int) -> PointSet:
    """The 2^r points of PG(r, 2) off the hyperplane x0 = 0."""
    if r < 2:
        raise BadDimension("need r >= 2")
    S = pg(r, 2)
    return PointSet(S, np.flatnonzero(S.points[:, 0] != 0))


def cap11_pg43() -> PointSet:
    """Orbit of point 0 under the Singer subgroup of order 11 in PG(4, 3)."""
    S = pg(4, 3)
    part = subgroup_orbits(build_singer(S), 11)
    return PointSet(S, part.orbits[int(part.index[0])])


# --- witnesses for the infinite classes ----------------------------------------


def direct_sum_k1(r: int, q: int) -> PointSet:
    """Points of two complementary coordinate subspaces of dimension (r+1)/2."""
    if (r + 1) % 2 or r < 3:
        raise BadDimension("need r + 1 = 2t with t >= 2")
    S = pg(r, q)
    t = (r + 1) // 2
    low = (S.points[:, t:] == 0).all(axis=1)
    high = (S.points[:, :t] == 0).all(axis=1)
    return PointSet(S, np.flatnonzero(low | high))


def tensor_k1(q: int, b: int) -> PointSet:
    """Pure tensors ``v1 (x) v2`` with dim V1 = 2, dim V2 = b, in PG(2b-1, q)."""
    if b < 2:
        raise BadDimension("need b >= 2")
    S = pg(2 * b - 1, q)
    F = S.field
    L, W = pg(1, q), pg(b - 1, q)
    pts = []
    for v1 in L.points:
        for v2 in W.points:
            pts.append([F.mul(int(x), int(y)) for x in v1 for y in v2])
    return PointSet(S, S.ids_of(np.array(pts)))


def tensor_line_witness(q: int, b: int) -> tuple[int, int, int]:
    """Three points of the line ``V1 (x) e_0`` (all pure tensors)."""
    S = pg(2 * b - 1, q)
    F = S.field

    def tensor(v1, v2):
        return [F.mul(x, y) for x in v1 for y in v2]

    e0 = [1] + [0] * (b - 1)
    a = S.id_of(tensor([1, 0], e0))
    c = S.id_of(tensor([0, 1], e0))
    m = S.id_of(tensor([1, 1], e0))
    return tuple(sorted((a, c, m)))


@dataclass(frozen=True)
class SubgeometryWitness:
    space: ProjectiveSpace
    k1: PointSet
    k1_triple: tuple[int, int, int]
    k2_triple: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    sigma: int
    k2_triple_in_k2: bool
    k2_triple_collinear: bool


def subgeometry_witnesses(q: int, s: int, a: int) -> SubgeometryWitness:
    """The subgeometry PG(a-1, s) inside PG(a-1, q), q = s^2, and two collinear triples."""
    if s * s != q:
        raise NotASquare(f"{q} is not the square of {s}")
    if a < 3:
        raise BadDimension("need a >= 3")
    S = pg(a - 1, q)
    F = S.field
    sub = subfield_elements(F, s)
    in_sub = np.isin(S.points, sub).all(axis=1)
    k1 = PointSet(S, np.flatnonzero(in_sub))
    check = is_cap(k1)
    assert not check.is_cap
    sigma = next(x for x in range(q) if x not in sub)
    e = [[int(i == j) for j in range(a)] for i in range(a)]
    u = [F.add(e[0][j], F.mul(sigma, e[1][j])) for j in range(a)]
    v = [F.add(e[1][j], F.mul(sigma, e[2][j])) for j in range(a)]
    w = [F.add(x, y) for x, y in zip(u, v)]
    triple = tuple(normalize(F, x) for x in (u, v, w))
    in_k2 = all(not k1.mask[S.id_of(x)] for x in triple)
    return SubgeometryWitness(
        S, k1, check.witness, triple, sigma, in_k2, collinear(F, *triple)
    )


@dataclass(frozen=True)
class HermitianReport:
    space: ProjectiveSpace
    k1: PointSet
    line_meet_counts: dict[int, int]  # |line & K1| -> number of lines
    k1_witness: tuple[int, int, int] | None
    tangent_line: tuple[int, ...]  # meets K1 once
    tangent_k2_points: int


def hermitian_witnesses(qq: int, a: int = 3) -> HermitianReport:
    """Isotropic points of ``sum x_i^(q'+1)`` in PG(a-1, q'^2) and line statistics."""
    S = pg(a - 1, qq * qq)
    k1 = PointSet(S, isotropic_points(S, hermitian_form(S.field, a)))
    meets = k1.mask[S.lines()].sum(axis=1)
    counts = {int(k): int(v) for k, v in zip(*np.unique(meets, return_counts=True))}
    tangent = S.lines()[int(np.flatnonzero(meets == 1)[0])]
    return HermitianReport(
        S,
        k1,
        counts,
        is_cap(k1).witness,
        tuple(int(x) for x in tangent),
        int((~k1.mask[tangent]).sum()),
    )


@dataclass(frozen=True)
class OrthogonalReport:
    space: ProjectiveSpace
    kind: str
    k1: PointSet
    k1_witness: tuple[int, int, int] | None
    anisotropic_line: tuple[int, ...] | None


def orthogonal_witnesses(q: int, dim: int = 4, kind: str = "hyperbolic") -> OrthogonalReport:
    """Singular points of the fixed form and the first line with no singular point."""
    S = pg(dim - 1, q)
    form = hyperbolic_form(S.field, dim) if kind == "hyperbolic" else elliptic_form(S.field, dim)
    k1 = PointSet(S, singular_points(S, form))
    meets = k1.mask[S.lines()].sum(axis=1)
    idx = np.flatnonzero(meets == 0)
    line = tuple(int(x) for x in S.lines()[idx[0]]) if idx.size else None
    return OrthogonalReport(S, kind, k1, is_cap(k1).witness, line)


# --- extraspecial and exceptional witnesses --------------------------------------

# 2x2 generators over GF(3): D8 = <swap, diag(1,-1)>, Q8 = <A, B> in SL(2,3)
_D8 = ([[0, 1], [1, 0]], [[1, 0], [0, 2]])
_Q8 = ([[0, 2], [1, 0]], [[1, 1], [1, 2]])


def kron(F, A, B) -> list[list[int]]:
    return [
        [F.mul(A[i][j], B[k][l]) for j in range(len(A[0])) for l in range(len(B[0]))]
        for i in range(len(A))
        for k in range(len(B))
    ]


def extraspecial_generators() -> list[list[list[int]]]:
    """Generators of D8 o Q8 in GL(4, 3) as Kronecker products."""
    F = make_field(3)
    I2 = linalg.identity(2)
    return [kron(F, g, I2) for g in _D8] + [kron(F, I2, g) for g in _Q8]


def vector_orbits(F, gens, dim: int) -> list[list[tuple[int, ...]]]:
    """Orbits of a matrix group on the nonzero vectors of V(dim, q)."""
    seen: set[tuple[int, ...]] = set()
    orbits = []
    for v in itertools.product(range(F.q), repeat=dim):
        if not any(v) or v in seen:
            continue
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = tuple(linalg.matvec(F, g, x))
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def group_order(F, gens) -> int:
    """Order of a small matrix group by closure."""
    dim = len(gens[0])
    start = tuple(map(tuple, linalg.identity(dim)))
    elems = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple(map(tuple, linalg.matmul(F, g, x)))
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return len(elems)


@dataclass(frozen=True)
class ExtraspecialReport:
    group_order: int
    orbit_sizes: list[int]
    projective_images: list[PointSet]
    witnesses: list[tuple[int, int, int] | None]


def extraspecial_orbit16() -> ExtraspecialReport:
    """Vector orbits of D8 o Q8 on V(4, 3) and cap tests on their point images."""
    F = make_field(3)
    gens = extraspecial_generators()
    orbits = vector_orbits(F, gens, 4)
    S = pg(3, 3)
    images = [PointSet(S, S.ids_of(np.array(o))) for o in orbits]
    return ExtraspecialReport(
        group_order(F, gens),
        [len(o) for o in orbits],
        images,
        [is_cap(img).witness for img in images],
    )


@dataclass(frozen=True)
class TripleReport:
    points: tuple[tuple[int, ...], ...]
    collinear: bool
    third_is_sum: bool
    normalized_third: tuple[int, ...]


def psu42_triple() -> TripleReport:
    """(1;0,0,0), (1;0,1,6), (2;0,1,6) over GF(7)."""
    F = make_field(7)
    a, b, c = (1, 0, 0, 0), (1, 0, 1, 6), (2, 0, 1, 6)
    total = tuple(F.add(x, y) for x, y in zip(a, b))
    return TripleReport((a, b, c), collinear(F, a, b, c), total == c, normalize(F, c))


# --- registry for the command line --------------------------------------------


@dataclass(frozen=True)
class ConstructionDescriptor:
    name: str
    params: tuple[str, ...]
    constraint: str
    size: Callable[..., int]
    expected_cap: bool
    role: str  # where the set appears in the classification
    build: Callable[..., PointSet]


CONSTRUCTIONS: dict[str, ConstructionDescriptor] = {
    d.name: d
    for d in [
        ConstructionDescriptor(
            "elliptic-quadric", ("q",), "q prime power", lambda q: q * q + 1, True,
            "classification: elliptic quadric", elliptic_quadric,
        ),
        ConstructionDescriptor(
            "tits-ovoid", ("q",), "q = 2^h, h odd >= 3", lambda q: q * q + 1, True,
            "classification: Suzuki-Tits ovoid", tits_ovoid,
        ),
        ConstructionDescriptor(
            "hyperoval", (), "PG(2,4)", lambda: 6, True, "classification: hyperoval", hyperoval_pg24,
        ),
        ConstructionDescriptor(
            "cap11", (), "PG(4,3)", lambda: 11, True, "classification: 11-cap", cap11_pg43,
        ),
        ConstructionDescriptor(
            "hyperplane-complement", ("r",), "r >= 2", lambda r: 2**r, True,
            "classification: hyperplane complement", hyperplane_complement,
        ),
        ConstructionDescriptor(
            "hyperbolic-quadric", ("q",), "q prime power", lambda q: (q + 1) ** 2, False,
            "class A7", hyperbolic_quadric,
        ),
        ConstructionDescriptor(
            "direct-sum", ("r", "q"), "r + 1 = 2t, t >= 2",
            lambda r, q: 2 * (q ** ((r + 1) // 2) - 1) // (q - 1), False, "class A2", direct_sum_k1,
        ),
        ConstructionDescriptor(
            "tensor", ("q", "b"), "b >= 2", lambda q, b: (q + 1) * (q**b - 1) // (q - 1), False,
            "class A3", tensor_k1,
        ),
    ]
}


def construct(name: str, **params: int) -> PointSet:
    desc = CONSTRUCTIONS[name]
    args = [params[p] for p in desc.params]
    s = desc.build(*args)
    assert len(s) == desc.size(*args), f"{name}: size {len(s)} != {desc.size(*args)}"
    return s
