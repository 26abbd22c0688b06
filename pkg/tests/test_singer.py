import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from capgeom import linalg
from capgeom.caps import PointSet, is_cap
from capgeom.errors import DivisibilityViolation, NotADivisor, TargetInfeasible
from capgeom.singer import (
    A1Group,
    FKParams,
    ParityVerdict,
    a1_cap_search,
    a1_group_orbits,
    a1_parity_refutation,
    affine_orbit_labels,
    build_singer,
    fk_conditions,
    fk_orbit_lengths,
    frobenius_matrix,
    matrix_power,
    orbit_cap_filter,
    orbit_union_cap_search,
    singer_labels,
    subgroup_orbits,
)
from capgeom.space import pg

from oracles import collinear_triples, x_period

SPACES = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 3), (2, 5), (3, 4)]


@pytest.mark.parametrize("r,q", SPACES)
def test_singer_cycle_is_regular(r, q):
    S = pg(r, q)
    c = build_singer(S)
    assert sorted(c.exponent.tolist()) == list(range(S.n))
    # the matrix has order exactly n on points: g^n is scalar, no proper divisor is
    F = S.field
    gn = matrix_power(F, c.matrix, S.n)
    assert all(gn[i][j] == (gn[0][0] if i == j else 0) for i in range(S.dim) for j in range(S.dim))
    x = 0
    for _ in range(S.n - 1):
        x = int(c.perm[x])
        assert x != 0


@pytest.mark.parametrize("r,p", [(2, 2), (2, 3), (3, 2), (4, 3), (5, 2)])
def test_singer_polynomial_is_primitive_over_prime_field(r, p):
    c = build_singer(pg(r, p))
    assert x_period(c.polynomial, p) == p ** (r + 1) - 1


def test_named_point_counts():
    assert build_singer(pg(4, 3)).n == 121
    assert build_singer(pg(5, 4)).n == 1365
    fano = build_singer(pg(2, 2))
    assert sorted(len(o) for o in subgroup_orbits(fano, 1).orbits) == [7]


@pytest.mark.parametrize("r,q", SPACES)
def test_subgroup_orbits_partition_and_are_permuted(r, q):
    S = pg(r, q)
    c = build_singer(S)
    for N in (d for d in range(1, S.n + 1) if S.n % d == 0):
        part = subgroup_orbits(c, N)
        assert len(part) == N and set(part.sizes()) == {S.n // N}
        assert sorted(np.concatenate(part.orbits).tolist()) == list(range(S.n))
        # the Singer generator maps every orbit onto an orbit
        for o in part.orbits:
            img = part.index[c.perm[o]]
            assert len(set(img.tolist())) == 1


def test_subgroup_orbits_rejects_non_divisor():
    with pytest.raises(NotADivisor):
        subgroup_orbits(build_singer(pg(2, 4)), 5)


def test_eleven_caps_in_pg43():
    S = pg(4, 3)
    part = subgroup_orbits(build_singer(S), 11)
    assert part.sizes() == [11] * 11
    assert all(orbit_cap_filter(S, part))
    for o in part.orbits[:3]:
        assert not collinear_triples(S, o.tolist())


def test_pg24_baer_orbits_are_not_caps():
    S = pg(2, 4)
    part = subgroup_orbits(build_singer(S), 3)
    verdicts = orbit_cap_filter(S, part)
    oracle = [not collinear_triples(S, o.tolist()) for o in part.orbits]
    assert [bool(v) for v in verdicts] == oracle == [False] * 3


def bruteforce_unions(S, part, target):
    found = []
    sizes = part.sizes()
    for k in range(1, len(part) + 1):
        for combo in itertools.combinations(range(len(part)), k):
            if sum(sizes[i] for i in combo) != target:
                continue
            ids = np.concatenate([part.orbits[i] for i in combo])
            if is_cap(PointSet(S, ids)):
                found.append(tuple(sorted(ids.tolist())))
    return sorted(found)


@pytest.mark.parametrize("r,q,N,target", [
    (2, 4, 7, 6), (3, 2, 5, 6), (3, 2, 3, 5), (3, 3, 4, 10), (3, 4, 5, 17), (2, 3, 13, 4), (3, 2, 15, 5),
    (2, 4, 21, 5),
])
def test_union_search_matches_bruteforce(r, q, N, target):
    S = pg(r, q)
    part = subgroup_orbits(build_singer(S), N)
    got = sorted(tuple(s.members.tolist()) for s in orbit_union_cap_search(S, part, target))
    assert got == bruteforce_unions(S, part, target)


def test_union_search_infeasible_and_full_space():
    S = pg(2, 4)
    c = build_singer(S)
    with pytest.raises(TargetInfeasible):
        orbit_union_cap_search(S, subgroup_orbits(c, 3), 6)
    assert orbit_union_cap_search(S, subgroup_orbits(c, 1), S.n) == []


def test_union_search_returns_a_cap_orbit():
    S = pg(4, 3)
    part = subgroup_orbits(build_singer(S), 11)
    assert len(orbit_union_cap_search(S, part, 11)) == 11


def test_hill_size_unions_exist_in_pg54():
    """Two 39-point Singer orbits of the index-35 subgroup form 78-caps."""
    S = pg(5, 4)
    part = subgroup_orbits(build_singer(S), 35)
    caps = orbit_union_cap_search(S, part, 78)
    assert len(caps) == 70
    for s in caps[:3]:
        assert is_cap(s) and len(s) == 78
    # independent confirmation by rank over all 76076 triples
    assert collinear_triples(S, caps[0].members.tolist()) == []


def test_frobenius_matrix_multiplies_labels_by_p():
    for r, q in [(2, 4), (3, 4), (2, 9), (3, 2)]:
        S = pg(r, q)
        c = build_singer(S)
        labels = singer_labels(c)
        p = S.field.p
        for s in range(1, S.field.h * S.dim):
            M, f = frobenius_matrix(c, s)
            perm = S.transform(M, frobenius=f)
            assert ((labels[perm] - pow(p, s) * labels) % S.n == 0).all()


@given(st.integers(1, 60), st.data())
def test_affine_orbit_labels_match_iteration(N, data):
    units = [u for u in range(1, N + 1) if np.gcd(u, N) == 1]
    mult = data.draw(st.sampled_from(units))
    shift = data.draw(st.integers(0, N - 1))
    labels = affine_orbit_labels(N, mult, shift)
    for j in range(N):
        orbit, x = set(), j
        while x not in orbit:
            orbit.add(x)
            x = (mult * x + shift) % N
        assert labels[j] == min(orbit)


@pytest.mark.parametrize("r,q", [(2, 4), (3, 2), (3, 4)])
def test_a1_group_orbits_are_invariant(r, q):
    S = pg(r, q)
    c = build_singer(S)
    p = S.field.p
    rng = np.random.default_rng(0)
    divs = [d for d in range(1, S.n + 1) if S.n % d == 0]
    for _ in range(10):
        N = int(rng.choice(divs))
        s = int(rng.integers(0, S.field.h * S.dim))
        e = int(rng.integers(0, N))
        part = a1_group_orbits(c, A1Group(N, s, e))
        M, f = frobenius_matrix(c, s)
        gen = linalg.matmul(S.field, matrix_power(S.field, c.matrix, e), M)
        for perm in (S.transform(matrix_power(S.field, c.matrix, N)), S.transform(gen, frobenius=f)):
            assert (part.index[perm] == part.index).all()


def test_a1_search_finds_cotransitive_ovoids():
    res = a1_cap_search(build_singer(pg(3, 2)), 5)
    assert res.cotransitive_candidates == 3 and len(res.cotransitive_caps) == 3
    res = a1_cap_search(build_singer(pg(3, 4)), 17)
    assert len(res.cotransitive_caps) == 5
    for _, cot, ids in res.caps:
        assert is_cap(PointSet(pg(3, 4), ids))


def test_a1_search_negative_cases():
    assert a1_cap_search(build_singer(pg(4, 3)), 11).cotransitive_caps == []
    assert a1_cap_search(build_singer(pg(3, 3)), 10).cotransitive_caps == []


def test_fk_lengths_example():
    params = FKParams(p=2, d=6, s=1, m1=1, v=3)
    assert fk_orbit_lengths(params) == (21, 42)
    assert all(fk_conditions(params).values())
    with pytest.raises(DivisibilityViolation):
        fk_orbit_lengths(FKParams(p=2, d=5, s=1, m1=1, v=3))


@given(st.sampled_from([2, 3, 5]), st.integers(1, 10), st.integers(1, 4), st.sampled_from([3, 5, 7, 11, 13]))
def test_fk_lengths_partition_nonzero_vectors(p, d, m1, v):
    params = FKParams(p=p, d=d, s=1, m1=m1, v=v)
    if (p**d - 1) % params.N:
        with pytest.raises(DivisibilityViolation):
            fk_orbit_lengths(params)
        return
    a, b = fk_orbit_lengths(params)
    assert b == (v - 1) * a
    assert a + b == p**d - 1


def test_parity_refutation():
    assert a1_parity_refutation(2, 12, 4, 78) is ParityVerdict.INCOMPATIBLE
    assert a1_parity_refutation(2, 14, 4, 430) is ParityVerdict.INCOMPATIBLE
    assert a1_parity_refutation(2, 12, 4, 13) is ParityVerdict.NOT_REFUTED
    with pytest.raises(ValueError):
        a1_parity_refutation(3, 4, 3, 10)
