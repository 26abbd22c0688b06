"""Acceptance gate: one test per criterion, each logging a PASS/FAIL line.

The lines are printed as the tests run (visible with ``-s``) and again in the
terminal summary under "acceptance criteria".
"""

import contextlib
import time
from fractions import Fraction

import numpy as np
import pytest
import sympy

from capgeom.caps import (
    PointSet,
    a8_orbit_sizes,
    a10_orbit_sizes,
    cap_size_bound,
    chord_profile,
    complete_cap_search,
    expected_chord_number,
    is_cap,
    is_complete,
)
from capgeom.constructions import (
    cap11_pg43,
    elliptic_quadric,
    extraspecial_orbit16,
    hyperoval_pg24,
    hyperplane_complement,
    psu42_triple,
    subgeometry_witnesses,
    tits_ovoid,
)
from capgeom.errors import SearchLimitExceeded, TargetInfeasible
from capgeom.groups import setwise_stabilizer_bruteforce
from capgeom.singer import (
    a1_cap_search,
    a1_parity_refutation,
    build_singer,
    orbit_cap_filter,
    orbit_union_cap_search,
    subgroup_orbits,
)
from capgeom.space import pg

from oracles import random_cap, rank_mod

UNION_NODES = 200_000  # node budget per divisor for the literal orbit-union scan


@pytest.fixture
def criterion(acceptance_log):
    @contextlib.contextmanager
    def record(key, title):
        try:
            yield
        except BaseException as exc:
            detail = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
            acceptance_log[key] = ("FAIL", title, detail[:160])
            print(f"\ncriterion {key}: FAIL  {title}  ({detail[:160]})")
            raise
        acceptance_log[key] = ("PASS", title, "")
        print(f"\ncriterion {key}: PASS  {title}")

    return record


def _constructions():
    sets = [elliptic_quadric(q) for q in (3, 4, 5, 7, 8, 9)]
    sets += [tits_ovoid(8), hyperoval_pg24(), cap11_pg43()]
    sets += [hyperplane_complement(r) for r in range(2, 7)]
    return sets


def test_criterion_1_constructions(criterion):
    with criterion("1", "constructions have the stated sizes and are caps"):
        for q in (3, 4, 5, 7, 8, 9):
            s = elliptic_quadric(q)
            assert len(s) == q * q + 1, f"elliptic q={q}: {len(s)} points"
            assert is_cap(s) and is_complete(s), f"elliptic q={q} not a complete cap"
        t = tits_ovoid(8)
        assert len(t) == 65 and is_cap(t)
        assert len(hyperoval_pg24()) == 6
        for r in range(2, 7):
            assert len(hyperplane_complement(r)) == 2**r
        S = pg(4, 3)
        part = subgroup_orbits(build_singer(S), 11)
        assert part.sizes() == [11] * 11
        assert all(orbit_cap_filter(S, part)), "a Singer orbit of size 11 is not a cap"


def test_criterion_2_chord_numbers(criterion):
    with criterion("2", "chord profile constant and equal to k(k-1)(q-1)/2m; chord sums"):
        for s in _constructions():
            k, m, q = len(s), s.space.n - len(s), s.space.q
            c = Fraction(k * (k - 1) * (q - 1), 2 * m)
            prof = chord_profile(s)
            assert c.denominator == 1, f"{s.space} k={k}: {c}"
            assert prof.is_constant and prof.min == c, f"{s.space} k={k}: {prof.min}..{prof.max} vs {c}"
            assert prof.total() == k * (k - 1) * (q - 1) // 2
        rng = np.random.default_rng(20261017)
        for r, q in [(2, 5), (2, 7), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2)]:
            S = pg(r, q)
            for _ in range(5):
                s = random_cap(S, rng)
                k, qq = len(s), S.q
                assert chord_profile(s).total() == k * (k - 1) * (qq - 1) // 2


def test_criterion_3_refutation_arithmetic(criterion):
    with criterion("3", "refutation arithmetic reproduced as exact rationals"):
        assert expected_chord_number(6, 9, 2) == Fraction(5, 3)
        for q in range(2, 10):
            for sizes, closed in (
                (a8_orbit_sizes, Fraction((q**2 + 1) * (q**3 + q + 1), 2 * q)),
                (a10_orbit_sizes, Fraction((q**3 + 1) * (q**5 + q**2 + 1), 2 * q**2)),
            ):
                k, m = sizes(q)
                c = expected_chord_number(k, m, q)
                assert c == closed, f"q={q}: {c} != {closed}"
                assert c.denominator != 1, f"q={q}: {c} is an integer"
        c = Fraction(720 * 719 * 2, 2 * 2560)
        assert expected_chord_number(720, 2560, 3) == c and c.denominator != 1
        rows = [(120, 135, 2), (45, 210, 2), (102, 153, 2), (276, 1771, 2), (759, 1288, 2),
                (65520, 465920, 2), (65520, 465920, 3)]
        for k, m, q in rows:
            c = expected_chord_number(k, m, q)
            assert c == Fraction(k * (k - 1) * (q - 1), 2 * m)
            assert c.denominator != 1, f"k={k}, m={m}, q={q}: {c} is an integer"


def test_criterion_4_collinear_witnesses(criterion):
    with criterion("4", "PSU(4,2) triple, A4 triples and the five orbits of 16 are witnesses"):
        t = psu42_triple()
        from capgeom.field import make_field
        assert rank_mod(list(t.points), make_field(7)) == 2
        for q, s in ((4, 2), (9, 3)):
            w = subgeometry_witnesses(q, s, 4 if q == 4 else 3)
            F = w.space.field
            assert all(x in w.k1 for x in w.k1_triple)
            assert rank_mod([w.space.point(x) for x in w.k1_triple], F) == 2
            assert w.k2_triple_in_k2 and rank_mod(list(w.k2_triple), F) == 2
        rep = extraspecial_orbit16()
        assert rep.orbit_sizes == [16] * 5
        assert all(not is_cap(img) for img in rep.projective_images)


def test_criterion_5_bounds(criterion):
    with criterion("5", "exhaustive search gives 4, 4, 6, 8, 10 within 60 s each"):
        for (r, q), want in zip([(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)], [4, 4, 6, 8, 10]):
            t0 = time.perf_counter()
            res = complete_cap_search(pg(r, q))
            dt = time.perf_counter() - t0
            b = cap_size_bound(r, q)
            assert res.max_size == want == b.value and b.exact, f"PG({r},{q}): {res.max_size}"
            assert is_cap(PointSet(pg(r, q), res.example))
            assert dt <= 60, f"PG({r},{q}) took {dt:.1f}s"


def test_criterion_6_transitivity(criterion):
    with criterion("6", "brute-force stabilizers certify transitivity within 5 min"):
        t0 = time.perf_counter()
        for s in (hyperoval_pg24(), hyperplane_complement(2), hyperplane_complement(3)):
            cert = setwise_stabilizer_bruteforce(s.space, s)
            assert cert.transitive_on_set and cert.transitive_on_complement, str(s.space)
        cert = setwise_stabilizer_bruteforce(pg(3, 3), elliptic_quadric(3))
        assert cert.transitive_on_complement
        print(f"\nelliptic quadric PG(3,3): stabilizer order {cert.order}, "
              f"transitive on the quadric: {cert.transitive_on_set}")
        assert time.perf_counter() - t0 <= 300


def test_criterion_7_hill_refutation(criterion):
    with criterion("7", "no Singer-orbit union is a 78-cap of PG(5,4) or a 430-cap of PG(6,4)"):
        t0 = time.perf_counter()
        found, undecided = {}, []
        for r, q, k in ((5, 4, 78), (6, 4, 430)):
            d = 2 * (r + 1)
            assert a1_parity_refutation(2, d, q, k).value == "incompatible"
            S = pg(r, q)
            cycle = build_singer(S)
            for N in sympy.divisors(cycle.n):
                try:
                    caps = orbit_union_cap_search(S, subgroup_orbits(cycle, N), k, UNION_NODES)
                except TargetInfeasible:
                    continue
                except SearchLimitExceeded:
                    undecided.append(f"PG({r},4) N={N}")
                    continue
                if caps:
                    found[f"PG({r},4) N={N}"] = len(caps)
        dt = time.perf_counter() - t0
        assert not found, f"cap unions found {found}; undecided {undecided}"
        assert not undecided, f"undecided divisors {undecided}"
        assert dt <= 300, f"scan took {dt:.0f}s"


def test_criterion_7_within_a1_groups(criterion):
    with criterion("7-a1", "no A1-group orbit union is a co-transitive 78- or 430-cap"):
        for r, k in ((5, 78), (6, 430)):
            res = a1_cap_search(build_singer(pg(r, 4)), k)
            assert res.cotransitive_caps == [], f"PG({r},4): {len(res.cotransitive_caps)}"


def test_criterion_8_determinism(criterion, verify_runs):
    with criterion("8", "verify-paper --json byte-identical across runs and worker counts"):
        outs = {name: text for name, (code, text) in verify_runs.items()}
        assert outs["serial-1"] == outs["serial-2"], "two serial runs differ"
        assert outs["serial-1"] == outs["workers-2"], "serial and two-worker runs differ"
        assert outs["serial-1"].startswith("{")
