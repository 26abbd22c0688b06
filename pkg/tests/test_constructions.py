import numpy as np
import pytest

from capgeom.caps import PointSet, chord_profile, expected_chord_number, is_cap, is_complete
from capgeom.constructions import (
    CONSTRUCTIONS,
    cap11_pg43,
    construct,
    direct_sum_k1,
    elliptic_quadric,
    extraspecial_orbit16,
    hermitian_witnesses,
    hyperbolic_quadric,
    hyperoval_pg24,
    hyperplane_complement,
    orthogonal_witnesses,
    psu42_triple,
    subgeometry_witnesses,
    tensor_k1,
    tensor_line_witness,
    tits_ovoid,
)
from capgeom.errors import BadDimension, BadParameter, NotASquare
from capgeom.space import pg

from oracles import collinear_triples, rank_mod


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_elliptic_quadric(q):
    s = elliptic_quadric(q)
    assert len(s) == q * q + 1
    assert is_cap(s) and is_complete(s)
    prof = chord_profile(s)
    assert prof.is_constant and prof.min == expected_chord_number(len(s), s.space.n - len(s), q)


def test_small_elliptic_quadric_has_no_collinear_triple_by_rank():
    s = elliptic_quadric(3)
    assert collinear_triples(s.space, s.members.tolist()) == []


def test_tits_ovoid():
    s = tits_ovoid(8)
    assert len(s) == 65 and is_cap(s) and is_complete(s)
    assert chord_profile(s).min == chord_profile(s).max == 28
    for q in (4, 16, 9, 2):
        with pytest.raises(BadParameter):
            tits_ovoid(q)


def test_tits_and_elliptic_ovoids_differ_in_pg38():
    assert not np.array_equal(tits_ovoid(8).members, elliptic_quadric(8).members)


def test_hyperoval():
    s = hyperoval_pg24()
    assert len(s) == 6 and is_cap(s) and is_complete(s)
    assert collinear_triples(s.space, s.members.tolist()) == []
    assert chord_profile(s).min == chord_profile(s).max == 3


@pytest.mark.parametrize("r", range(2, 7))
def test_hyperplane_complement(r):
    s = hyperplane_complement(r)
    assert len(s) == 2**r and is_cap(s) and is_complete(s)
    assert chord_profile(s).min == chord_profile(s).max == 2 ** (r - 1)
    with pytest.raises(BadDimension):
        hyperplane_complement(1)


def test_cap11():
    s = cap11_pg43()
    assert len(s) == 11 and is_cap(s) and is_complete(s)
    assert 0 in s
    assert chord_profile(s).min == chord_profile(s).max == 1


@pytest.mark.parametrize("r,q", [(3, 2), (3, 3), (5, 2)])
def test_direct_sum_contains_lines(r, q):
    s = direct_sum_k1(r, q)
    t = (r + 1) // 2
    assert len(s) == 2 * (q**t - 1) // (q - 1)
    w = is_cap(s).witness
    assert w is not None
    assert rank_mod([s.space.point(x) for x in w], s.space.field) == 2
    with pytest.raises(BadDimension):
        direct_sum_k1(4, q)


def test_tensor_sets():
    s = tensor_k1(2, 2)
    assert len(s) == 9 and len(s.complement()) == 6
    assert not is_cap(s)
    line = tensor_line_witness(2, 2)
    assert all(x in s for x in line)
    assert rank_mod([s.space.point(x) for x in line], s.space.field) == 2
    assert expected_chord_number(6, 9, 2).numerator == 5
    assert len(tensor_k1(3, 2)) == 16
    assert len(tensor_k1(2, 3)) == 21


@pytest.mark.parametrize("q,s,a", [(4, 2, 4), (9, 3, 3), (4, 2, 3)])
def test_subgeometry_witnesses(q, s, a):
    w = subgeometry_witnesses(q, s, a)
    assert len(w.k1) == (s**a - 1) // (s - 1)
    F = w.space.field
    assert rank_mod([w.space.point(x) for x in w.k1_triple], F) == 2
    assert w.k2_triple_in_k2 and w.k2_triple_collinear
    assert rank_mod(list(w.k2_triple), F) == 2
    with pytest.raises(NotASquare):
        subgeometry_witnesses(8, 2, 3)


def test_hermitian_line_counts():
    h = hermitian_witnesses(2)
    assert len(h.k1) == 9
    assert h.line_meet_counts == {1: 9, 3: 12}
    assert h.k1_witness is not None
    assert h.tangent_k2_points == 4


@pytest.mark.parametrize("q", [2, 3, 4])
def test_orthogonal_witnesses(q):
    hyp = hyperbolic_quadric(q)
    assert len(hyp) == (q + 1) ** 2 and not is_cap(hyp)
    for kind in ("elliptic", "hyperbolic"):
        w = orthogonal_witnesses(q, 4, kind)
        line = w.anisotropic_line
        assert line is not None
        assert not any(x in w.k1 for x in line)


def test_v82_quadric():
    w = orthogonal_witnesses(2, 8, "hyperbolic")
    assert len(w.k1) == 135 and w.space.n - len(w.k1) == 120
    assert w.k1_witness is not None and w.anisotropic_line is not None


def test_extraspecial_orbits():
    rep = extraspecial_orbit16()
    assert rep.group_order == 32
    assert rep.orbit_sizes == [16] * 5
    assert [len(x) for x in rep.projective_images] == [8] * 5
    for img, w in zip(rep.projective_images, rep.witnesses):
        assert w is not None
        assert w in collinear_triples(img.space, img.members.tolist())


def test_psu_triple():
    t = psu42_triple()
    assert t.collinear and t.third_is_sum
    assert t.normalized_third == (1, 0, 4, 3)


@pytest.mark.parametrize("name", sorted(CONSTRUCTIONS))
def test_registry_sizes_and_verdicts(name):
    desc = CONSTRUCTIONS[name]
    params = {"q": 3, "r": 3, "b": 2}
    if name == "tits-ovoid":
        params["q"] = 8
    s = construct(name, **{p: params[p] for p in desc.params})
    assert len(s) == desc.size(*[params[p] for p in desc.params])
    assert bool(is_cap(s)) == desc.expected_cap
