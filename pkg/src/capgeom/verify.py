"""Re-run every finite computation of the classification as a list of checks.

Each check records what was computed, what was expected and where the claim
comes from.  The report is deterministic: JSON output is byte-identical for
the same limits and version, whatever the worker count.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np
import sympy

from . import __version__, linalg
from .caps import (
    SEARCH_LIMIT,
    PointSet,
    a8_orbit_sizes,
    a10_orbit_sizes,
    cap_size_bound,
    chord_formula_a8,
    chord_formula_a10,
    chord_profile,
    complement_majority_check,
    complete_cap_search,
    expected_chord_number,
    is_cap,
    is_complete,
)
from .constructions import (
    cap11_pg43,
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
from .errors import CapGeomError, GroupTooLarge, SearchLimitExceeded, TargetInfeasible
from .field import make_field
from .groups import GROUP_LIMIT, cotransitivity_necessary, pgammal_order, setwise_stabilizer_bruteforce
from .singer import (
    FKParams,
    a1_cap_search,
    a1_parity_refutation,
    build_singer,
    fk_conditions,
    fk_orbit_lengths,
    orbit_cap_filter,
    orbit_union_cap_search,
    subgroup_orbits,
)
from .space import pg

SCHEMA_VERSION = 1
ENV_PREFIX = "CAPGEOM_"


@dataclass(frozen=True)
class Limits:
    group_limit: int = GROUP_LIMIT  # largest |PGammaL| enumerated by brute force
    search_points: int = SEARCH_LIMIT  # largest space for exhaustive cap search
    union_nodes: int = 20_000  # node budget per divisor in the orbit-union search

    @classmethod
    def from_env(cls, **overrides) -> "Limits":
        vals = {}
        for name in ("group_limit", "search_points", "union_nodes"):
            env = os.environ.get(ENV_PREFIX + name.upper())
            if env is not None:
                vals[name] = int(env)
        vals.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**vals)


class InfrastructureError(CapGeomError):
    """Limits too small for a check that has no fallback."""


@dataclass
class CaseCheck:
    id: str
    location: str
    inputs: dict[str, Any]
    expected: dict[str, Any]
    basis: str  # "stated" (printed claim), "computed" (independent oracle), "identity"
    observed: dict[str, Any]
    recorded: dict[str, Any] = field(default_factory=dict)
    note: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if self.observed == self.expected else "fail"

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["verdict"] = self.verdict
        return d


@dataclass
class VerificationReport:
    version: str
    limits: Limits
    checks: list[CaseCheck]

    @property
    def summary(self) -> dict[str, int]:
        failed = sum(c.verdict == "fail" for c in self.checks)
        return {"total": len(self.checks), "pass": len(self.checks) - failed, "fail": failed}

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "tool": "capgeom",
            "version": self.version,
            "schema": SCHEMA_VERSION,
            "limits": asdict(self.limits),
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"capgeom {self.version} verification report"]
        for c in self.checks:
            lines.append(f"{c.verdict.upper():4}  {c.id:28} {c.location}")
            if c.verdict == "fail":
                lines.append(f"      expected {c.expected}")
                lines.append(f"      observed {c.observed}")
            if c.note:
                lines.append(f"      note: {c.note}")
        s = self.summary
        lines.append(f"{s['pass']}/{s['total']} checks passed, {s['fail']} failed")
        return "\n".join(lines) + "\n"


def _frac(x: Fraction) -> str:
    return str(x)


def _collinear_in(s: PointSet, triple) -> bool:
    if triple is None:
        return False
    F = s.space.field
    return all(t in s for t in triple) and linalg.rank(F, [s.space.point(t) for t in triple]) == 2


# --- group 1: the five families ---------------------------------------------------


def _family_check(cid: str, location: str, inputs: dict, s: PointSet, size: int) -> CaseCheck:
    prof = chord_profile(s) if is_cap(s) else None
    k, m, q = len(s), s.space.n - len(s), s.space.q
    c = expected_chord_number(k, m, q)
    cap = bool(is_cap(s))
    return CaseCheck(
        cid,
        location,
        inputs,
        {"size": size, "cap": True, "complete": True, "chord_constant": True, "chord": _frac(c),
         "chord_sum": k * (k - 1) * (q - 1) // 2},
        "stated",
        {
            "size": k,
            "cap": cap,
            "complete": is_complete(s) if cap else False,
            "chord_constant": bool(prof and prof.is_constant),
            "chord": str(prof.min) if prof and prof.is_constant else "none",
            "chord_sum": prof.total() if prof else None,
        },
    )


def _stabilizer_check(cid: str, location: str, s: PointSet, limits: Limits, note: str = "",
                      expect_transitive: bool = True) -> CaseCheck:
    space = s.space
    inputs = {"space": str(space), "size": len(s)}
    group = pgammal_order(space.dim, space.q)
    try:
        cert = setwise_stabilizer_bruteforce(space, s, limits.group_limit)
    except GroupTooLarge:
        nec = cotransitivity_necessary(s)
        return CaseCheck(
            cid, location, inputs, {"necessary_condition": True}, "computed",
            {"necessary_condition": nec.passes},
            {"method": "necessary-only", "group_order": group, "chord": nec.value},
            "brute force gated off; constant integral chord profile checked instead",
        )
    expected = {"co_transitive": True}
    observed = {"co_transitive": cert.transitive_on_complement}
    if expect_transitive:
        expected["transitive"] = True
        observed["transitive"] = cert.transitive_on_set
    return CaseCheck(
        cid, location, inputs, expected, "stated", observed,
        {
            "method": "brute-force",
            "group_order": group,
            "stabilizer_order": cert.order,
            "linear_part_order": cert.linear_order,
            "transitive": cert.transitive_on_set,
            "set_orbits": cert.set_orbit_sizes,
            "complement_orbits": cert.complement_orbit_sizes,
        },
        note,
    )


def group_constructions(limits: Limits) -> list[CaseCheck]:
    out = []
    for q in (3, 4, 5, 7, 8, 9):
        out.append(_family_check(f"T1-elliptic-q{q}", "classification: elliptic quadric in PG(3,q)",
                                 {"q": q}, elliptic_quadric(q), q * q + 1))
    out.append(_family_check("T1-tits-q8", "classification: Suzuki-Tits ovoid", {"q": 8}, tits_ovoid(8), 65))
    out.append(_family_check("T1-hyperoval-q4", "classification: hyperoval in PG(2,4)", {}, hyperoval_pg24(), 6))
    out.append(_family_check("T1-cap11-pg43", "classification: 11-cap in PG(4,3)", {}, cap11_pg43(), 11))
    for r in range(2, 7):
        out.append(_family_check(f"T1-hyperplane-complement-r{r}",
                                 "classification: complement of a hyperplane in PG(r,2)",
                                 {"r": r}, hyperplane_complement(r), 2**r))

    out.append(_stabilizer_check("T1-hyperoval-q4-stabilizer", "classification: hyperoval transitivity",
                                 hyperoval_pg24(), limits))
    for r in (2, 3):
        out.append(_stabilizer_check(f"T1-hyperplane-complement-r{r}-stabilizer",
                                     "classification: hyperplane complement transitivity", hyperplane_complement(r), limits))
    out.append(_stabilizer_check(
        "T1-elliptic-q3-stabilizer", "classification: elliptic quadric transitivity, q odd non-square",
        elliptic_quadric(3), limits, expect_transitive=False,
        note="the square-q restriction for odd q concerns the affine rank-3 group; "
             "the projective stabilizer is recorded as observed",
    ))
    for cid, loc, s in [
        ("T1-elliptic-q4-stabilizer", "classification: elliptic quadric transitivity", elliptic_quadric(4)),
        ("T1-tits-q8-stabilizer", "classification: Suzuki-Tits ovoid transitivity", tits_ovoid(8)),
        ("T1-cap11-pg43-stabilizer", "classification: 11-cap transitivity", cap11_pg43()),
    ]:
        out.append(_stabilizer_check(cid, loc, s, limits))
    return out


# --- group 2: cap bounds -------------------------------------------------------


SEARCH_SPACES = ((2, 2), (2, 3), (2, 4), (3, 2), (3, 3))


def group_bounds(limits: Limits) -> list[CaseCheck]:
    out = []
    for r, q in SEARCH_SPACES:
        S = pg(r, q)
        if S.n > limits.search_points:
            raise InfrastructureError(f"search limit {limits.search_points} is below |{S}| = {S.n}")
        bound = cap_size_bound(r, q)
        res = complete_cap_search(S, limits.search_points)
        out.append(CaseCheck(
            f"bound-search-pg{r}{q}", "cap bound table: exhaustive confirmation",
            {"r": r, "q": q}, {"max_cap": bound.value, "exact": True}, "stated",
            {"max_cap": res.max_size, "exact": bound.exact}, {"nodes": res.nodes, "example": list(res.example)},
        ))
    for q in (3, 4, 5, 7, 8, 9):
        b = cap_size_bound(3, q)
        out.append(CaseCheck(
            f"bound-m2-3-q{q}", "cap bound table: m2(3,q) = q^2+1 for q > 2", {"q": q},
            {"value": q * q + 1, "exact": True, "attained": True}, "stated",
            {"value": b.value, "exact": b.exact, "attained": len(elliptic_quadric(q)) == b.value},
        ))
    b = cap_size_bound(4, 3)
    out.append(CaseCheck(
        "bound-m2-4-q3", "cap bound table: m2(r,q) <= q^(r-1), r >= 4", {"r": 4, "q": 3},
        {"value": 27, "exact": False}, "stated", {"value": b.value, "exact": b.exact},
    ))
    return out


# --- group 3: the complement-of-a-hyperplane lemma ----------------------------------


LEMMA_NOTE = "the size in the q = 2 case is printed as 2^2; 2^r is what the argument uses"


def group_lemma(limits: Limits) -> list[CaseCheck]:
    sets: list[tuple[str, PointSet, str]] = []
    for q in (3, 4, 5):
        sets.append((f"lemma-elliptic-q{q}", elliptic_quadric(q), "smaller"))
    sets.append(("lemma-tits-q8", tits_ovoid(8), "smaller"))
    sets.append(("lemma-hyperoval-q4", hyperoval_pg24(), "smaller"))
    sets.append(("lemma-cap11-pg43", cap11_pg43(), "smaller"))
    for r in range(2, 7):
        sets.append((f"lemma-hyperplane-complement-r{r}", hyperplane_complement(r), "hyperplane-complement"))
    for r, q in SEARCH_SPACES:
        S = pg(r, q)
        if S.n > limits.search_points:
            raise InfrastructureError(f"search limit {limits.search_points} is below |{S}| = {S.n}")
        ex = PointSet(S, complete_cap_search(S, limits.search_points).example)
        sets.append((f"lemma-search-max-pg{r}{q}", ex, "hyperplane-complement" if q == 2 else "smaller"))
    out = []
    for cid, s, want in sets:
        verdict, hyp = complement_majority_check(s)
        out.append(CaseCheck(
            cid, "complement-of-a-hyperplane lemma", {"space": str(s.space), "size": len(s)},
            {"verdict": want}, "stated", {"verdict": verdict.value}, {"hyperplane": hyp},
            LEMMA_NOTE if want == "hyperplane-complement" else "",
        ))
    return out


# --- group 4: the infinite classes -----------------------------------------------------


def group_classes(limits: Limits) -> list[CaseCheck]:
    out = []
    for q in (2, 3):
        s = direct_sum_k1(3, q)
        w = is_cap(s).witness
        out.append(CaseCheck(
            f"A2-r3-q{q}", "class A2: K1 contains a line", {"r": 3, "q": q},
            {"cap": False, "witness_collinear": True}, "stated",
            {"cap": bool(is_cap(s)), "witness_collinear": _collinear_in(s, w)}, {"witness": list(w)},
        ))

    k1 = tensor_k1(2, 2)
    k2 = len(k1.complement())
    c = expected_chord_number(k2, len(k1), 2)
    line = tensor_line_witness(2, 2)
    out.append(CaseCheck(
        "A3-q2b2", "class A3: chord number 30/18 not an integer", {"q": 2, "b": 2},
        {"k1": 9, "k2": 6, "chord": "5/3", "integral": False, "k1_cap": False, "line_in_k1": True},
        "stated",
        {"k1": len(k1), "k2": k2, "chord": _frac(c), "integral": c.denominator == 1,
         "k1_cap": bool(is_cap(k1)), "line_in_k1": _collinear_in(k1, line)},
    ))

    for q, s, a in ((4, 2, 4), (9, 3, 3)):
        w = subgeometry_witnesses(q, s, a)
        out.append(CaseCheck(
            f"A4-s{s}-q{q}", "class A4: subgeometry and the triple u, v, u+v",
            {"q": q, "s": s, "a": a},
            {"k1": (s**a - 1) // (s - 1), "k1_triple_collinear": True,
             "k2_triple_in_k2": True, "k2_triple_collinear": True},
            "stated",
            {"k1": len(w.k1), "k1_triple_collinear": _collinear_in(w.k1, w.k1_triple),
             "k2_triple_in_k2": w.k2_triple_in_k2, "k2_triple_collinear": w.k2_triple_collinear},
            {"k1_triple": list(w.k1_triple), "k2_triple": [list(x) for x in w.k2_triple], "sigma": w.sigma},
        ))

    h = hermitian_witnesses(2)
    out.append(CaseCheck(
        "A6-hermitian-q4", "class A6: Hermitian curve in PG(2,4)", {"q": 4, "a": 3},
        {"k1": 9, "line_meets": {"1": 9, "3": 12}, "k1_cap": False, "tangent_k2_points": 4},
        "computed",
        {"k1": len(h.k1), "line_meets": {str(k): v for k, v in h.line_meet_counts.items()},
         "k1_cap": h.k1_witness is None, "tangent_k2_points": h.tangent_k2_points},
        {"k1_witness": list(h.k1_witness) if h.k1_witness else None, "tangent_line": list(h.tangent_line)},
    ))

    for q in (2, 3):
        o = hyperbolic_quadric(q)
        out.append(CaseCheck(
            f"A7-hyperbolic-q{q}", "class A7: hyperbolic quadric contains lines", {"q": q},
            {"k1": (q + 1) ** 2, "k1_cap": False}, "stated",
            {"k1": len(o), "k1_cap": bool(is_cap(o))}, {"witness": list(is_cap(o).witness)},
        ))
        for kind in ("elliptic", "hyperbolic"):
            w = orthogonal_witnesses(q, 4, kind)
            out.append(CaseCheck(
                f"A7-{kind}-k2-q{q}", "class A7: anisotropic line in K2", {"q": q, "kind": kind},
                {"anisotropic_line": True}, "stated", {"anisotropic_line": w.anisotropic_line is not None},
                {"line": list(w.anisotropic_line) if w.anisotropic_line else None},
            ))
    w = orthogonal_witnesses(2, 8, "hyperbolic")
    out.append(CaseCheck(
        "A9-V8q2", "class A9: singular and non-singular points on V(8,2)", {"q": 2, "dim": 8},
        {"k1": 135, "k2": 120, "k1_cap": False, "anisotropic_line": True}, "computed",
        {"k1": len(w.k1), "k2": w.space.n - len(w.k1), "k1_cap": w.k1_witness is None,
         "anisotropic_line": w.anisotropic_line is not None},
    ))

    for q in range(2, 10):
        for name, closed, sizes in (("A8", chord_formula_a8, a8_orbit_sizes), ("A10", chord_formula_a10, a10_orbit_sizes)):
            k, m = sizes(q)
            c = expected_chord_number(k, m, q)
            out.append(CaseCheck(
                f"{name}-q{q}", f"class {name}: chord-number formula", {"q": q, "k": k, "m": m},
                {"integral": False, "matches_closed_form": True}, "stated",
                {"integral": c.denominator == 1, "matches_closed_form": c == closed(q)},
                {"chord": _frac(c)},
            ))
    return out


# --- group 4b: class A1 and the Hill sizes ---------------------------------------------


HILL_CASES = ((5, 4, 78), (6, 4, 430))


def _valid_fk_params(p: int, dmax: int):
    for d in range(1, dmax + 1):
        for v in sympy.primerange(3, 2 * d + 3):
            for m1 in range(1, d + 1):
                for s in range(1, d + 1):
                    for e in range(1, m1 + 1):
                        params = FKParams(p, d, s, m1, v, e)
                        if all(fk_conditions(params).values()):
                            yield params


def group_a1(limits: Limits) -> list[CaseCheck]:
    out = []
    params = FKParams(2, 6, 1, 1, 3)
    out.append(CaseCheck(
        "A1-fk-lengths-2^6", "class A1: orbit lengths m1(p^d-1)/N and (v-1)m1(p^d-1)/N",
        asdict(params), {"lengths": [21, 42], "conditions": True}, "computed",
        {"lengths": list(fk_orbit_lengths(params)), "conditions": all(fk_conditions(params).values())},
    ))
    lens = [fk_orbit_lengths(pr)[0] for pr in _valid_fk_params(2, 12)]
    out.append(CaseCheck(
        "A1-fk-odd-p2", "class A1: when p = 2 the smaller orbit has odd size", {"p": 2, "d_max": 12},
        {"all_odd": True}, "stated", {"all_odd": all(x % 2 for x in lens)}, {"parameter_sets": len(lens)},
        "conditions checked: every arithmetic side condition; the two-orbit conclusion is assumed",
    ))
    for r, q, k in HILL_CASES:
        S = pg(r, q)
        d = (r + 1) * 2  # q = 4 = 2^2
        out.append(CaseCheck(
            f"A1-hill{k}-parity", f"class A1: caps of size {k} in PG({r},{q}), parity", {"r": r, "q": q, "k": k},
            {"verdict": "incompatible"}, "stated",
            {"verdict": a1_parity_refutation(2, d, q, k).value}, {"vectors": k * (q - 1)},
        ))
        cycle = build_singer(S)
        res = a1_cap_search(cycle, k)
        out.append(CaseCheck(
            f"A1-hill{k}-a1-groups", f"class A1: caps of size {k} in PG({r},{q}), A1 group orbits",
            {"r": r, "q": q, "k": k}, {"cotransitive_caps": 0}, "stated",
            {"cotransitive_caps": len(res.cotransitive_caps)},
            {"groups": res.groups, "transitive_candidates": res.transitive_candidates,
             "cotransitive_candidates": res.cotransitive_candidates, "transitive_caps": len(res.caps)},
        ))
        found: dict[str, int] = {}
        undecided: list[int] = []
        for N in sympy.divisors(cycle.n):
            try:
                caps = orbit_union_cap_search(S, subgroup_orbits(cycle, N), k, limits.union_nodes)
            except TargetInfeasible:
                continue
            except SearchLimitExceeded:
                undecided.append(N)
                continue
            if caps:
                found[str(N)] = len(caps)
        out.append(CaseCheck(
            f"A1-hill{k}-singer-unions", f"class A1: caps of size {k} in PG({r},{q}), Singer-orbit unions",
            {"r": r, "q": q, "k": k, "node_limit": limits.union_nodes},
            {"caps": 0, "undecided_divisors": []}, "stated",
            {"caps": sum(found.values()), "undecided_divisors": undecided}, {"caps_by_divisor": found},
            "unions of Singer orbits of any subgroup; transitivity is not imposed",
        ))
    return out


# --- group 5: extraspecial classes ---------------------------------------------------------


EXTRA_TABLE = ((3, 3, "R1^2", 16, 10), (5, 3, "R2^2", 60, 26), (5, 3, "R3^2", 60, 26), (7, 3, "R2^2", 80, 50))


def group_extraspecial(limits: Limits) -> list[CaseCheck]:
    out = []
    for p, r, R, k, printed in EXTRA_TABLE:
        b = cap_size_bound(r, p)
        out.append(CaseCheck(
            f"extra-bound-{R}-p{p}", "extraspecial table: orbit exceeds the cap bound",
            {"p": p, "r": r, "R": R, "k": k},
            {"bound": printed, "exceeds": True}, "stated", {"bound": b.value, "exceeds": k > b.value},
        ))
    b = cap_size_bound(2, 4)
    out.append(CaseCheck(
        "extra-27-pg24", "extraspecial 3-group in GammaL(3,4): point orbits 9 and 12",
        {"vector_orbits": [27, 36], "q": 4}, {"points": [9, 12], "exceed_bound": True}, "stated",
        {"points": [27 // 3, 36 // 3], "exceed_bound": min(9, 12) > b.value}, {"bound": b.value},
    ))
    c = Fraction(720 * 719 * 2, 2 * 2560)
    out.append(CaseCheck(
        "extra-720", "extraspecial p = q = 3, r = 7: (720.719.2)/(2.2560)", {"k": 720, "m": 2560, "q": 3},
        {"integral": False, "sizes_fill_space": True, "formula_agrees": True}, "stated",
        {"integral": c.denominator == 1, "sizes_fill_space": 720 + 2560 == pg_count(7, 3),
         "formula_agrees": c == expected_chord_number(720, 2560, 3)},
        {"chord": _frac(c)},
    ))
    rep = extraspecial_orbit16()
    out.append(CaseCheck(
        "extra-R22-orbit16", "extraspecial R2^2 on V(4,3): five orbits of size 16", {"q": 3, "dim": 4},
        {"group_order": 32, "orbit_sizes": [16] * 5, "images_are_caps": [False] * 5}, "stated",
        {"group_order": rep.group_order, "orbit_sizes": rep.orbit_sizes,
         "images_are_caps": [w is None for w in rep.witnesses]},
        {"image_sizes": [len(x) for x in rep.projective_images],
         "witnesses": [list(w) if w else None for w in rep.witnesses]},
    ))
    return out


def pg_count(r: int, q: int) -> int:
    return (q ** (r + 1) - 1) // (q - 1)


# --- group 6: exceptional classes ---------------------------------------------------------


EXC_BOUNDS = (
    ("A6", (4, 5), 3, 5, 36, 26),
    ("A7", (4, 7), 3, 7, 120, 50),
    ("M11", (5, 3), 4, 3, 55, 27),
    ("J2", (6, 5), 5, 5, 1890, 625),
    ("J2", (12, 2), 5, 4, 525, 256),
)
EXC_CHORDS = (
    ("A9", (8, 2), 7, 2, 120, 135),
    ("A10", (8, 2), 7, 2, 45, 210),
    ("L2(17)", (8, 2), 7, 2, 102, 153),
    ("M24", (11, 2), 10, 2, 276, 1771),
    ("M24", (11, 2), 10, 2, 759, 1288),
    ("Suz-J4", (12, 3), 11, 2, 65520, 465920),
)

# the PSU(4,2) orbit as listed: theta = omega = 2 over GF(7)
_PSU_THETA = 2


def psu_orbit_vectors() -> set[tuple[int, ...]]:
    p, w = 7, _PSU_THETA
    powers = sorted({pow(w, a, p) for a in range(p - 1)})
    base = {(w, 0, 0, 0)}
    for x in [(w, 0, 0), *itertools.product(powers, repeat=3)]:
        base.add((0, *x))
    for a, b, c in itertools.product(powers, repeat=3):
        base.add((a, 0, b, (-c) % p))
    cyc = set()
    for v in base:
        t = v[1:]
        for k in range(3):
            cyc.add((v[0], *t[k:], *t[:k]))
    return {tuple(lam * x % p for x in v) for v in cyc for lam in range(1, p)}


def group_exceptional(limits: Limits) -> list[CaseCheck]:
    out = []
    for L, (d, p), r, q, k, printed in EXC_BOUNDS:
        b = cap_size_bound(r, q)
        out.append(CaseCheck(
            f"exc-bound-{L}-{d}-{p}", "exceptional table: max. cap size", {"L": L, "d": d, "p": p, "r": r, "q": q, "k": k},
            {"bound": printed, "exceeds": True}, "stated", {"bound": b.value, "exceeds": k > b.value},
        ))
    for L, (d, p), r, q, k, m in EXC_CHORDS:
        readings = [("q2", 2)] if L != "Suz-J4" else [("q2", 2), ("q3", 3)]
        for tag, qq in readings:
            c = expected_chord_number(k, m, qq)
            cid = f"exc-chord-{L}-{k}" + (f"-{tag}" if L == "Suz-J4" else "")
            out.append(CaseCheck(
                cid, "exceptional table: chord-number not an integer",
                {"L": L, "d": d, "p": p, "r": r, "q": qq, "k": k, "m": m},
                {"integral": False}, "stated", {"integral": c.denominator == 1},
                {"chord": _frac(c), "k_plus_m": k + m, "vectors": p**d - 1},
                "q is printed as 2 while (d,p) = (12,3) gives q = 3; both readings evaluated"
                if L == "Suz-J4" else "",
            ))
    w = subgeometry_witnesses(4, 2, 4)
    out.append(CaseCheck(
        "exc-A7-subgeometry", "A7 in PSL(4,4): 15-point subgeometry", {"q": 4, "s": 2},
        {"k": 15, "cap": False, "triple_collinear": True}, "stated",
        {"k": len(w.k1), "cap": bool(is_cap(w.k1)), "triple_collinear": _collinear_in(w.k1, w.k1_triple)},
        {"triple": list(w.k1_triple)},
    ))
    t = psu42_triple()
    orbit = psu_orbit_vectors()
    out.append(CaseCheck(
        "exc-PSU42-triple", "PSU(4,2): (1;0,0,0), (1;0,1,6), (2;0,1,6)", {"q": 7},
        {"collinear": True, "third_is_sum": True, "in_orbit": True}, "stated",
        {"collinear": t.collinear, "third_is_sum": t.third_is_sum, "in_orbit": all(v in orbit for v in t.points)},
        {"orbit_vectors": len(orbit), "theta_order": sympy.n_order(_PSU_THETA, 7)},
        "theta = 2 has multiplicative order 3 in GF(7); membership uses the listed generators as printed",
    ))
    h = hyperoval_pg24()
    out.append(CaseCheck(
        "exc-A6-hyperoval", "A6 in PSL(3,4): orbit of size 6 is a hyperoval", {"q": 4},
        {"size": 6, "cap": True, "complete": True}, "stated",
        {"size": len(h), "cap": bool(is_cap(h)), "complete": is_complete(h)},
    ))
    S = pg(4, 3)
    part = subgroup_orbits(build_singer(S), 11)
    out.append(CaseCheck(
        "exc-M11-singer", "M11 on PG(4,3): eleven 11-caps", {"r": 4, "q": 3, "N": 11},
        {"orbits": [11] * 11, "all_caps": True}, "stated",
        {"orbits": part.sizes(), "all_caps": all(orbit_cap_filter(S, part))},
    ))
    return out


GROUPS: tuple[Callable[[Limits], list[CaseCheck]], ...] = (
    group_constructions,
    group_bounds,
    group_lemma,
    group_classes,
    group_a1,
    group_extraspecial,
    group_exceptional,
)

# every computational claim that must appear in a report
MANIFEST: tuple[str, ...] = (
    *(f"T1-elliptic-q{q}" for q in (3, 4, 5, 7, 8, 9)),
    "T1-tits-q8", "T1-hyperoval-q4", "T1-cap11-pg43",
    *(f"T1-hyperplane-complement-r{r}" for r in range(2, 7)),
    "T1-hyperoval-q4-stabilizer", "T1-hyperplane-complement-r2-stabilizer",
    "T1-hyperplane-complement-r3-stabilizer", "T1-elliptic-q3-stabilizer",
    *(f"bound-search-pg{r}{q}" for r, q in SEARCH_SPACES),
    "lemma-hyperplane-complement-r3", "lemma-search-max-pg32",
    "A2-r3-q2", "A3-q2b2", "A4-s2-q4", "A4-s3-q9", "A6-hermitian-q4",
    "A7-hyperbolic-q2", "A7-elliptic-k2-q3", "A9-V8q2",
    *(f"A8-q{q}" for q in range(2, 10)), *(f"A10-q{q}" for q in range(2, 10)),
    "A1-fk-lengths-2^6", "A1-fk-odd-p2",
    "A1-hill78-parity", "A1-hill430-parity", "A1-hill78-a1-groups", "A1-hill430-a1-groups",
    "A1-hill78-singer-unions", "A1-hill430-singer-unions",
    *(f"extra-bound-{R}-p{p}" for p, _, R, _, _ in EXTRA_TABLE),
    "extra-27-pg24", "extra-720", "extra-R22-orbit16",
    *(f"exc-bound-{L}-{d}-{p}" for L, (d, p), *_ in EXC_BOUNDS),
    "exc-chord-A9-120", "exc-chord-A10-45", "exc-chord-L2(17)-102", "exc-chord-M24-276",
    "exc-chord-M24-759", "exc-chord-Suz-J4-65520-q2", "exc-chord-Suz-J4-65520-q3",
    "exc-A7-subgeometry", "exc-PSU42-triple", "exc-A6-hyperoval", "exc-M11-singer",
)


def _run_group(args: tuple[int, Limits]) -> list[CaseCheck]:
    idx, limits = args
    return GROUPS[idx](limits)


def verify_paper(limits: Limits | None = None, workers: int = 1) -> VerificationReport:
    """Run every check group; groups may run in separate processes."""
    limits = limits or Limits.from_env()
    jobs = [(i, limits) for i in range(len(GROUPS))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_group, jobs))
    else:
        results = [_run_group(j) for j in jobs]
    ranked = [(i, c) for i, group in enumerate(results) for c in group]
    ranked.sort(key=lambda t: (t[0], t[1].id))
    ids = [c.id for _, c in ranked]
    assert len(ids) == len(set(ids)), "duplicate check ids"
    return VerificationReport(__version__, limits, [c for _, c in ranked])
