"""Singer cycles of PG(r, q), their cyclic subgroups, and cap tests on orbit unions."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from sympy import divisors

from . import linalg
from .caps import CapCheck, PointSet, is_cap
from .errors import (
    DivisibilityViolation,
    NotADivisor,
    SearchLimitExceeded,
    TargetInfeasible,
)
from .field import least_primitive_polynomial
from .space import ProjectiveSpace


def companion_matrix(F, poly: Sequence[int]) -> list[list[int]]:
    """Companion matrix of a monic polynomial (coefficients low degree first)."""
    d = len(poly) - 1
    C = [[0] * d for _ in range(d)]
    for i in range(d - 1):
        C[i + 1][i] = 1
    for i in range(d):
        C[i][d - 1] = F.neg(poly[i])
    return C


def matrix_power(F, M, e: int):
    result = linalg.identity(len(M))
    base = [list(r) for r in M]
    while e:
        if e & 1:
            result = linalg.matmul(F, result, base)
        base = linalg.matmul(F, base, base)
        e >>= 1
    return result


@dataclass
class SingerCycle:
    space: ProjectiveSpace
    polynomial: tuple[int, ...]
    matrix: list[list[int]]
    perm: np.ndarray  # point permutation induced by the matrix
    exponent: np.ndarray  # exponent[pid] = i with pid = g^i(0)

    @property
    def n(self) -> int:
        return self.space.n

    def point_at(self, i: int) -> int:
        """PointId of ``g^i`` applied to point 0."""
        return int(self.orbit_order[i % self.n])

    @property
    def orbit_order(self) -> np.ndarray:
        order = np.empty(self.n, dtype=np.int64)
        order[self.exponent] = np.arange(self.n)
        return order


def build_singer(space: ProjectiveSpace) -> SingerCycle:
    """Companion matrix of the least primitive polynomial of degree r+1 over GF(q).

    Raises ``AssertionError`` if it fails to act regularly on the points,
    which would mean the primitivity test is broken.
    """
    F = space.field
    poly = least_primitive_polynomial(F, space.dim)
    C = companion_matrix(F, poly)
    perm = space.transform(C)
    exponent = np.full(space.n, -1, dtype=np.int64)
    x = 0
    for i in range(space.n):
        if exponent[x] >= 0:
            break
        exponent[x] = i
        x = int(perm[x])
    assert x == 0 and (exponent >= 0).all(), "Singer matrix is not regular on points"
    return SingerCycle(space, poly, C, perm, exponent)


@dataclass
class OrbitPartition:
    orbits: list[np.ndarray]
    index: np.ndarray  # index[pid] = orbit number

    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def __len__(self) -> int:
        return len(self.orbits)


def partition_from_labels(labels: np.ndarray) -> OrbitPartition:
    """Orbits numbered by their least PointId."""
    order = np.argsort(labels, kind="stable")
    _, starts = np.unique(labels[order], return_index=True)
    groups = np.split(order, starts[1:])
    groups.sort(key=lambda g: int(g.min()))
    index = np.empty(len(labels), dtype=np.int64)
    orbits = []
    for k, g in enumerate(groups):
        g = np.sort(g)
        index[g] = k
        orbits.append(g)
    return OrbitPartition(orbits, index)


def permutation_cycles(perm: np.ndarray) -> OrbitPartition:
    labels = np.full(len(perm), -1, dtype=np.int64)
    for start in range(len(perm)):
        if labels[start] >= 0:
            continue
        x = start
        while labels[x] < 0:
            labels[x] = start
            x = int(perm[x])
    return partition_from_labels(labels)


def subgroup_orbits(cycle: SingerCycle, N: int) -> OrbitPartition:
    """Point orbits of the cyclic group generated by ``matrix^N``."""
    n = cycle.n
    if N < 1 or n % N:
        raise NotADivisor(f"{N} does not divide {n}")
    gN = matrix_power(cycle.space.field, cycle.matrix, N)
    part = permutation_cycles(cycle.space.transform(gN))
    assert len(part) == N and all(len(o) == n // N for o in part.orbits)
    return part


def orbit_cap_filter(space: ProjectiveSpace, partition: OrbitPartition) -> list[CapCheck]:
    return [is_cap(PointSet(space, o)) for o in partition.orbits]


def _subset_sum_feasible(sizes: Sequence[int], target: int) -> bool:
    reach = 1
    for s in sizes:
        reach |= reach << s
    return bool((reach >> target) & 1)


CONFLICT_LIMIT = 10_000_000


class _ConflictTable:
    """Which small sets of orbits hold three collinear points.

    Every three points on a line give a sorted label triple (a, b, c).  The
    union of a set of whole orbits is a cap exactly when it contains none of
    these label sets.
    """

    def __init__(self, space: ProjectiveSpace, label: np.ndarray, N: int):
        lines = space.lines()
        combos = np.array(list(itertools.combinations(range(lines.shape[1]), 3)))
        chunks = []
        total = 0
        step = max(1, 2_000_000 // len(combos))
        for lo in range(0, len(lines), step):
            lab = label[lines[lo : lo + step]]
            t = np.sort(lab[:, combos].reshape(-1, 3), axis=1)
            codes = np.unique((t[:, 0] * N + t[:, 1]) * N + t[:, 2])
            total += len(codes)
            if total > CONFLICT_LIMIT:
                raise SearchLimitExceeded(f"more than {CONFLICT_LIMIT} orbit conflicts")
            chunks.append(codes)
        codes = np.unique(np.concatenate(chunks)) if chunks else np.zeros(0, dtype=np.int64)
        a, rest = np.divmod(codes, N * N)
        b, c = np.divmod(rest, N)
        self.N = N
        self.self_bad = {int(x) for x in a[(a == b) & (b == c)]}
        self.pair_bad = [0] * N
        for x, y in [*zip(a[(a == b) & (b < c)], c[(a == b) & (b < c)]),
                     *zip(a[(a < b) & (b == c)], b[(a < b) & (b == c)])]:
            self.pair_bad[int(x)] |= 1 << int(y)
            self.pair_bad[int(y)] |= 1 << int(x)
        d = (a < b) & (b < c)
        # each distinct triple is indexed under all three of its pairs
        keys = np.concatenate([a[d] * N + b[d], a[d] * N + c[d], b[d] * N + c[d]])
        third = np.concatenate([c[d], b[d], a[d]])
        order = np.argsort(keys, kind="stable")
        self._keys = keys[order]
        self._third = third[order]
        self._memo: dict[int, int] = {}

    def third_mask(self, x: int, y: int) -> int:
        """Bitmask of orbits z such that {x, y, z} holds three collinear points."""
        if x > y:
            x, y = y, x
        key = x * self.N + y
        mask = self._memo.get(key)
        if mask is None:
            lo, hi = np.searchsorted(self._keys, [key, key + 1])
            mask = 0
            for z in self._third[lo:hi]:
                mask |= 1 << int(z)
            self._memo[key] = mask
        return mask


def _mask_size(mask: int, size_of: list[int]) -> int:
    total = 0
    while mask:
        low = mask & -mask
        total += size_of[low.bit_length() - 1]
        mask ^= low
    return total


def orbit_union_cap_search(
    space: ProjectiveSpace,
    partition: OrbitPartition,
    target_size: int,
    node_limit: int = 1_000_000,
) -> list[PointSet]:
    """Every union of whole orbits with ``target_size`` points that is a cap.

    Depth-first over orbits in partition order.  Orbits that are not caps
    are dropped first, and a partial union that is not a cap is never
    extended.  Cap-ness of a union is read off a table of orbit sets holding
    collinear triples; every union found is re-checked directly.
    """
    sizes = partition.sizes()
    if not _subset_sum_feasible(sizes, target_size):
        raise TargetInfeasible(f"no union of orbits has {target_size} points")
    N = len(partition.orbits)
    table = _ConflictTable(space, np.asarray(partition.index, dtype=np.int64), N)
    size_of = sizes
    allowed = 0
    for j in range(N):
        if j not in table.self_bad and size_of[j] <= target_size:
            allowed |= 1 << j
    found: list[PointSet] = []
    nodes = 0

    def dfs(chosen: list[int], cand: int, size: int) -> None:
        nonlocal nodes
        if size == target_size:
            union = PointSet(space, np.concatenate([partition.orbits[j] for j in chosen]))
            assert is_cap(union)
            found.append(union)
            return
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            if size + size_of[j] > target_size:
                continue
            nodes += 1
            if nodes > node_limit:
                raise SearchLimitExceeded(f"more than {node_limit} partial unions")
            nxt = cand & ~table.pair_bad[j]
            for i in chosen:
                nxt &= ~table.third_mask(i, j)
            if size + size_of[j] + _mask_size(nxt, size_of) < target_size:
                continue
            chosen.append(j)
            dfs(chosen, nxt, size + size_of[j])
            chosen.pop()

    dfs([], allowed, 0)
    return found


# --- the field model: points of PG(r,q) as powers of a primitive element ------
#
# The companion matrix is multiplication by t in GF(q)[t]/(f) = GF(q^(r+1)),
# so the point with Singer exponent i is the class of t^(r+i) (point 0 is
# e_r = t^r).  The label of a point is that power of t, modulo n.


def singer_labels(cycle: SingerCycle) -> np.ndarray:
    """``labels[pid] = j`` where point ``pid`` is spanned by ``omega^j``."""
    return (cycle.exponent + cycle.space.r) % cycle.n


def frobenius_matrix(cycle: SingerCycle, s: int = 1) -> tuple[list[list[int]], int]:
    """The map ``x -> x^(p^s)`` of GF(q^(r+1)) as a semilinear map of V(r+1, q).

    Returns ``(matrix, frobenius_power)`` acting as ``v -> matrix . v^(p^s)``:
    column j holds the coordinates of ``t^(j p^s)`` and the coordinate-wise
    power accounts for the action on GF(q) scalars.
    """
    space = cycle.space
    F = space.field
    d = space.dim
    e = F.p**s
    cols = []
    power = linalg.identity(d)
    C = cycle.matrix
    step = matrix_power(F, C, e)
    for j in range(d):
        cols.append([row[0] for row in power])  # power = C^(j e), first column = t^(j e)
        power = linalg.matmul(F, step, power)
    return linalg.transpose(cols), s % F.h


def affine_orbit_labels(N: int, mult: int, shift: int) -> np.ndarray:
    """Label each j in Z_N by the least element of its orbit under ``j -> mult*j + shift``.

    ``mult`` must be a unit mod N.  Uses pointer doubling: after k rounds
    each label is the minimum over the first 2^k iterates.
    """
    x = np.arange(N)
    step = (mult * x + shift) % N
    labels = x.copy()
    span = 1
    while span < N:
        labels = np.minimum(labels, labels[step])
        step = step[step]
        span *= 2
    return labels


def _affine_order(N: int, mult: int, shift: int) -> int:
    """Order of the permutation ``j -> mult*j + shift`` of Z_N."""
    o, x = 1, mult % N
    while x != 1 % N:
        x = x * mult % N
        o += 1
    # f^o is the translation by shift*(1 + mult + ... + mult^(o-1))
    total = sum(pow(mult, i, N) for i in range(o)) * shift % N
    return o * (N // math.gcd(total, N))


def _may_have_cycle(N: int, mult: int, shift: int, length: int) -> bool:
    # every cycle length divides the order of the permutation
    return _affine_order(N, mult, shift) % length == 0


@dataclass(frozen=True)
class A1Group:
    """``G0 = <omega^N, omega^e alpha^s>`` acting on PG(r, q)."""

    N: int
    s: int
    e: int


def a1_group_orbits(cycle: SingerCycle, group: A1Group) -> OrbitPartition:
    """Point orbits of an A1 group: unions of Singer orbits of ``<omega^N>``."""
    p = cycle.space.field.p
    block = affine_orbit_labels(group.N, pow(p, group.s, group.N), group.e)
    labels = singer_labels(cycle)
    return partition_from_labels(block[labels % group.N])


def a1_groups(cycle: SingerCycle):
    """Every ``(N, s, e)`` with ``N | n``, ``0 <= s < d``, ``0 <= e < N``, where ``q^(r+1) = p^d``."""
    F = cycle.space.field
    d = F.h * cycle.space.dim
    for N in divisors(cycle.n):
        for s in range(d):
            for e in range(N):
                yield A1Group(int(N), s, e)


@dataclass
class A1SearchResult:
    space: str
    target: int
    groups: int  # A1 groups examined
    transitive_candidates: int  # distinct G0-orbits of the target size
    cotransitive_candidates: int  # ... whose complement is also a single orbit
    caps: list[tuple[A1Group, bool, tuple[int, ...]]] = field(default_factory=list)

    @property
    def cotransitive_caps(self) -> list:
        return [c for c in self.caps if c[1]]


def a1_cap_search(cycle: SingerCycle, target: int) -> A1SearchResult:
    """Search every A1 group for an orbit of ``target`` points that is a cap.

    A candidate is a union of Singer orbits of ``<omega^N>`` permuted
    transitively by ``omega^e alpha^s``.  Candidates containing a Singer
    orbit that is not itself a cap are rejected before the full test.  Each
    candidate also records whether its complement is a single orbit.
    """
    space = cycle.space
    p = space.field.p
    n = cycle.n
    labels = singer_labels(cycle)
    first_group: dict[tuple[int, tuple[int, ...]], A1Group] = {}
    cotransitive: dict[tuple[int, tuple[int, ...]], bool] = {}
    groups = 0
    for g in a1_groups(cycle):
        groups += 1
        size = n // g.N
        if target % size or not _may_have_cycle(g.N, pow(p, g.s, g.N), g.e, target // size):
            continue
        block = affine_orbit_labels(g.N, pow(p, g.s, g.N), g.e)
        reps, counts = np.unique(block, return_counts=True)
        for rep, cnt in zip(reps, counts):
            if cnt * size != target:
                continue
            key = (g.N, tuple(int(j) for j in np.flatnonzero(block == rep)))
            first_group.setdefault(key, g)
            cotransitive[key] = cotransitive.get(key, False) or len(reps) == 2

    result = A1SearchResult(str(space), target, groups, len(first_group), sum(cotransitive.values()))
    residue_ok: dict[int, list[bool]] = {}
    for key in sorted(first_group):
        N, residues = key
        if N not in residue_ok:
            residue_ok[N] = [
                bool(is_cap(PointSet(space, np.flatnonzero(labels % N == j)))) for j in range(N)
            ]
        if not all(residue_ok[N][j] for j in residues):
            continue
        ids = np.flatnonzero(np.isin(labels % N, residues))
        if is_cap(PointSet(space, ids)):
            result.caps.append((first_group[key], cotransitive[key], tuple(int(x) for x in ids)))
    return result


# --- Foulser-Kallaher two-orbit arithmetic -----------------------------------


@dataclass(frozen=True)
class FKParams:
    p: int
    d: int
    s: int
    m1: int
    v: int
    e: int = 1

    @property
    def N(self) -> int:
        return self.v * self.m1


def _mult_order(a: int, mod: int) -> int:
    a %= mod
    if math.gcd(a, mod) != 1:
        return 0
    o, x = 1, a
    while x != 1 % mod:
        x = x * a % mod
        o += 1
    return o


def fk_conditions(params: FKParams) -> dict[str, bool]:
    """Each arithmetic side condition of the two-orbit criterion, evaluated.

    These are necessary conditions only; that they suffice for two orbits
    is taken on trust, not checked.
    """
    from sympy import isprime, primefactors

    p, d, s, m1, v, e = params.p, params.d, params.s, params.m1, params.v, params.e
    return {
        "primes of m1 divide p^s - 1": all((p**s - 1) % ell == 0 for ell in primefactors(m1)),
        "v is an odd prime": isprime(v) and v != 2,
        "ord_v(p^(s m1)) = v - 1": isprime(v) and _mult_order(p ** (s * m1), v) == v - 1,
        "gcd(e, m1) = 1": math.gcd(e, m1) == 1,
        "m1 s (v-1) divides d": d % (m1 * s * (v - 1)) == 0,
        "N divides p^d - 1": (p**d - 1) % params.N == 0,
    }


def fk_orbit_lengths(params: FKParams) -> tuple[int, int]:
    """Vector-orbit lengths ``m1 (p^d-1)/N`` and ``(v-1) m1 (p^d-1)/N``."""
    if params.v == 2 or params.v < 2:
        raise ValueError("v must be an odd prime")
    total = params.p**params.d - 1
    if total % params.N:
        raise DivisibilityViolation(f"N = {params.N} does not divide {total}")
    small = params.m1 * total // params.N
    return small, (params.v - 1) * small


class ParityVerdict(str, enum.Enum):
    INCOMPATIBLE = "incompatible"
    NOT_REFUTED = "not-refuted-by-parity"


def a1_parity_refutation(p: int, d: int, q: int, point_size: int) -> ParityVerdict:
    """In characteristic 2 the smaller A1 vector orbit has odd length.

    A point orbit of ``point_size`` points is a vector orbit of
    ``point_size * (q-1)`` vectors; if that is even the orbit cannot be the
    smaller A1 orbit.
    """
    if p != 2:
        raise ValueError("the parity argument needs p = 2")
    if (2**d - 1) % (q - 1):
        raise DivisibilityViolation(f"GF({q}) is not a subfield of GF(2^{d})")
    vectors = point_size * (q - 1)
    return ParityVerdict.INCOMPATIBLE if vectors % 2 == 0 else ParityVerdict.NOT_REFUTED
