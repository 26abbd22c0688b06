"""Points, lines and hyperplanes of PG(r, q), plus quadratic and Hermitian forms.

Points are stored as canonical coordinate tuples (first nonzero entry 1)
listed in lexicographic order; a point's PointId is its position in that
list.  Coordinates use the integer element encoding of :mod:`capgeom.field`.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    DuplicatePoints,
    FieldNotSquareOrder,
    SpaceTooLarge,
    ZeroVector,
)
from .field import FieldSpec, make_field

MAX_POINTS = 100_000
MAX_VECTORS = 1 << 22


def normalize(F: FieldSpec, v: Sequence[int]) -> tuple[int, ...]:
    """Scale ``v`` so that its first nonzero coordinate is 1."""
    lead = next((x for x in v if x), 0)
    if lead == 0:
        raise ZeroVector("the zero vector is not a projective point")
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def collinear(F: FieldSpec, a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> bool:
    """True iff the three (distinct) points lie on a common line."""
    na, nb, nc = normalize(F, a), normalize(F, b), normalize(F, c)
    if len({na, nb, nc}) < 3:
        raise DuplicatePoints("collinearity needs three distinct points")
    return linalg.rank(F, [na, nb, nc]) <= 2


class ProjectiveSpace:
    """PG(r, q) with dense PointIds.

    Build through :func:`build_space`, which caches one instance per
    ``(q, r)``.
    """

    def __init__(self, F: FieldSpec, r: int):
        self.field = F
        self.r = r
        self.dim = r + 1
        q = F.q
        self.q = q
        self.n = (q**self.dim - 1) // (q - 1)
        self._weights = q ** np.arange(r, -1, -1, dtype=np.int64)
        codes = np.arange(q**self.dim, dtype=np.int64)
        vecs = (codes[:, None] // self._weights[None, :]) % q
        nz = vecs != 0
        first = np.where(nz.any(axis=1), nz.argmax(axis=1), -1)
        lead = np.where(first >= 0, vecs[np.arange(len(vecs)), np.maximum(first, 0)], 0)
        canon = lead == 1
        self.points = vecs[canon]
        self.points.setflags(write=False)
        assert len(self.points) == self.n
        # map every nonzero vector code to the PointId of its normalisation
        code_to_id = np.full(q**self.dim, -1, dtype=np.int64)
        mul = F.mul_table
        ids = np.arange(self.n)
        for lam in range(1, q):
            code_to_id[self.encode(mul[lam, self.points])] = ids
        self._code_to_id = code_to_id

    def __repr__(self) -> str:
        return f"PG({self.r},{self.q})"

    def __reduce__(self):
        return (build_space, (self.field, self.r))

    def __len__(self) -> int:
        return self.n

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        return vecs @ self._weights

    def ids_of(self, vecs: np.ndarray) -> np.ndarray:
        """PointIds for an array of vectors (``-1`` for zero vectors)."""
        vecs = np.asarray(vecs, dtype=np.int64)
        return self._code_to_id[self.encode(vecs)]

    def id_of(self, v: Sequence[int]) -> int:
        if len(v) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(v)}")
        pid = int(self._code_to_id[self.encode(np.asarray(v, dtype=np.int64))])
        if pid < 0:
            raise ZeroVector("the zero vector is not a projective point")
        return pid

    def point(self, pid: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.points[pid])

    def scale_add(self, lam, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Coordinate-wise ``lam * A + B`` (broadcasting)."""
        F = self.field
        return F.add_table[F.mul_table[lam, A], B]

    def third_points(self, a, b) -> np.ndarray:
        """PointIds of ``lam*a + b`` for every nonzero ``lam``.

        With arrays of ids of length ``k`` the result has shape ``(k, q-1)``;
        these are the points of line ``ab`` other than ``a`` and ``b``.
        """
        A = self.points[np.asarray(a)]
        B = self.points[np.asarray(b)]
        lam = np.arange(1, self.q).reshape((-1,) + (1,) * A.ndim)
        vecs = self.scale_add(lam, A[None], B[None])
        ids = self.ids_of(vecs)
        return np.moveaxis(ids, 0, -1)

    def line_points(self, a: int, b: int) -> np.ndarray:
        """Sorted PointIds of the line through points ``a`` and ``b``."""
        if a == b:
            raise DuplicatePoints("a line needs two distinct points")
        return np.sort(np.concatenate(([a, b], self.third_points(a, b))))

    @functools.cached_property
    def _lines(self) -> np.ndarray:
        # a line is listed once, from its two smallest points a < b
        out = []
        for a in range(self.n - 1):
            b = np.arange(a + 1, self.n)
            third = self.third_points(np.full(len(b), a), b)
            keep = third.min(axis=1) > b
            if keep.any():
                rows = np.column_stack([np.full(keep.sum(), a), b[keep], np.sort(third[keep], axis=1)])
                out.append(rows)
        lines = np.concatenate(out) if out else np.zeros((0, self.q + 1), dtype=np.int64)
        lines.setflags(write=False)
        return lines

    def lines(self) -> np.ndarray:
        """All lines as an array of shape ``(#lines, q+1)``, lexicographic."""
        return self._lines

    def hyperplane_points(self, coeffs: Sequence[int]) -> np.ndarray:
        """PointIds x with ``coeffs . x == 0``."""
        if len(coeffs) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coefficients")
        if not any(coeffs):
            raise ZeroVector("a hyperplane needs a nonzero covector")
        return np.flatnonzero(self.dot(coeffs) == 0)

    def dot(self, coeffs: Sequence[int], ids=None) -> np.ndarray:
        F = self.field
        pts = self.points if ids is None else self.points[np.asarray(ids)]
        acc = np.zeros(len(pts), dtype=np.int64)
        for i, c in enumerate(coeffs):
            if c:
                acc = F.add_table[acc, F.mul_table[c, pts[:, i]]]
        return acc

    def hyperplanes(self) -> Iterator[np.ndarray]:
        """Every hyperplane, indexed by canonical covectors in PointId order."""
        for pid in range(self.n):
            yield self.hyperplane_points(self.point(pid))

    def transform(self, matrix, ids=None, frobenius: int = 0) -> np.ndarray:
        """Image PointIds of ``x -> matrix . x^(p^frobenius)``."""
        F = self.field
        pts = self.points if ids is None else self.points[np.asarray(ids)]
        if frobenius % F.h:
            e = pow(F.p, frobenius % F.h)
            pts = np.array([F.pow(a, e) for a in range(F.q)])[pts]
        M = np.asarray(matrix, dtype=np.int64)
        out = np.zeros_like(pts)
        for i in range(self.dim):
            acc = np.zeros(len(pts), dtype=np.int64)
            for j in range(self.dim):
                if M[i, j]:
                    acc = F.add_table[acc, F.mul_table[M[i, j], pts[:, j]]]
            out[:, i] = acc
        return self.ids_of(out)


@functools.lru_cache(maxsize=32)
def _cached_space(p: int, h: int, r: int) -> ProjectiveSpace:
    return ProjectiveSpace(make_field(p, h), r)


def build_space(F: FieldSpec, r: int, max_points: int = MAX_POINTS) -> ProjectiveSpace:
    """PG(r, q) over ``F``; points in lexicographic order of canonical coordinates."""
    if r < 1:
        raise ValueError("projective dimension must be >= 1")
    n = (F.q ** (r + 1) - 1) // (F.q - 1)
    if n > max_points or F.q ** (r + 1) > MAX_VECTORS:
        raise SpaceTooLarge(f"PG({r},{F.q}) has {n} points")
    return _cached_space(F.p, F.h, r)


def pg(r: int, q: int) -> ProjectiveSpace:
    """Shorthand: ``pg(3, 4)`` is PG(3, 4)."""
    from .field import field_of_order

    return build_space(field_of_order(q), r)


# --- forms --------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticFormSpec:
    """``Q(x) = sum_{i<=j} coeffs[(i, j)] x_i x_j``."""

    kind: str
    dim: int
    coeffs: tuple[tuple[int, int, int], ...]  # (i, j, c) with i <= j
    witt_index: int | None = None

    def __post_init__(self):
        if self.kind not in ("elliptic", "hyperbolic", "parabolic", "custom"):
            raise ValueError(f"unknown quadratic form kind {self.kind!r}")


def _irreducible_quadratic(F: FieldSpec) -> tuple[int, int]:
    """Least ``(a, b)`` (lexicographic) with ``t^2 + a t + b`` irreducible."""
    for a in range(F.q):
        for b in range(F.q):
            if all(F.add(F.add(F.mul(t, t), F.mul(a, t)), b) for t in range(F.q)):
                return a, b
    raise AssertionError("unreachable")  # pragma: no cover


def hyperbolic_form(F: FieldSpec, dim: int = 4) -> QuadraticFormSpec:
    """``x0 x1 + x2 x3 + ...`` on V(dim, q), dim even."""
    if dim % 2:
        raise DimensionMismatch("hyperbolic forms need even dimension")
    coeffs = tuple((2 * i, 2 * i + 1, 1) for i in range(dim // 2))
    return QuadraticFormSpec("hyperbolic", dim, coeffs, dim // 2)


def elliptic_form(F: FieldSpec, dim: int = 4) -> QuadraticFormSpec:
    """Hyperbolic pairs followed by ``x^2 + a x y + b y^2`` with ``t^2+at+b`` irreducible.

    For dim 4 this is ``x0 x1 + x2^2 + a x2 x3 + b x3^2``.
    """
    if dim % 2 or dim < 2:
        raise DimensionMismatch("elliptic forms need even dimension")
    a, b = _irreducible_quadratic(F)
    coeffs = [(2 * i, 2 * i + 1, 1) for i in range(dim // 2 - 1)]
    u, w = dim - 2, dim - 1
    coeffs += [(u, u, 1), (u, w, a), (w, w, b)]
    return QuadraticFormSpec("elliptic", dim, tuple(c for c in coeffs if c[2]), dim // 2 - 1)


def parabolic_form(F: FieldSpec, dim: int = 3) -> QuadraticFormSpec:
    """``x0^2 + x1 x2 + x3 x4 + ...`` on V(dim, q), dim odd."""
    if dim % 2 == 0:
        raise DimensionMismatch("parabolic forms need odd dimension")
    coeffs = ((0, 0, 1),) + tuple((2 * i + 1, 2 * i + 2, 1) for i in range(dim // 2))
    return QuadraticFormSpec("parabolic", dim, coeffs, dim // 2)


def eval_quadratic(F: FieldSpec, form: QuadraticFormSpec, x: Sequence[int]) -> int:
    if len(x) != form.dim:
        raise DimensionMismatch(f"form has dimension {form.dim}, vector {len(x)}")
    acc = 0
    for i, j, c in form.coeffs:
        acc = F.add(acc, F.mul(c, F.mul(x[i], x[j])))
    return acc


def quadratic_values(space: ProjectiveSpace, form: QuadraticFormSpec) -> np.ndarray:
    """Q evaluated at the canonical representative of every point."""
    if form.dim != space.dim:
        raise DimensionMismatch(f"form has dimension {form.dim}, space {space.dim}")
    F = space.field
    add, mul = F.add_table, F.mul_table
    X = space.points
    acc = np.zeros(space.n, dtype=np.int64)
    for i, j, c in form.coeffs:
        acc = add[acc, mul[c, mul[X[:, i], X[:, j]]]]
    return acc


def singular_points(space: ProjectiveSpace, form: QuadraticFormSpec) -> np.ndarray:
    """PointIds of the projective zeros of ``form``."""
    return np.flatnonzero(quadratic_values(space, form) == 0)


@dataclass(frozen=True)
class HermitianFormSpec:
    """``h(x) = sum_ij x_i^{q'} gram[i][j] x_j`` on V(dim, q), ``q = q'^2``."""

    dim: int
    gram: tuple[tuple[int, ...], ...]
    root_order: int  # q'


def _sqrt_order(F: FieldSpec) -> int:
    if F.h % 2:
        raise FieldNotSquareOrder(f"{F} does not have square order")
    return math.isqrt(F.q)


def hermitian_form(F: FieldSpec, dim: int = 3, gram=None) -> HermitianFormSpec:
    """The standard ``sum x_i^(q'+1)`` unless another Gram matrix is given."""
    qq = _sqrt_order(F)
    if gram is None:
        gram = linalg.identity(dim)
    gram = tuple(tuple(int(v) for v in row) for row in gram)
    if len(gram) != dim or any(len(row) != dim for row in gram):
        raise DimensionMismatch("Gram matrix shape does not match dimension")
    for i, j in itertools.product(range(dim), repeat=2):
        if gram[j][i] != F.pow(gram[i][j], qq):
            raise ValueError("Gram matrix is not Hermitian")
    if linalg.rank(F, gram) < dim:
        raise ValueError("Hermitian form is degenerate")
    return HermitianFormSpec(dim, gram, qq)


def eval_hermitian(F: FieldSpec, form: HermitianFormSpec, x: Sequence[int]) -> int:
    if len(x) != form.dim:
        raise DimensionMismatch(f"form has dimension {form.dim}, vector {len(x)}")
    conj = [F.pow(v, form.root_order) for v in x]
    acc = 0
    for i in range(form.dim):
        for j in range(form.dim):
            if form.gram[i][j]:
                acc = F.add(acc, F.mul(conj[i], F.mul(form.gram[i][j], x[j])))
    return acc


def isotropic_points(space: ProjectiveSpace, form: HermitianFormSpec) -> np.ndarray:
    F = space.field
    _sqrt_order(F)
    if form.dim != space.dim:
        raise DimensionMismatch(f"form has dimension {form.dim}, space {space.dim}")
    add, mul = F.add_table, F.mul_table
    conj = np.array([F.pow(a, form.root_order) for a in range(F.q)])
    X = space.points
    acc = np.zeros(space.n, dtype=np.int64)
    for i in range(form.dim):
        for j in range(form.dim):
            c = form.gram[i][j]
            if c:
                acc = add[acc, mul[conj[X[:, i]], mul[c, X[:, j]]]]
    return np.flatnonzero(acc == 0)
