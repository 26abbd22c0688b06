"""Arithmetic in GF(p^h).

Elements are plain ints.  An element with polynomial-basis coefficients
``c_0 + c_1 t + ... + c_{h-1} t^{h-1}`` (reduced modulo the field's modulus)
is encoded as ``c_0 + c_1 p + ... + c_{h-1} p^{h-1}``, so 0 and 1 are the
additive and multiplicative identities and the prime subfield is
``{0, ..., p-1}`` with its usual arithmetic.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator, Sequence

import numpy as np
from sympy import factorint, isprime

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NotASubfield,
    NotPrime,
)

MAX_FIELD_ORDER = 1 << 20
TABLE_LIMIT = 1024


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, h)`` with ``q == p**h``; raise ``NotPrime`` otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, h),) = f.items()
    return int(p), int(h)


def _is_generator(x: int, n: int, primes: Sequence[int], powfn) -> bool:
    return all(powfn(x, n // ell) != 1 for ell in primes)


# --- polynomials over a FieldSpec -------------------------------------------
# Coefficient lists are low degree first and carry the leading coefficient.


def _poly_eval(f: Sequence[int], x: int, F: "FieldSpec") -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _batch_mulmod(a: np.ndarray, b: np.ndarray, low: np.ndarray, F: "FieldSpec") -> np.ndarray:
    """Row-wise ``a * b mod f`` for monic ``f`` with lower coefficients ``low``."""
    add, mul = F.add_table, F.mul_table
    rows, deg = a.shape
    prod = np.zeros((rows, 2 * deg - 1), dtype=np.int64)
    for i in range(deg):
        seg = prod[:, i : i + deg]
        prod[:, i : i + deg] = add[seg, mul[a[:, i : i + 1], b]]
    neg_low = F.neg_table[low]
    for k in range(2 * deg - 2, deg - 1, -1):
        c = prod[:, k : k + 1]
        seg = prod[:, k - deg : k]
        prod[:, k - deg : k] = add[seg, mul[c, neg_low]]
    return prod[:, :deg]


def _batch_x_power(e: int, low: np.ndarray, F: "FieldSpec") -> np.ndarray:
    rows, deg = low.shape
    res = np.zeros((rows, deg), dtype=np.int64)
    res[:, 0] = 1
    base = np.zeros((rows, deg), dtype=np.int64)
    if deg == 1:
        base[:, 0] = F.neg_table[low[:, 0]]
    else:
        base[:, 1] = 1
    while e:
        if e & 1:
            res = _batch_mulmod(res, base, low, F)
        base = _batch_mulmod(base, base, low, F)
        e >>= 1
    return res


def _primitive_mask(low: np.ndarray, F: "FieldSpec") -> np.ndarray:
    rows, deg = low.shape
    n = F.q**deg - 1
    one = np.zeros(deg, dtype=np.int64)
    one[0] = 1
    ok = low[:, 0] != 0
    if deg > 1:
        add, mul = F.add_table, F.mul_table
        for a in range(1, F.q):
            acc = np.ones(rows, dtype=np.int64)
            for i in range(deg - 1, -1, -1):
                acc = add[mul[acc, a], low[:, i]]
            ok &= acc != 0
    idx = np.flatnonzero(ok)
    # t must have order exactly n in F[t]/(f); only a field has such a unit
    for e, want in [(n, True)] + [(n // ell, False) for ell in factorint(n)]:
        if idx.size == 0:
            break
        hit = (_batch_x_power(e, low[idx], F) == one).all(axis=1)
        idx = idx[hit == want]
    mask = np.zeros(rows, dtype=bool)
    mask[idx] = True
    return mask


def is_primitive_polynomial(f: Sequence[int], F: "FieldSpec") -> bool:
    """True iff the monic ``f`` (low degree first) is primitive over ``F``."""
    deg = len(f) - 1
    if deg < 1 or f[-1] != 1:
        return False
    return bool(_primitive_mask(np.asarray([f[:-1]], dtype=np.int64), F)[0])


def monic_polynomials(F: "FieldSpec", degree: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of ``degree`` in lexicographic order of ``(c_0, ..., c_{degree-1})``."""
    for tail in itertools.product(range(F.q), repeat=degree):
        yield tail + (1,)


def least_primitive_polynomial(F: "FieldSpec", degree: int, chunk: int = 4096) -> tuple[int, ...]:
    """Lexicographically least primitive monic polynomial, by exhaustive testing."""
    total = F.q**degree
    weights = F.q ** np.arange(degree - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        low = (codes[:, None] // weights[None, :]) % F.q
        hits = np.flatnonzero(_primitive_mask(low, F))
        if hits.size:
            return tuple(int(c) for c in low[hits[0]]) + (1,)
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


# --- the field ----------------------------------------------------------------


class FieldSpec:
    """GF(p^h) backed by exp/log tables.

    Use :func:`make_field` rather than instantiating directly; instances are
    cached and shared.
    """

    def __init__(self, p: int, h: int, modulus: tuple[int, ...], exp: np.ndarray):
        self.p = p
        self.h = h
        self.q = p**h
        self.modulus = modulus
        n = self.q - 1
        self.exp = exp  # length 2n so exp[i + j] needs no reduction
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[exp[:n]] = np.arange(n)
        self.omega = int(exp[1 % n]) if n > 1 else 1
        digit0 = np.arange(self.q) % p
        plus_one = np.arange(self.q) - digit0 + (digit0 + 1) % p
        # zech[i] = log(1 + omega^i), -1 when that sum is zero
        self._zech = self.log[plus_one[exp[:n]]]
        self._exp_list = exp.tolist()
        self._log_list = self.log.tolist()
        self._zech_list = self._zech.tolist()
        self._half = n // 2 if p != 2 else 0

    def __repr__(self) -> str:
        return f"GF({self.q})" if self.h == 1 else f"GF({self.p}^{self.h})"

    def __reduce__(self):
        return (make_field, (self.p, self.h))

    @property
    def order(self) -> int:
        return self.q

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # scalar arithmetic on int encodings
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if self.p == 2:
            return a ^ b
        la = self._log_list[a]
        z = self._zech_list[(self._log_list[b] - la) % (self.q - 1)]
        return 0 if z < 0 else self._exp_list[la + z]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self._exp_list[self._log_list[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        return self._exp_list[(-self._log_list[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise DivisionByZero(f"0 has no inverse in {self}")
            return 1 if n == 0 else 0
        return self._exp_list[(self._log_list[a] * n) % (self.q - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        """``a ** (p ** k)``."""
        return self.pow(a, pow(self.p, k % self.h, self.q - 1) if self.q > 2 else 1)

    def order_of(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        from math import gcd

        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        return (self.q - 1) // gcd(self._log_list[a], self.q - 1)

    def is_square(self, a: int) -> bool:
        return a == 0 or self.p == 2 or self._log_list[a] % 2 == 0

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    # vectorised tables, built on first use
    @functools.cached_property
    def add_table(self) -> np.ndarray:
        if self.q > TABLE_LIMIT:
            raise FieldTooLarge(f"{self} too large for dense tables")
        t = np.empty((self.q, self.q), dtype=np.int64)
        for a in range(self.q):
            t[a] = [self.add(a, b) for b in range(self.q)]
        return t

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        if self.q > TABLE_LIMIT:
            raise FieldTooLarge(f"{self} too large for dense tables")
        t = np.zeros((self.q, self.q), dtype=np.int64)
        la = self.log[1:]
        t[1:, 1:] = self.exp[la[:, None] + la[None, :]]
        return t

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @functools.cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)


class FieldElement:
    """Operator-friendly wrapper around an element of a :class:`FieldSpec`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is not an element of {field}")
        self.field = field
        self.value = int(value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int) and 0 <= other < self.field.p:
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, k: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field}({self.value})"


def _prime_field(p: int) -> FieldSpec:
    primes = list(factorint(p - 1)) if p > 2 else []
    # modulus t + c0 has root -c0; take the least c0 whose root generates
    c0 = next(
        c for c in range(1, p) if _is_generator((-c) % p, p - 1, primes, lambda a, e: pow(a, e, p))
    )
    omega = (-c0) % p
    n = p - 1
    exp = np.empty(2 * n, dtype=np.int64)
    x = 1
    for i in range(2 * n):
        exp[i] = x
        x = x * omega % p
    return FieldSpec(p, 1, (c0, 1), exp)


@functools.lru_cache(maxsize=None)
def make_field(p: int, h: int = 1) -> FieldSpec:
    """Build GF(p^h) with the lexicographically least primitive modulus.

    Coefficient tuples ``(c_0, ..., c_{h-1})`` are compared constant term
    first.  The primitive element is the class of ``t``.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if p**h > MAX_FIELD_ORDER:
        raise FieldTooLarge(f"{p}^{h} exceeds {MAX_FIELD_ORDER}")
    base = _prime_field(p)
    if h == 1:
        return base
    modulus = least_primitive_polynomial(base, h)
    q = p**h
    n = q - 1
    weights = [p**i for i in range(h)]
    digits = [1] + [0] * (h - 1)
    exp = np.empty(2 * n, dtype=np.int64)
    for i in range(n):
        exp[i] = sum(d * w for d, w in zip(digits, weights))
        top = digits[-1]
        digits = [0] + digits[:-1]
        if top:
            digits = [(d - top * m) % p for d, m in zip(digits, modulus)]
    exp[n:] = exp[:n]
    return FieldSpec(p, h, modulus, exp)


def field_of_order(q: int) -> FieldSpec:
    p, h = prime_power(q)
    return make_field(p, h)


def subfield_embed(small: FieldSpec, big: FieldSpec) -> dict[int, int]:
    """Injective homomorphism GF(s) -> GF(q) as an element map.

    The generator of the small field goes to ``omega^(k (q-1)/(s-1))`` for
    the least ``k`` making the image a root of the small field's modulus
    (``k = 1`` whenever that already works).
    """
    if small.p != big.p or big.h % small.h:
        raise NotASubfield(f"{small} is not a subfield of {big}")
    step = (big.q - 1) // (small.q - 1)
    f = small.modulus

    def is_root(x: int) -> bool:
        acc = 0
        for c in reversed(f):
            acc = big.add(big.mul(acc, x), c)
        return acc == 0

    if small.h == 1:
        return {a: a for a in range(small.q)}
    from math import gcd

    k = next(
        k
        for k in range(1, small.q - 1)
        if gcd(k, small.q - 1) == 1 and is_root(big.pow(big.omega, k * step))
    )
    beta = big.pow(big.omega, k * step)
    emb = {0: 0}
    for i in range(small.q - 1):
        emb[int(small.exp[i])] = big.pow(beta, i)
    return emb


def subfield_elements(big: FieldSpec, s: int) -> list[int]:
    """The elements of the unique subfield of order ``s`` inside ``big``, sorted."""
    p, j = prime_power(s)
    if p != big.p or big.h % j:
        raise NotASubfield(f"GF({s}) is not a subfield of {big}")
    return sorted(a for a in range(big.q) if big.pow(a, s) == a)
