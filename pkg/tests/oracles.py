"""Slow, independent reference implementations used as test oracles."""

import itertools

from capgeom.caps import PointSet, is_cap


def digits(x, p, h):
    return [(x // p**i) % p for i in range(h)]


def undigits(c, p):
    return sum(int(v) * p**i for i, v in enumerate(c))


def poly_mulmod(a, b, modulus, p):
    """Schoolbook product of coefficient lists (constant first) reduced mod a monic polynomial."""
    h = len(modulus) - 1
    prod = [0] * (2 * h)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, h - 1, -1):
        c = prod[k]
        if c:
            for i in range(h + 1):
                prod[k - h + i] = (prod[k - h + i] - c * modulus[i]) % p
    return prod[:h]


def field_mul(x, y, p, modulus):
    h = len(modulus) - 1
    return undigits(poly_mulmod(digits(x, p, h), digits(y, p, h), modulus, p), p)


def field_add(x, y, p, h):
    return undigits([(a + b) % p for a, b in zip(digits(x, p, h), digits(y, p, h))], p)


def x_period(modulus, p):
    """Multiplicative order of x modulo the polynomial (None if x is not invertible)."""
    h = len(modulus) - 1
    if modulus[0] % p == 0:
        return None
    one = [1] + [0] * (h - 1)
    x = ([0, 1] + [0] * h)[:h] if h > 1 else [(-modulus[0]) % p]
    cur, k = x, 1
    while cur != one:
        cur = poly_mulmod(cur, x, modulus, p)
        k += 1
        if k > p**h:
            return None
    return k


def least_primitive_bruteforce(p, h):
    # tuples sort with the constant term most significant
    cands = sorted(itertools.product(range(p), repeat=h))
    for low in cands:
        f = tuple(low) + (1,)
        if x_period(f, p) == p**h - 1:
            return f
    return None


def rank_mod(rows, F):
    """Rank by Gaussian elimination using only the field's scalar methods."""
    rows = [list(r) for r in rows]
    rk, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rk < len(rows) and col < ncols:
        piv = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = F.inv(rows[rk][col])
        rows[rk] = [F.mul(inv, v) for v in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][col]:
                c = rows[i][col]
                rows[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(rows[i], rows[rk])]
        rk += 1
        col += 1
    return rk


def collinear_triples(space, ids):
    """Every collinear triple of the given PointIds, by rank."""
    F = space.field
    out = []
    for a, b, c in itertools.combinations(sorted(ids), 3):
        if rank_mod([space.point(a), space.point(b), space.point(c)], F) == 2:
            out.append((a, b, c))
    return out


def chord_count(space, ids, x):
    """Number of lines through x meeting the set in exactly two points."""
    F = space.field
    members = sorted(ids)
    count = 0
    for a, b in itertools.combinations(members, 2):
        if rank_mod([space.point(a), space.point(b), space.point(x)], F) == 2:
            count += 1
    return count


def random_cap(S, rng, size=None):
    """Greedy cap built from a random point order."""
    cap: list[int] = []
    for pid in rng.permutation(S.n):
        if size is not None and len(cap) == size:
            break
        if is_cap(PointSet(S, cap + [int(pid)])):
            cap.append(int(pid))
    return PointSet(S, cap)
