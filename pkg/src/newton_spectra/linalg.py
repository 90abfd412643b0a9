"""Exact linear algebra over Q (fractions.Fraction), plus small univariate
polynomial and integer-lattice helpers used across the package.

Matrices are plain lists of lists of Fraction, vectors are lists of Fraction.
Everything is deterministic: pivoting always takes the first usable row/column,
free variables are always set to zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def zeros(m: int, n: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> list[list[Fraction]]:
    a = zeros(n, n)
    for i in range(n):
        a[i][i] = Fraction(1)
    return a


def mat_copy(a):
    return [row[:] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    c = frac(c)
    return [[c * x for x in row] for row in a]


def mat_vec(a, v):
    return [sum((c * x for c, x in zip(row, v)), Fraction(0)) for row in a]


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def is_zero_matrix(a) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def trace(a) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def rref(a):
    """Reduced row echelon form. Returns (rows, pivot_columns).

    Does not mutate the input.  Pivot = first nonzero entry scanning rows in
    order, so the result is canonical for a fixed row/column order.
    """
    rows = [list(map(frac, r)) for r in a]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(a) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def solve_linear(a, b):
    """One solution x of A x = b with all free variables zero, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [list(map(frac, a[i])) + [frac(b[i])] for i in range(m)]
    rows, pivots = rref(aug)
    for row in rows:
        if all(x == 0 for x in row[:n]) and row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        if c == n:
            return None
        x[c] = rows[r][n]
    return x


def nullspace(a):
    """Basis of the kernel of A, one vector per free column (that column = 1)."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [[Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)]
    rows, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for c in range(n):
        if c in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[c] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][c]
        basis.append(v)
    return basis


def charpoly(a):
    """Characteristic polynomial det(S*I - A), coefficients ascending in S.

    Faddeev-LeVerrier; exact over Fraction.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = identity(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return coeffs


# ---------------------------------------------------------------------------
# univariate polynomials over Q, dense ascending coefficient lists


def pol_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def pol_deg(p) -> int:
    p = pol_trim(p)
    return len(p) - 1 if p else -1


def pol_add(p, q):
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return pol_trim(out)


def pol_sub(p, q):
    return pol_add(p, [-c for c in q])


def pol_scale(p, c):
    c = frac(c)
    if c == 0:
        return []
    return [c * x for x in p]


def pol_mul(p, q):
    p, q = pol_trim(p), pol_trim(q)
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return pol_trim(out)


def pol_shift(p, k: int):
    """Multiply by S^k (k >= 0)."""
    p = pol_trim(p)
    if not p:
        return []
    return [Fraction(0)] * k + list(p)


def pol_deriv(p):
    return pol_trim([i * c for i, c in enumerate(p)][1:])


def pol_eval(p, x):
    x = frac(x)
    acc = Fraction(0)
    for c in reversed(pol_trim(p)):
        acc = acc * x + c
    return acc


def pol_divmod(p, q):
    p, q = list(pol_trim(p)), pol_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(0, len(p) - dq)
    while len(p) - 1 >= dq and p:
        c = p[-1] / lead
        k = len(p) - 1 - dq
        quot[k] = c
        for i in range(len(q)):
            p[k + i] -= c * q[i]
        p = pol_trim(p)
    return pol_trim(quot), p


def pol_gcd(p, q):
    p, q = pol_trim(p), pol_trim(q)
    while q:
        p, q = q, pol_divmod(p, q)[1]
    if p:
        p = [c / p[-1] for c in p]
    return p


def rational_roots(p):
    """All rational roots with multiplicity.

    Returns (roots, remainder) where roots is a sorted list of (root, mult)
    and remainder is the (rational-root-free) cofactor, ascending coeffs.
    """
    p = pol_trim(p)
    if not p:
        raise ValueError("zero polynomial")
    # strip S^v
    v = 0
    while p[0] == 0:
        p = p[1:]
        v += 1
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ip = [int(c * den) for c in p]
    roots = {}
    if v:
        roots[Fraction(0)] = v
    def divisors(k):
        k = abs(k)
        out = []
        d = 1
        while d * d <= k:
            if k % d == 0:
                out.append(d)
                out.append(k // d)
            d += 1
        return sorted(set(out))
    changed = True
    while changed and len(p) > 1:
        changed = False
        a0, an = ip[0], ip[-1]
        if a0 == 0:  # can only happen through exact cancellation; re-strip
            p = pol_trim(p)
            while p and p[0] == 0:
                p = p[1:]
                roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
            ip = [int(c * den) for c in p]
            continue
        cands = []
        for num in divisors(a0):
            for d in divisors(an):
                cands.append(Fraction(num, d))
                cands.append(Fraction(-num, d))
        for r in sorted(set(cands)):
            if pol_eval(p, r) == 0:
                p, rem = pol_divmod(p, [-r, Fraction(1)])
                assert not rem
                roots[r] = roots.get(r, 0) + 1
                den = 1
                for c in p:
                    den = den * c.denominator // gcd(den, c.denominator)
                ip = [int(c * den) for c in p]
                changed = True
                break
    return sorted(roots.items()), p


# ---------------------------------------------------------------------------
# integer lattice utilities (small sizes only)


def hnf_with_transform(a):
    """Row Hermite form of an integer matrix with unimodular transform.

    Returns (H, U) with U*a == H, U in GL_m(Z), H in (lower-staircase) row
    echelon form over Z.  Only used on tiny matrices.
    """
    h = [list(map(int, row)) for row in a]
    m = len(h)
    n = len(h[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        # gcd out column c below row r
        piv = None
        for i in range(r, m):
            if h[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            while h[i][c] != 0:
                q = h[r][c] // h[i][c]
                h[r] = [x - q * y for x, y in zip(h[r], h[i])]
                u[r] = [x - q * y for x, y in zip(u[r], u[i])]
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            if h[r][c] != 0:
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == m:
            break
    return h, u


def int_kernel(a):
    """Primitive basis (rows) of the integer kernel {x in Z^n : a x = 0}."""
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    at = [list(col) for col in zip(*a)]  # n x m
    h, u = hnf_with_transform(at)
    out = []
    for i in range(n):
        if all(x == 0 for x in h[i]):
            out.append(u[i])
    return out


def saturate_rows(a):
    """Basis of the saturation of the integer row span of a (rows)."""
    k1 = int_kernel(a)
    if not k1:
        # full row rank: the saturation is all of Z^n
        n = len(a[0]) if a else 0
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return int_kernel(k1)
