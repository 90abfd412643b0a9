"""Birkhoff-type normal form for the connection pencil.

We look for a gauge P(theta) = I + theta P_1 + ... (entries of P_k allowed
only where deg(row) + k <= deg(column), so P is unipotent and polynomially
invertible) with

    B(theta) P + theta^2 P' = P (A_0 + theta A_inf).

At theta^0 this forces A_0 = B_0.  The primary solver additionally demands
A_inf = diag(basis degrees), which makes the whole system linear in the P_k;
when that system is infeasible a bounded fixed-point sweep is tried where
A_inf is frozen per sweep and recomputed as B_1 + [B_0, P_1].  A sweep result
whose A_inf still couples distinct degrees is post-composed with a constant
base change (entries allowed where deg(row) < deg(column), so it is still
filtration-compatible) that block-diagonalizes A_inf; the coupling blocks
have disjoint spectra, so that Sylvester-type system is uniquely solvable.
Every candidate must pass an exact residual check before being accepted;
otherwise a structured obstruction record is returned.

The module also carries the V-filtration side: the finite level-by-level
direct-sum test for a solution basis, the spectral test on A_inf, and the
graded model (Hodge-type filtration, its opposite, and the nilpotent N)
computed from truncated coordinate windows so it also applies to bases
without the triangular pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .brieskorn import ConnectionPencil
from .linalg import (
    charpoly,
    identity,
    mat_eq,
    mat_mul,
    mat_sub,
    nullspace,
    rank,
    rational_roots,
    rref,
    solve_linear,
    zeros,
)


# ---------------------------------------------------------------------------
# polynomial matrices: lists of constant matrices, ascending theta degree


def _pm_trim(mats):
    while mats and all(all(x == 0 for x in row) for row in mats[-1]):
        mats = mats[:-1]
    return mats


def _pm_mul(a, b):
    if not a or not b:
        return []
    mu = len(a[0])
    out = [zeros(mu, mu) for _ in range(len(a) + len(b) - 1)]
    for i, ma in enumerate(a):
        for j, mb in enumerate(b):
            prod = mat_mul(ma, mb)
            tgt = out[i + j]
            for r in range(mu):
                for c in range(mu):
                    tgt[r][c] += prod[r][c]
    return _pm_trim(out)


def _pm_sub(a, b):
    n = max(len(a), len(b))
    mu = len((a or b)[0])
    out = []
    for k in range(n):
        ma = a[k] if k < len(a) else zeros(mu, mu)
        mb = b[k] if k < len(b) else zeros(mu, mu)
        out.append(mat_sub(ma, mb))
    return _pm_trim(out)


def _pm_theta2_deriv(a):
    """theta^2 * d/dtheta of a matrix polynomial."""
    out = [zeros(len(a[0]), len(a[0]))] if a else []
    res = []
    for k, m in enumerate(a):
        if k == 0:
            continue
        res.append((k, m))
    top = max((k + 1 for k, _ in res), default=-1)
    if top < 0:
        return []
    mu = len(a[0])
    out = [zeros(mu, mu) for _ in range(top + 1)]
    for k, m in res:
        for r in range(mu):
            for c in range(mu):
                out[k + 1][r][c] += k * m[r][c]
    return _pm_trim(out)


def gauge_residual(pencil: ConnectionPencil, gauge, a0, ainf):
    """B P + theta^2 P' - P (A_0 + theta A_inf) as a matrix polynomial."""
    lhs = _pm_mul(list(pencil.matrices), list(gauge))
    lhs = _pm_sub(lhs, [m for m in _pm_mul(list(gauge), _pm_trim([a0, ainf]))])
    der = _pm_theta2_deriv(list(gauge))
    if der:
        lhs = _pm_sub(lhs, [[[-x for x in row] for row in m] for m in der])
    return _pm_trim(lhs)


# ---------------------------------------------------------------------------
# solving the gauge system


@dataclass
class BirkhoffSolution:
    gauge: tuple                 # (P_0, P_1, ..., P_K); P_0 = I unless a
                                 # constant split was applied
    a0: list
    ainf: list
    method: str                  # "diagonal-ansatz" | "sweep" | "sweep+split"
    sweeps: int = 0
    flags: dict = field(default_factory=dict)

    def to_json_obj(self):
        return {
            "status": "solved",
            "method": self.method,
            "sweeps": self.sweeps,
            "gauge": [[[str(x) for x in row] for row in m] for m in self.gauge],
            "a0": [[str(x) for x in row] for row in self.a0],
            "ainf": [[str(x) for x in row] for row in self.ainf],
            "flags": self.flags,
        }


@dataclass
class BirkhoffObstruction:
    message: str
    equations: int
    unknowns: int
    system_rank: int
    augmented_rank: int
    sweeps: int
    unsatisfiable: tuple = ()   # (theta degree, row, col) labels of culprit equations

    @property
    def residual_rank(self):
        return self.augmented_rank - self.system_rank

    def to_json_obj(self):
        return {
            "status": "obstruction",
            "message": self.message,
            "equations": self.equations,
            "unknowns": self.unknowns,
            "system_rank": self.system_rank,
            "augmented_rank": self.augmented_rank,
            "residual_rank": self.residual_rank,
            "unsatisfiable": [list(lbl) for lbl in self.unsatisfiable],
            "sweeps": self.sweeps,
        }


def _pattern_slots(degrees):
    """(k, i, j) triples where (P_k)_{ij} may be nonzero, k >= 1."""
    slots = []
    mu = len(degrees)
    kmax = int(floor(degrees[-1] - degrees[0]))
    for k in range(1, max(kmax, 0) + 1):
        for i in range(mu):
            for j in range(mu):
                if degrees[i] + k <= degrees[j]:
                    slots.append((k, i, j))
    return slots


def _build_linear_system(pencil, ainf, include_m1=True):
    """Rows of the linear system in the pattern unknowns, frozen A_inf."""
    degrees = pencil.degrees
    mu = pencil.mu
    bmats = pencil.matrices
    degb = len(bmats) - 1
    slots = _pattern_slots(degrees)
    index = {s: t for t, s in enumerate(slots)}
    kmax = max((k for k, _, _ in slots), default=0)
    rows = []
    rhs = []
    labels = []
    mtop = kmax + max(degb, 1)
    for m in range(1, mtop + 1):
        if m == 1 and not include_m1:
            continue
        for i in range(mu):
            for j in range(mu):
                row = [Fraction(0)] * len(slots)
                const = Fraction(0)
                # sum_k B_k P_{m-k}
                for k in range(0, min(m, degb) + 1):
                    l = m - k
                    if l == 0:
                        const += bmats[k][i][j]
                    elif l <= kmax:
                        for r in range(mu):
                            t = index.get((l, r, j))
                            if t is not None and bmats[k][i][r]:
                                row[t] += bmats[k][i][r]
                # + (m-1) P_{m-1}
                if m - 1 >= 1 and m - 1 <= kmax:
                    t = index.get((m - 1, i, j))
                    if t is not None:
                        row[t] += m - 1
                # - P_m B_0
                if m <= kmax:
                    for s in range(mu):
                        t = index.get((m, i, s))
                        if t is not None and bmats[0][s][j]:
                            row[t] -= bmats[0][s][j]
                # - P_{m-1} A_inf
                if m - 1 == 0:
                    const -= ainf[i][j]
                elif m - 1 <= kmax:
                    for s in range(mu):
                        t = index.get((m - 1, i, s))
                        if t is not None and ainf[s][j]:
                            row[t] -= ainf[s][j]
                if any(row) or const:
                    rows.append(row)
                    rhs.append(-const)
                    labels.append((m, i, j))
    return slots, rows, rhs, labels


def _gauge_from_solution(slots, x, mu, degrees):
    kmax = max((k for k, _, _ in slots), default=0)
    mats = [identity(mu)] + [zeros(mu, mu) for _ in range(kmax)]
    for t, (k, i, j) in enumerate(slots):
        mats[k][i][j] = x[t]
    return _pm_trim(mats) or [identity(mu)]


def _solve_system(slots, rows, rhs):
    if not slots:
        return [] if all(v == 0 for v in rhs) else None
    if not rows:
        # every equation was satisfied identically; pin the free unknowns
        return [Fraction(0)] * len(slots)
    return solve_linear(rows, rhs)


def _split_constant(ainf, degrees):
    """Constant base change Q with Q^-1 A_inf Q block diagonal by degree.

    Unknown entries of Q - I sit where deg(row) < deg(col), so conjugating a
    filtration-compatible pencil by Q keeps it filtration-compatible.  The
    linear system expresses A_inf Q = Q blockdiag(A_inf); it has a unique
    solution whenever the diagonal blocks of A_inf have pairwise disjoint
    spectra.  Returns None when A_inf is already block diagonal or the
    system is inconsistent.
    """
    mu = len(degrees)
    slots = [(i, j) for i in range(mu) for j in range(mu) if degrees[i] < degrees[j]]
    if all(ainf[i][j] == 0 for (i, j) in slots):
        return None
    index = {s: t for t, s in enumerate(slots)}
    dmat = [
        [ainf[i][j] if degrees[i] == degrees[j] else Fraction(0) for j in range(mu)]
        for i in range(mu)
    ]
    rows = []
    rhs = []
    for (i, j) in slots:
        row = [Fraction(0)] * len(slots)
        for k in range(mu):
            t = index.get((k, j))
            if t is not None and ainf[i][k]:
                row[t] += ainf[i][k]
            t = index.get((i, k))
            if t is not None and dmat[k][j]:
                row[t] -= dmat[k][j]
        rows.append(row)
        rhs.append(-ainf[i][j])
    x = solve_linear(rows, rhs)
    if x is None:
        return None
    q = identity(mu)
    for t, (i, j) in enumerate(slots):
        q[i][j] = x[t]
    return q


def _apply_constant_split(pencil, gauge, a0, ainf, degrees):
    """Post-compose a solution with the degree-splitting base change."""
    q = _split_constant(ainf, degrees)
    if q is None:
        return gauge, a0, ainf, False
    qinv = _invert(q)
    gauge = [mat_mul(p, q) for p in gauge]
    a0 = mat_mul(qinv, mat_mul(a0, q))
    ainf = mat_mul(qinv, mat_mul(ainf, q))
    res = gauge_residual(pencil, gauge, a0, ainf)
    assert not res, "constant split broke the gauge identity"
    return _pm_trim(gauge) or [identity(len(degrees))], a0, ainf, True


def _unsatisfiable_labels(rows, rhs, labels, cap=8):
    """Greedy certificate: equations that turn the running system inconsistent."""
    pivots = []
    bad = []
    for row, b, lab in zip(rows, rhs, labels):
        v = row + [b]
        for col, pv in pivots:
            c = v[col]
            if c:
                v = [x - c * y for x, y in zip(v, pv)]
        col = next((t for t, x in enumerate(v[:-1]) if x), None)
        if col is None:
            if v[-1]:
                bad.append(lab)
                if len(bad) >= cap:
                    break
        else:
            inv = Fraction(1) / v[col]
            pivots.append((col, [x * inv for x in v]))
    return tuple(bad)


def solve_birkhoff(pencil: ConnectionPencil, max_sweeps: int = 16):
    """Canonical normal-form attempt; solution or obstruction record."""
    mu = pencil.mu
    degrees = pencil.degrees
    d_mat = zeros(mu, mu)
    for i in range(mu):
        d_mat[i][i] = Fraction(degrees[i])
    b0 = pencil.matrices[0]
    b1 = pencil.matrices[1] if len(pencil.matrices) > 1 else zeros(mu, mu)

    slots, rows, rhs, labels = _build_linear_system(pencil, d_mat, include_m1=True)
    x = _solve_system(slots, rows, rhs)
    if x is not None:
        gauge = _gauge_from_solution(slots, x, mu, degrees)
        res = gauge_residual(pencil, gauge, b0, d_mat)
        assert not res, "diagonal ansatz produced a nonzero residual"
        return BirkhoffSolution(tuple(gauge), b0, d_mat, "diagonal-ansatz")

    # fixed-point sweeps with A_inf frozen per round
    ainf = [row[:] for row in b1]
    for sweep in range(1, max_sweeps + 1):
        slots2, rows2, rhs2, _ = _build_linear_system(pencil, ainf, include_m1=False)
        y = _solve_system(slots2, rows2, rhs2)
        if y is None:
            break
        gauge = _gauge_from_solution(slots2, y, mu, degrees)
        p1 = gauge[1] if len(gauge) > 1 else zeros(mu, mu)
        nxt = mat_sub(b1, mat_sub(mat_mul(p1, b0), mat_mul(b0, p1)))
        if mat_eq(nxt, ainf):
            res = gauge_residual(pencil, gauge, b0, ainf)
            if not res:
                gauge, a0, ainf, split = _apply_constant_split(
                    pencil, gauge, b0, ainf, degrees
                )
                return BirkhoffSolution(
                    tuple(gauge), a0, ainf,
                    "sweep+split" if split else "sweep", sweeps=sweep,
                )
            break
        ainf = nxt

    aug = [r + [v] for r, v in zip(rows, rhs)]
    return BirkhoffObstruction(
        message="gauge equations are inconsistent for a diagonal residue matrix "
        "and the fixed-point sweeps did not stabilize",
        equations=len(rows),
        unknowns=len(slots),
        system_rank=rank(rows) if rows else 0,
        augmented_rank=rank(aug) if aug else 0,
        sweeps=max_sweeps,
        unsatisfiable=_unsatisfiable_labels(rows, rhs, labels),
    )


def pencil_in_gauge(pencil: ConnectionPencil, gauge):
    """Rewrite the pencil in an arbitrary basis given by an invertible gauge.

    Returns the list of theta-coefficient matrices of
    P^(-1) (B P + theta^2 P'); a Birkhoff solution in the broad sense is one
    where this list has length <= 2 (degree <= 1 in theta).
    """
    gauge = _pm_trim([list(map(list, m)) for m in gauge]) or [identity(pencil.mu)]
    mu = pencil.mu
    lhs = _pm_mul(list(pencil.matrices), gauge)
    der = _pm_theta2_deriv(gauge)
    for k, m in enumerate(der):
        while len(lhs) <= k:
            lhs.append(zeros(mu, mu))
        for r in range(mu):
            for c in range(mu):
                lhs[k][r][c] += m[r][c]
    lhs = _pm_trim(lhs)
    p0inv = _invert(gauge[0])
    out = []
    for k in range(len(lhs)):
        acc = [row[:] for row in lhs[k]]
        for l in range(k):
            if k - l < len(gauge):
                prod = mat_mul(gauge[k - l], out[l])
                for r in range(mu):
                    for c in range(mu):
                        acc[r][c] -= prod[r][c]
        out.append(mat_mul(p0inv, acc))
    return _pm_trim(out)


def _invert(m):
    mu = len(m)
    aug = [row[:] + identity(mu)[i] for i, row in enumerate(m)]
    red, piv = rref(aug)
    assert piv == list(range(mu)), "gauge constant term is singular"
    return [row[mu:] for row in red]


# ---------------------------------------------------------------------------
# V-filtration checks


def _gauge_theta_slots(gauge, mu):
    """(P_k)_{ij} as dict (i, j) -> ascending coeff list."""
    out = {}
    for i in range(mu):
        for j in range(mu):
            coeffs = [g[i][j] for g in gauge]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if coeffs:
                out[(i, j)] = coeffs
    return out


def verify_v_solution(pencil: ConnectionPencil, gauge, scale: int):
    """Level-by-level direct sum test for the lattice spanned by the gauge.

    Checks, for every level alpha = r / scale up to the top degree, that
    (lattice cap V_alpha) + theta (ambient cap V_{alpha-1}) decomposes the
    ambient intersection with V_alpha as a direct sum.
    """
    degrees = pencil.degrees
    mu = pencil.mu
    slots = _gauge_theta_slots(gauge, mu)
    top = degrees[-1]
    details = []
    ok = True
    r = 0
    while Fraction(r, scale) <= top:
        alpha = Fraction(r, scale)
        monos = [
            (i, k)
            for i in range(mu)
            for k in range(int(floor(alpha - degrees[i])) + 1)
            if k + degrees[i] <= alpha
        ]
        mono_ix = {m: t for t, m in enumerate(monos)}
        # W cap V_alpha: constant combinations c with all high slots vanishing;
        # one constraint per slot (i, k) of order above alpha
        cons = sorted(
            {
                (i, k)
                for (i, _), coeffs in slots.items()
                for k, c in enumerate(coeffs)
                if c and k + degrees[i] > alpha
            }
        )
        cmat = []
        for (i, k) in cons:
            row = [Fraction(0)] * mu
            for j in range(mu):
                coeffs = slots.get((i, j))
                if coeffs and k < len(coeffs):
                    row[j] = coeffs[k]
            if any(row):
                cmat.append(row)
        basis_c = nullspace(cmat) if cmat else [
            [Fraction(1) if t == s else Fraction(0) for t in range(mu)] for s in range(mu)
        ]
        wvecs = []
        for c in basis_c:
            v = [Fraction(0)] * len(monos)
            for (i, k), t in mono_ix.items():
                acc = Fraction(0)
                for j in range(mu):
                    coeffs = slots.get((i, j))
                    if coeffs and k < len(coeffs):
                        acc += coeffs[k] * c[j]
                v[t] = acc
            wvecs.append(v)
        wvecs = [v for v in wvecs if any(v)]
        theta_monos = [m for m in monos if m[1] >= 1]
        stack = list(wvecs)
        for (i, k) in theta_monos:
            v = [Fraction(0)] * len(monos)
            v[mono_ix[(i, k)]] = Fraction(1)
            stack.append(v)
        dim_w = rank(wvecs) if wvecs else 0
        total = rank(stack) if stack else 0
        good = (
            dim_w + len(theta_monos) == len(monos) and total == len(monos)
        )
        details.append(
            {"level": str(alpha), "ambient": len(monos), "lattice": dim_w,
             "shifted": len(theta_monos), "ok": good}
        )
        if not good:
            ok = False
        r += 1
    return ok, details


def verify_v_plus(ainf, degrees, spectrum_pairs):
    """Spectral test: structure, semisimplicity, eigenvalue moduli = spectrum."""
    mu = len(degrees)
    detail = {}
    structural = True
    for i in range(mu):
        for j in range(mu):
            if degrees[i] > degrees[j] and ainf[i][j] != 0:
                structural = False
            if degrees[i] == degrees[j]:
                want = Fraction(degrees[i]) if i == j else Fraction(0)
                if ainf[i][j] != want:
                    structural = False
    detail["structure"] = structural
    cp = charpoly(ainf)
    roots, remainder = rational_roots(list(cp))
    if len(remainder) > 1:
        detail["eigenvalues"] = None
        detail["semisimple"] = False
        detail["spectral_match"] = False
        detail["note"] = "characteristic polynomial has irrational factors"
        return False, detail
    detail["eigenvalues"] = [(str(r), m) for r, m in roots]
    # semisimple iff the product of (A - r I) over distinct roots vanishes
    prod = identity(mu)
    for rt, _ in roots:
        shifted = [row[:] for row in ainf]
        for i in range(mu):
            shifted[i][i] -= rt
        prod = mat_mul(prod, shifted)
    semisimple = all(all(x == 0 for x in row) for row in prod)
    detail["semisimple"] = semisimple
    want = {}
    for a, m in spectrum_pairs:
        want[abs(a)] = want.get(abs(a), 0) + m
    got = {}
    for rt, m in roots:
        got[abs(rt)] = got.get(abs(rt), 0) + m
    match = want == got
    detail["spectral_match"] = match
    return structural and semisimple and match, detail


# ---------------------------------------------------------------------------
# graded model: Hodge-type filtration, its candidate opposite, and N


def _rref_basis(vectors):
    if not vectors:
        return []
    red, piv = rref(vectors)
    return [row for row in red if any(row)]


def _subspace_sum(a, b):
    return _rref_basis(list(a) + list(b))


def _subspace_intersect(a, b):
    if not a or not b:
        return []
    n = len(a[0])
    # solve sum x_i a_i = sum y_j b_j: nullspace of [a^T | -b^T]
    rows = []
    for c in range(n):
        rows.append([va[c] for va in a] + [-vb[c] for vb in b])
    out = []
    for v in nullspace(rows):
        vec = [Fraction(0)] * n
        for i, x in enumerate(v[: len(a)]):
            if x:
                for c in range(n):
                    vec[c] += x * a[i][c]
        if any(vec):
            out.append(vec)
    return _rref_basis(out)


def _subspace_contains(a, vectors):
    if not vectors:
        return True
    base = rank(list(a)) if a else 0
    return rank(list(a) + list(vectors)) == base


def graded_model(pencil: ConnectionPencil, gauge, scale: int):
    """Per residue class: N, the two filtrations, oppositeness and (B).

    Works on truncated coordinate windows, so the gauge need not have the
    triangular pattern; windows are widened until the filtration dimensions
    stabilize.
    """
    degrees = pencil.degrees
    mu = pencil.mu
    degb = len(pencil.matrices) - 1
    gauge = _pm_trim([list(map(list, m)) for m in gauge]) or [identity(mu)]
    degp = len(gauge) - 1
    nvar = int(degrees[-1]) if degrees[-1] == int(degrees[-1]) else int(floor(degrees[-1])) + 1
    classes = []
    residues = sorted({a - floor(a) for a in degrees})
    all_ok_opposite = True
    all_ok_b = True
    for rho in residues:
        idx = sorted(
            (i for i in range(mu) if degrees[i] - floor(degrees[i]) == rho),
            key=lambda i: (degrees[i], i),
        )
        dim = len(idx)
        pos = {i: t for t, i in enumerate(idx)}
        # N on the class: N e_i = alpha_i e_i - sum_j (B_{alpha_i - alpha_j + 1})_{ji} e_j
        nmat = zeros(dim, dim)
        for ti, i in enumerate(idx):
            nmat[ti][ti] += Fraction(degrees[i])
            for tj, j in enumerate(idx):
                m = degrees[i] - degrees[j] + 1
                if m == int(m) and 0 <= int(m) <= degb:
                    nmat[tj][ti] -= pencil.matrices[int(m)][j][i]
        power = identity(dim)
        for _ in range(dim):
            power = mat_mul(power, nmat)
        assert all(all(x == 0 for x in row) for row in power), "N is not nilpotent"
        # Hodge-type filtration
        hodge = {}
        kmax = int(floor(degrees[-1] - rho)) + 1
        for k in range(-1, kmax + 2):
            vecs = []
            for t, i in enumerate(idx):
                if degrees[i] <= rho + k:
                    v = [Fraction(0)] * dim
                    v[t] = Fraction(1)
                    vecs.append(v)
            hodge[k] = _rref_basis(vecs)
        # candidate opposite filtration via coordinate windows
        def fprime(k, window):
            gens = []
            for j in range(mu):
                for m in range(k, k + window + 1):
                    gens.append((j, m))
            smin = -(k + window)
            scol = {}
            cols = []
            for i in range(mu):
                for s in range(smin, degp + 1):
                    scol[(i, s)] = len(cols)
                    cols.append((i, s))
            gmat = []
            for (j, m) in gens:
                row = [Fraction(0)] * len(cols)
                for k2, g in enumerate(gauge):
                    for i in range(mu):
                        if g[i][j]:
                            s = k2 - m
                            t = scol.get((i, s))
                            if t is not None:
                                row[t] = g[i][j]
                gmat.append(row)
            # V_rho constraints: slots with order > rho must vanish
            bad = [t for t, (i, s) in enumerate(cols) if s + degrees[i] > rho]
            cons = []
            for t in bad:
                cons.append([gmat[g][t] for g in range(len(gens))])
            lam = nullspace(cons) if cons else [
                [Fraction(1) if a == b else Fraction(0) for a in range(len(gens))]
                for b in range(len(gens))
            ]
            symbol_slots = [(i, s) for (i, s) in cols if s + degrees[i] == rho and i in pos]
            out = []
            for l in lam:
                vec = [Fraction(0)] * dim
                nonzero = False
                for (i, s) in symbol_slots:
                    t = scol[(i, s)]
                    acc = Fraction(0)
                    for g in range(len(gens)):
                        if l[g] and gmat[g][t]:
                            acc += l[g] * gmat[g][t]
                    if acc:
                        nonzero = True
                    vec[pos[i]] = acc
                if nonzero:
                    out.append(vec)
            return _rref_basis(out)

        window = degp + int(floor(degrees[-1] - degrees[0])) + 2
        fpr = {}
        for k in range(0, kmax + 2):
            a = fprime(k, window)
            b = fprime(k, window + 3)
            assert len(a) == len(b), "window did not stabilize for F' at k=%d" % k
            fpr[k] = a
        fpr[kmax + 2] = []
        # oppositeness: F_{k-1} cap F'^k = 0 and F_k = (F_k cap F'^k) + F_{k-1}
        opp = True
        for k in range(0, kmax + 2):
            inter = _subspace_intersect(hodge[k - 1], fpr[k])
            if inter:
                opp = False
            both = _subspace_intersect(hodge[k], fpr[k])
            if len(_subspace_sum(both, hodge[k - 1])) != len(hodge[k]):
                opp = False
        # (B): N F'^k subset F'^{k+1}
        bgood = True
        for k in range(0, kmax + 1):
            imgs = []
            for v in fpr[k]:
                img = [
                    sum((nmat[r][c] * v[c] for c in range(dim)), Fraction(0))
                    for r in range(dim)
                ]
                if any(img):
                    imgs.append(img)
            if not _subspace_contains(fpr[k + 1], imgs):
                bgood = False
        classes.append(
            {
                "residue": str(rho),
                "indices": idx,
                "n_matrix": [[str(x) for x in row] for row in nmat],
                "n_rank": rank(nmat),
                "hodge_dims": [len(hodge[k]) for k in range(0, kmax + 1)],
                "opposite_dims": [len(fpr[k]) for k in range(0, kmax + 1)],
                "opposite": opp,
                "b_opposed": bgood,
            }
        )
        all_ok_opposite = all_ok_opposite and opp
        all_ok_b = all_ok_b and bgood
    return {"opposite": all_ok_opposite, "b_opposed": all_ok_b, "classes": classes}
