"""Graded Jacobian-type quotient of a convenient nondegenerate polynomial.

Everything is organized by the scaled Newton degree r = scale * phi, an
integer.  For each level r the multiples of the leading forms of the n
logarithmic derivatives xi_i(f) coming from level r - scale span a subspace
of the level-r monomials; an echelonized copy of that span (with bookkeeping
of which multiple produced which row) is cached per level.  Non-pivot
monomials are the canonical graded representatives; collecting them for
r = 0 .. n*scale gives the adapted basis, and reducing against the echelon
with bookkeeping gives division with certified cofactors.

Division descends level by level: the top graded slice of the residual is
rewritten as representatives + leading-form multiples, the full (not just
leading) products are subtracted, and the top level strictly drops.  For a
nondegenerate input nothing survives above level n*scale; a violation raises
DegeneracySuspectedError since it contradicts the dimension theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegeneracySuspectedError, NotInIdealError
from .laurent import LaurentPolynomial, term_key
from .polytope import NewtonPolytope, newton_polytope


class _LevelSolver:
    """Echelonized leading-form relations at one scaled level."""

    def __init__(self, rows, columns):
        # columns: list of exponent tuples (graded-lex); rows: (vec, meta)
        self.columns = columns
        self.index = {e: i for i, e in enumerate(columns)}
        self.rows = []          # list of (pivot, vec dict, meta dict), pivot increasing
        for vec, meta in rows:
            self._insert(vec, meta)
        self.rows.sort(key=lambda r: r[0])
        pivots = {p for p, _, _ in self.rows}
        self.reps = [e for i, e in enumerate(columns) if i not in pivots]

    def _insert(self, vec, meta):
        vec = dict(vec)
        meta = dict(meta)
        for pivot, rvec, rmeta in self.rows:
            c = vec.get(pivot)
            if c:
                for k, v in rvec.items():
                    s = vec.get(k, Fraction(0)) - c * v
                    if s:
                        vec[k] = s
                    else:
                        vec.pop(k, None)
                for k, v in rmeta.items():
                    s = meta.get(k, Fraction(0)) - c * v
                    if s:
                        meta[k] = s
                    else:
                        meta.pop(k, None)
        if not vec:
            return
        pivot = min(vec)
        lead = vec[pivot]
        vec = {k: v / lead for k, v in vec.items()}
        meta = {k: v / lead for k, v in meta.items()}
        # keep earlier rows reduced too, so reduction against rows is unique
        for i, (p0, rvec, rmeta) in enumerate(self.rows):
            c = rvec.get(pivot)
            if c:
                for k, v in vec.items():
                    s = rvec.get(k, Fraction(0)) - c * v
                    if s:
                        rvec[k] = s
                    else:
                        rvec.pop(k, None)
                for k, v in meta.items():
                    s = rmeta.get(k, Fraction(0)) - c * v
                    if s:
                        rmeta[k] = s
                    else:
                        rmeta.pop(k, None)
        self.rows.append((pivot, vec, meta))
        self.rows.sort(key=lambda r: r[0])

    def solve(self, vec):
        """Split a level vector into representative part + relation combination.

        vec maps column indices to Fractions.  Returns (rep, combo) with rep
        keyed by exponent tuples and combo keyed by (i, multiplier exponent).
        """
        vec = dict(vec)
        combo = {}
        for pivot, rvec, rmeta in self.rows:
            c = vec.get(pivot)
            if not c:
                continue
            for k, v in rvec.items():
                s = vec.get(k, Fraction(0)) - c * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
            for k, v in rmeta.items():
                s = combo.get(k, Fraction(0)) + c * v
                if s:
                    combo[k] = s
                else:
                    combo.pop(k, None)
        rep = {self.columns[i]: c for i, c in vec.items()}
        return rep, combo


@dataclass(frozen=True)
class AdaptedBasis:
    """Monomial representatives of the graded quotient, level order."""

    monomials: tuple            # exponent tuples
    degrees: tuple              # Fractions, weakly increasing
    scaled_degrees: tuple       # ints

    def __len__(self):
        return len(self.monomials)

    def index(self, exp):
        return self.monomials.index(tuple(exp))

    def to_json_obj(self):
        return {
            "monomials": [list(m) for m in self.monomials],
            "degrees": [str(a) for a in self.degrees],
        }


class JacobianAlgebra:
    """Cached graded data for one polynomial (levels, solvers, basis)."""

    def __init__(self, f: LaurentPolynomial, p: NewtonPolytope = None):
        if p is None:
            p = newton_polytope(f)
        p.require_convenient()
        self.f = f
        self.polytope = p
        self.n = f.arity
        self.d = p.scale
        self.log_derivs = [f.log_derivative(i) for i in range(self.n)]
        for i, xi in enumerate(self.log_derivs):
            if xi.is_zero():
                # f independent of u_i contradicts convenience, but be precise
                raise DegeneracySuspectedError("f does not involve variable %d" % i)
        # leading parts of the log derivatives (terms on the polytope boundary)
        self.leading = []
        for xi in self.log_derivs:
            self.leading.append(
                {e: c for e, c in xi.terms.items() if p.scaled_phi_exp(e) == self.d}
            )
        self._levels = {}          # scaled level -> sorted monomial list
        self._level_max = -1
        self._solvers = {}
        self._basis = None

    # -- level bookkeeping

    def _ensure_levels(self, r: int):
        if r <= self._level_max:
            return
        pts = self.polytope.enumerate_sublevel(Fraction(r, self.d))
        levels = {}
        for e in pts:
            levels.setdefault(self.polytope.scaled_phi_exp(e), []).append(e)
        for k in range(r + 1):
            lst = levels.get(k, [])
            lst.sort(key=term_key)
            self._levels[k] = lst
        self._level_max = r

    def level_monomials(self, r: int):
        if r < 0:
            return []
        self._ensure_levels(r)
        return self._levels.get(r, [])

    def solver(self, r: int) -> _LevelSolver:
        if r not in self._solvers:
            cols = self.level_monomials(r)
            index = {e: i for i, e in enumerate(cols)}
            rows = []
            for i in range(self.n):
                lead = self.leading[i]
                for m in self.level_monomials(r - self.d):
                    vec = {}
                    for k, b in lead.items():
                        e = tuple(a + t for a, t in zip(m, k))
                        j = index.get(e)
                        if j is not None:
                            vec[j] = vec.get(j, Fraction(0)) + b
                    vec = {j: c for j, c in vec.items() if c}
                    if vec:
                        rows.append((vec, {(i, m): Fraction(1)}))
            self._solvers[r] = _LevelSolver(rows, cols)
        return self._solvers[r]

    # -- graded dimensions and the basis

    def graded_dimension(self, r: int) -> int:
        return len(self.solver(r).reps)

    def basis(self) -> AdaptedBasis:
        if self._basis is None:
            monomials = []
            scaled = []
            top = self.n * self.d
            for r in range(top + 1):
                for e in self.solver(r).reps:
                    monomials.append(e)
                    scaled.append(r)
            if not monomials or monomials[0] != (0,) * self.n or scaled[1:2] == [0]:
                raise DegeneracySuspectedError(
                    "level-0 slice of the graded quotient is not one-dimensional"
                )
            self._basis = AdaptedBasis(
                tuple(monomials),
                tuple(Fraction(r, self.d) for r in scaled),
                tuple(scaled),
            )
        return self._basis

    def check_milnor(self, mu: int):
        if len(self.basis()) != mu:
            raise DegeneracySuspectedError(
                "graded quotient has dimension %d but the lattice volume is %d; "
                "the polynomial is most likely degenerate" % (len(self.basis()), mu)
            )
        # spectrum lives in [0, n], so for a nondegenerate polynomial every
        # graded slice above level n*d is empty; a survivor up there means
        # the critical locus is not isolated even when the dimensions below
        # happen to add up to the volume
        top = self.n * self.d
        for r in range(top + 1, top + self.d + 1):
            if self.graded_dimension(r):
                raise DegeneracySuspectedError(
                    "graded quotient is nonzero at level %d/%d above the top "
                    "spectral level %d; the polynomial is most likely degenerate"
                    % (r, self.d, self.n)
                )


def graded_jacobian(f, p=None) -> JacobianAlgebra:
    return JacobianAlgebra(f, p)


def adapted_basis(algebra: JacobianAlgebra) -> AdaptedBasis:
    return algebra.basis()


@dataclass
class DivisionWitness:
    """g = sum_j a_j * u^(m_j) + sum_i cofactors_i * xi_i(f), with bounds."""

    g: LaurentPolynomial
    a: dict                     # basis exponent -> Fraction
    cofactors: list             # LaurentPolynomial per variable
    deta: LaurentPolynomial     # sum_i xi_i(cofactors_i)

    def verify(self, algebra: JacobianAlgebra) -> bool:
        total = LaurentPolynomial.zero(algebra.n)
        for e, c in self.a.items():
            total = total + LaurentPolynomial.monomial(e, c)
        for gi, xi in zip(self.cofactors, algebra.log_derivs):
            total = total + gi * xi
        if total != self.g:
            return False
        p = algebra.polytope
        bound = p.scaled_phi(self.g)
        if bound is None:
            return all(gi.is_zero() for gi in self.cofactors) and not self.a
        for gi in self.cofactors:
            s = p.scaled_phi(gi)
            if s is not None and s > bound - algebra.d:
                return False
        s = p.scaled_phi(self.deta)
        if s is not None and s > bound - algebra.d:
            return False
        for e in self.a:
            if p.scaled_phi_exp(e) > bound:
                return False
        deta = LaurentPolynomial.zero(algebra.n)
        for i, gi in enumerate(self.cofactors):
            deta = deta + gi.log_derivative(i)
        return deta == self.deta


def divide(algebra: JacobianAlgebra, g: LaurentPolynomial) -> DivisionWitness:
    """Express g over the adapted representatives modulo the log-derivative ideal."""
    if g.arity != algebra.n:
        raise ValueError("arity mismatch")
    basis = algebra.basis()
    rep_set = set(basis.monomials)
    top_level = algebra.n * algebra.d
    a = {}
    cof = [LaurentPolynomial.zero(algebra.n) for _ in range(algebra.n)]
    resid = g
    guard = 0
    start = algebra.polytope.scaled_phi(g) or 0
    while not resid.is_zero():
        r = algebra.polytope.scaled_phi(resid)
        solver = algebra.solver(r)
        index = solver.index
        vec = {}
        for e, c in resid.terms.items():
            if algebra.polytope.scaled_phi_exp(e) == r:
                vec[index[e]] = c
        rep, combo = solver.solve(vec)
        if rep and r > top_level:
            raise DegeneracySuspectedError(
                "graded representative appears above the top level (scaled %d > %d)"
                % (r, top_level)
            )
        delta = LaurentPolynomial.zero(algebra.n)
        for (i, m), c in sorted(combo.items()):
            mono = LaurentPolynomial.monomial(m, c)
            cof[i] = cof[i] + mono
            delta = delta + mono * algebra.log_derivs[i]
        for e, c in rep.items():
            assert e in rep_set
            a[e] = a.get(e, Fraction(0)) + c
            delta = delta + LaurentPolynomial.monomial(e, c)
        resid = resid - delta
        nr = algebra.polytope.scaled_phi(resid)
        assert nr is None or nr < r, "descent failed to lower the level"
        guard += 1
        # the scaled level strictly drops each round, so the start level
        # bounds the iteration count
        assert guard <= start + 1
    a = {e: c for e, c in a.items() if c}
    deta = LaurentPolynomial.zero(algebra.n)
    for i, gi in enumerate(cof):
        deta = deta + gi.log_derivative(i)
    return DivisionWitness(g=g, a=a, cofactors=cof, deta=deta)


def divide_exact(algebra: JacobianAlgebra, g: LaurentPolynomial) -> DivisionWitness:
    """Division that must succeed with zero remainder; raises NotInIdealError."""
    w = divide(algebra, g)
    if w.a:
        raise NotInIdealError(dict(w.a))
    return w
