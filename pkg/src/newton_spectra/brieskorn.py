"""Brieskorn-type lattice of a convenient nondegenerate Laurent polynomial.

Elements are classes of forms sum_k theta^k g_k(u) du/u modulo the reduction
rule [sum_i h_i xi_i(f) du/u] = theta [sum_i xi_i(h_i) du/u]; every class has
canonical coordinates over Q[theta] on the adapted monomial basis.  The
operator t acts as multiplication by f on theta-degree zero and extends by
t(theta^k x) = k theta^(k+1) x + theta^k t(x); on coordinate vectors this is
t(v) = theta^2 v' + B(theta) v for the pencil B computed once per lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegeneracySuspectedError
from .jacobian import JacobianAlgebra, divide
from .laurent import LaurentPolynomial
from .linalg import pol_add, pol_deriv, pol_mul, pol_scale, pol_shift, pol_sub, pol_trim


@dataclass(frozen=True)
class BrieskornElement:
    """Coordinates over Q[theta]: one ascending coefficient list per basis slot."""

    coords: tuple

    def is_zero(self) -> bool:
        return all(not c for c in self.coords)

    def __add__(self, other):
        return BrieskornElement(
            tuple(tuple(pol_add(a, b)) for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        return BrieskornElement(
            tuple(tuple(pol_sub(a, b)) for a, b in zip(self.coords, other.coords))
        )

    def scale(self, c):
        return BrieskornElement(tuple(tuple(pol_scale(list(a), c)) for a in self.coords))

    def theta_shift(self, k: int = 1):
        return BrieskornElement(tuple(tuple(pol_shift(list(a), k)) for a in self.coords))

    def to_json_obj(self):
        return [[str(c) for c in comp] for comp in self.coords]


class ConnectionPencil:
    """Matrix polynomial B(theta) = B_0 + theta B_1 + ... acting on coordinates."""

    def __init__(self, matrices, degrees):
        self.matrices = matrices        # list of mu x mu Fraction matrices
        self.degrees = degrees          # basis Newton degrees (Fractions)
        self.mu = len(matrices[0])

    @property
    def degree(self):
        return len(self.matrices) - 1

    def entry(self, i, j):
        """theta-polynomial at position (i, j), ascending coefficients."""
        return pol_trim([m[i][j] for m in self.matrices])

    def apply_t(self, elem: BrieskornElement) -> BrieskornElement:
        out = []
        for i in range(self.mu):
            acc = pol_shift(pol_deriv(list(elem.coords[i])), 2)
            for j in range(self.mu):
                e = self.entry(i, j)
                if e and elem.coords[j]:
                    acc = pol_add(acc, pol_mul(e, list(elem.coords[j])))
            out.append(tuple(acc))
        return BrieskornElement(tuple(out))

    def to_json_obj(self):
        return {
            "degree": self.degree,
            "matrices": [[[str(x) for x in row] for row in m] for m in self.matrices],
        }


class BrieskornLattice:
    def __init__(self, algebra: JacobianAlgebra):
        self.algebra = algebra
        self.basis = algebra.basis()
        self._index = {m: i for i, m in enumerate(self.basis.monomials)}
        self._pencil = None

    @property
    def mu(self):
        return len(self.basis)

    def element_from_monomial(self, exp, theta_power=0):
        coords = [() for _ in range(self.mu)]
        coords[self._index[tuple(exp)]] = tuple(
            [Fraction(0)] * theta_power + [Fraction(1)]
        )
        return BrieskornElement(tuple(coords))

    def reduce(self, forms) -> BrieskornElement:
        """Reduce a form given as {theta power: Laurent polynomial} to coordinates."""
        if isinstance(forms, LaurentPolynomial):
            forms = {0: forms}
        pending = {}
        for k, g in forms.items():
            if not g.is_zero():
                pending[k] = pending.get(k, LaurentPolynomial.zero(self.algebra.n)) + g
        cap = (max(pending) if pending else 0) + self.algebra.n + 2
        coords = [{} for _ in range(self.mu)]
        while pending:
            k = min(pending)
            g = pending.pop(k)
            if g.is_zero():
                continue
            w = divide(self.algebra, g)
            for e, c in w.a.items():
                slot = coords[self._index[e]]
                slot[k] = slot.get(k, Fraction(0)) + c
            if not w.deta.is_zero():
                assert k + 1 <= cap, "theta degree cap exceeded during reduction"
                pending[k + 1] = (
                    pending.get(k + 1, LaurentPolynomial.zero(self.algebra.n)) + w.deta
                )
        out = []
        for slot in coords:
            if slot:
                top = max(slot)
                out.append(tuple(slot.get(i, Fraction(0)) for i in range(top + 1)))
            else:
                out.append(())
        return BrieskornElement(tuple(out))

    def newton_order(self, elem: BrieskornElement):
        """max over components of (theta degree + basis degree); None for zero."""
        best = None
        for i, comp in enumerate(elem.coords):
            comp = pol_trim(list(comp))
            if comp:
                val = len(comp) - 1 + self.basis.degrees[i]
                if best is None or val > best:
                    best = val
        return best

    def pencil(self) -> ConnectionPencil:
        if self._pencil is None:
            mu = self.mu
            columns = []
            for j, m in enumerate(self.basis.monomials):
                g = self.algebra.f * LaurentPolynomial.monomial(m)
                columns.append(self.reduce(g).coords)
            top = 0
            for col in columns:
                for comp in col:
                    top = max(top, len(comp) - 1)
            if top > self.algebra.n:
                raise DegeneracySuspectedError(
                    "connection pencil has theta-degree %d > %d" % (top, self.algebra.n)
                )
            mats = [
                [[Fraction(0)] * mu for _ in range(mu)] for _ in range(top + 1)
            ]
            for j, col in enumerate(columns):
                for i, comp in enumerate(col):
                    for k, c in enumerate(comp):
                        if c:
                            mats[k][i][j] = c
            # order bound: t raises the Newton order by at most one
            for k, mat in enumerate(mats):
                for i in range(mu):
                    for j in range(mu):
                        if mat[i][j]:
                            assert (
                                self.basis.degrees[i] + k <= self.basis.degrees[j] + 1
                            ), "entry (%d,%d) of B_%d violates the order bound" % (i, j, k)
            self._pencil = ConnectionPencil(mats, self.basis.degrees)
        return self._pencil

    def facet_derivation(self, g: LaurentPolynomial, facet_index: int):
        """xi_sigma(g) = sum_i L_i * u_i dg/du_i for one facet form L."""
        facet = self.algebra.polytope.facets[facet_index]
        out = LaurentPolynomial.zero(self.algebra.n)
        for i, li in enumerate(facet.coeffs):
            if li:
                out = out + g.log_derivative(i) * li
        return out

    def check_facet_identity(self, g: LaurentPolynomial, facet_index: int) -> bool:
        """[g * xi_sigma(f) du/u] == theta [xi_sigma(g) du/u] in the lattice."""
        lhs = self.reduce(g * self.facet_derivation(self.algebra.f, facet_index))
        rhs = self.reduce(self.facet_derivation(g, facet_index)).theta_shift(1)
        return lhs == rhs


# ---------------------------------------------------------------------------
# spectrum


@dataclass
class SpectrumData:
    pairs: tuple                # ((alpha, multiplicity), ...) ascending
    poly: tuple                 # SP(S) ascending coefficients
    factored: str
    variance_lhs: Fraction
    variance_rhs: Fraction

    @property
    def variance_satisfied(self) -> bool:
        return self.variance_lhs >= self.variance_rhs

    def to_json_obj(self):
        return {
            "pairs": [{"alpha": str(a), "nu": m} for a, m in self.pairs],
            "polynomial": [str(c) for c in self.poly],
            "factored": self.factored,
            "variance": {
                "lhs": str(self.variance_lhs),
                "rhs": str(self.variance_rhs),
                "satisfied": self.variance_satisfied,
            },
        }


def spectrum(algebra: JacobianAlgebra) -> SpectrumData:
    """Spectrum multiset from the adapted basis degrees, with sanity checks."""
    basis = algebra.basis()
    n = algebra.n
    counts = {}
    for a in basis.degrees:
        counts[a] = counts.get(a, 0) + 1
    pairs = tuple(sorted(counts.items()))
    mu = len(basis)
    if counts.get(Fraction(0), 0) != 1:
        raise DegeneracySuspectedError("spectral multiplicity at 0 is not 1")
    for a, m in pairs:
        if a < 0 or a > n:
            raise DegeneracySuspectedError("spectral value %s outside [0, %d]" % (a, n))
        if counts.get(n - a, 0) != m:
            raise DegeneracySuspectedError(
                "spectrum is not symmetric: nu(%s) = %d but nu(%s) = %d"
                % (a, m, n - a, counts.get(n - a, 0))
            )
    poly = [Fraction(1)]
    for a, m in pairs:
        for _ in range(m):
            poly = pol_mul(poly, [a, Fraction(1)])
    factors = []
    for a, m in pairs:
        if a == 0:
            base = "S"
        else:
            base = "(S+%s)" % a
        factors.append(base if m == 1 else "%s^%d" % (base, m))
    half = Fraction(n, 2)
    lhs = sum(((a - half) ** 2 * m for a, m in pairs), Fraction(0)) / mu
    return SpectrumData(
        pairs=pairs,
        poly=tuple(poly),
        factored="*".join(factors),
        variance_lhs=lhs,
        variance_rhs=Fraction(n, 12),
    )
