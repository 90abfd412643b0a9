"""Shared corpus and cached pipeline objects for the test suite.

CORPUS lists every convenient nondegenerate example exercised by the
property tests, spanning one, two and three variables.  The frozen mu
values come from the n!-volume formula and are re-derived independently
inside the tests (Ehrhart point counts, brute-force quotients).
"""

from newton_spectra import (
    BrieskornLattice,
    JacobianAlgebra,
    newton_polytope,
    parse_laurent,
    spectrum,
)

# (expression, arity, milnor number)
CORPUS = [
    ("u1 + u1^-1", 1, 2),
    ("u1 + u1^-2", 1, 3),
    ("u1^3 + u1 + u1^-2", 1, 5),
    ("u1 + u2 + u1^-1*u2^-1", 2, 3),
    ("u1^2 + u2 + u1^-1*u2^-1", 2, 5),
    ("u1^2 + u2^2 + u1^-1*u2^-1", 2, 8),
    ("u1^3 + u2^3 + u1^-1*u2^-1", 2, 15),
    ("u1*u2*u3 + u1^-1 + u2^-1 + u3^-1", 3, 4),
    ("u1 + u2 + u3 + u1^-1 + u2^-1 + u3^-1", 3, 8),
]

# Inputs every gate must reject.
NOT_CONVENIENT = ["u1 + u2", "u1 + u1^2", "u1 + u2 + u1*u2"]
DEGENERATE = "u1^2 - 2*u1*u2 + u2^2 + u1^-1*u2^-1"

_CACHE = {}


def pipeline(expr):
    """Build (and memoize) the full chain of objects for one expression."""
    if expr not in _CACHE:
        f, names = parse_laurent(expr)
        p = newton_polytope(f)
        algebra = JacobianAlgebra(f, p)
        lattice = BrieskornLattice(algebra)
        _CACHE[expr] = {
            "f": f,
            "names": names,
            "polytope": p,
            "algebra": algebra,
            "lattice": lattice,
            "pencil": lattice.pencil(),
            "spectrum": spectrum(algebra),
        }
    return _CACHE[expr]
