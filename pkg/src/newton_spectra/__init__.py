"""Exact Newton-polytope spectra for convenient nondegenerate Laurent polynomials.

The chain: Newton polytope and filtration -> Milnor number -> adapted basis
of the graded Jacobian quotient -> connection pencil on the theta-lattice ->
singularity spectrum -> Birkhoff normal form with V-filtration checks ->
Euler field / homogeneity data.  Everything is exact rational arithmetic.
"""

from .birkhoff import (
    BirkhoffObstruction,
    BirkhoffSolution,
    gauge_residual,
    graded_model,
    pencil_in_gauge,
    solve_birkhoff,
    verify_v_plus,
    verify_v_solution,
)
from .brieskorn import (
    BrieskornElement,
    BrieskornLattice,
    ConnectionPencil,
    SpectrumData,
    spectrum,
)
from .errors import (
    DegenerateError,
    DegeneracySuspectedError,
    ExactModeUnsupportedError,
    NotConvenientError,
    NotInIdealError,
    UnsupportedFaceError,
)
from .frobenius import (
    FrobeniusInitialData,
    analyze,
    analyze_text,
    canonical_primitive,
    euler_field,
)
from .jacobian import (
    AdaptedBasis,
    DivisionWitness,
    JacobianAlgebra,
    adapted_basis,
    divide,
    divide_exact,
    graded_jacobian,
)
from .laurent import LaurentParseError, LaurentPolynomial, parse_laurent
from .nondegeneracy import (
    NondegeneracyCertificate,
    assumed_certificate,
    is_nondegenerate,
    proper_faces,
    require_nondegenerate,
)
from .polytope import NewtonPolytope, milnor_number, newton_polytope

__version__ = "0.1.0"

__all__ = [
    "AdaptedBasis",
    "BirkhoffObstruction",
    "BirkhoffSolution",
    "BrieskornElement",
    "BrieskornLattice",
    "ConnectionPencil",
    "DegenerateError",
    "DegeneracySuspectedError",
    "DivisionWitness",
    "ExactModeUnsupportedError",
    "FrobeniusInitialData",
    "JacobianAlgebra",
    "LaurentParseError",
    "LaurentPolynomial",
    "NewtonPolytope",
    "NondegeneracyCertificate",
    "NotConvenientError",
    "NotInIdealError",
    "SpectrumData",
    "UnsupportedFaceError",
    "adapted_basis",
    "analyze",
    "analyze_text",
    "assumed_certificate",
    "canonical_primitive",
    "divide",
    "divide_exact",
    "euler_field",
    "gauge_residual",
    "graded_jacobian",
    "graded_model",
    "is_nondegenerate",
    "milnor_number",
    "newton_polytope",
    "parse_laurent",
    "pencil_in_gauge",
    "proper_faces",
    "require_nondegenerate",
    "solve_birkhoff",
    "spectrum",
    "verify_v_plus",
    "verify_v_solution",
]
