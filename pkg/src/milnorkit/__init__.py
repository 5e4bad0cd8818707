"""milnorkit: exact verification and classification of harmonic first
integral maps, foliations and Milnor fibrations.

The symbolic layer (polynomials, forms, Groebner bases, signature
certificates) is exact over the rationals; floating point appears only
in the clearly-labeled numerical oracles.
"""

from .poly import Polynomial, VariableContext, ZERO_HOMOGENEOUS
from .exprs import ParseError, parse_polynomial
from .forms import DiffForm, VectorField, differential, first_integral_check, \
    frobenius_check, involutivity_check
from .harmonics import (GramResult, PolyMap, gram, functional_independence,
                        horizontally_homothetic_sufficient,
                        is_harmonic_first_integral_map, laplacian,
                        milnor_set_ideal, one_form_harmonic, singular_ideal)
from .groebner import (GroebnerBasis, QuotientAlgebra, buchberger,
                       ideal_dimension, milnor_number, normal_form,
                       quotient_algebra)
from .degree import (el_degree, preimage_degree, signature_symmetric,
                     winding_degree_2d)
from .classify import build_facts, classify, milnor_set_check
from .problems import ProblemFileError, ProblemSpec, load_problem, parse_problem_text

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "VariableContext", "ZERO_HOMOGENEOUS",
    "ParseError", "parse_polynomial",
    "DiffForm", "VectorField", "differential", "first_integral_check",
    "frobenius_check", "involutivity_check",
    "GramResult", "PolyMap", "gram", "functional_independence",
    "horizontally_homothetic_sufficient", "is_harmonic_first_integral_map",
    "laplacian", "milnor_set_ideal", "one_form_harmonic", "singular_ideal",
    "GroebnerBasis", "QuotientAlgebra", "buchberger", "ideal_dimension",
    "milnor_number", "normal_form", "quotient_algebra",
    "el_degree", "preimage_degree", "signature_symmetric", "winding_degree_2d",
    "build_facts", "classify", "milnor_set_check",
    "ProblemFileError", "ProblemSpec", "load_problem", "parse_problem_text",
    "__version__",
]
