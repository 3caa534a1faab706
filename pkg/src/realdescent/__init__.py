"""Constructive descent of affine varieties with an antiholomorphic
involution from Q(sqrt(m)) to Q, with exact Groebner-basis certificates."""

from .descent import (
    Certificate,
    DescentError,
    DescentReport,
    SymmetryError,
    compute_W,
    compute_Z,
    descend,
    descent_map,
    fiber,
    graph_ideal,
    invariant_map,
    project_Z,
    self_conjugate_branch,
    symmetrize_Z,
    validate_symmetry,
    verify_descent,
)
from .ideal import (
    Ideal,
    ResourceLimitError,
    contains,
    contains_radical,
    eliminate,
    groebner,
    ideal_equals,
    ideal_sum,
    is_trivial,
    normal_form,
)
from .numbers import QQ, FieldElement, FieldSpec
from .parser import ParseError, parse_poly, parse_problem, print_poly
from .poly import GREVLEX, LEX, MonomialOrder, PolyMap, Polynomial, VariableContext, compose
from .problem import DescentOptions, DescentProblem

__version__ = "0.1.0"
