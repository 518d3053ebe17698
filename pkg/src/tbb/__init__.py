"""Border bases of zero-dimensional ideals of Laurent polynomials."""
from .fields import GF, QQ, parse_field
from .laurent import ChoiceFunction, LaurentPoly
from .parsing import format_poly, parse_poly, parse_system
from .projection import Projection, project, sigma
from .criteria import check_all, check_condition1, check_condition3
from .solver import SolverConfig, SolverResult, multiplication_matrices, run

__all__ = [
    "GF", "QQ", "parse_field", "ChoiceFunction", "LaurentPoly", "format_poly",
    "parse_poly", "parse_system", "Projection", "project", "sigma", "check_all",
    "check_condition1", "check_condition3", "SolverConfig", "SolverResult",
    "multiplication_matrices", "run",
]
__version__ = "0.1.0"
