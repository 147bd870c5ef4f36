"""Model checking, satisfiability, and omega-regular compilation for a
dynamic logic of hyperproperties."""

from .build import build_aba
from .checker import model_check
from .config import Config
from .kts import parse_kts
from .lasso import LassoAssignment, LassoWord, parse_lasso_file
from .oracle import eval_formula
from .sat import satisfiable
from .syntax import criticality, format_formula, parse_formula, parse_program, to_nnf

__version__ = "0.1.0"

__all__ = [
    "Config", "LassoAssignment", "LassoWord", "build_aba", "criticality",
    "eval_formula", "format_formula", "model_check", "parse_formula",
    "parse_kts", "parse_lasso_file", "parse_program", "satisfiable",
    "to_nnf", "__version__",
]
