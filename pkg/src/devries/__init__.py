"""Finite workbench for the duality between subordination algebras,
their filter spaces, and compact regular frames, with a model checker
for the strict-implication language on top."""

from .boolean import FiniteBooleanAlgebra
from .errors import InputError, PreconditionError, VerificationError
from .filters import Filter, Ideal, concordant_filters, ends, round_ideals
from .frames import FiniteFrame
from .spaces import FiniteSpace, generate_topology
from .subordination import SubordinationAlgebra, check_axioms, classify

__version__ = "0.1.0"

__all__ = [
    "FiniteBooleanAlgebra",
    "SubordinationAlgebra",
    "Filter",
    "Ideal",
    "FiniteSpace",
    "FiniteFrame",
    "check_axioms",
    "classify",
    "concordant_filters",
    "ends",
    "round_ideals",
    "generate_topology",
    "InputError",
    "PreconditionError",
    "VerificationError",
]
