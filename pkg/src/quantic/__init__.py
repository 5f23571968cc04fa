"""Model checking for quantum logic with a non-commutative "and then" connective."""

from .terms import (
    Atom, ConditionalProposition, Equation, Neg, One, ParseError, Star, Zero,
    atoms_of, parse_prop, parse_qlp, parse_term, print_prop, print_term,
)
from .models import (
    BudgetExceeded, Counterexample, FiniteModel, Model, TableModel,
    eval_term, falsify, satisfies, valid_in_model,
)
from .lattice import FiniteOrtholattice, build, finch_star
from .subspace import RationalSubspace, complement, intersect, linear_sum, project, projection_oracle
from .hilbert import HilbertModel, HilbertModelSpec, pfamily_closure
from .catalog import catalog
from .suite import classify, run_structural, run_suite

__version__ = "0.1.0"
