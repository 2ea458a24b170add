"""Completion of incomplete pairwise comparison matrices.

Two completion methods for reciprocal matrices with missing judgments:
logarithmic least squares (geometric inconsistency minimization) and the
eigenvalue method (lambda_max minimization).  The two coincide for matrices
of order up to four and may diverge from order five on.
"""

from .core import (
    ComparisonGraph,
    CompletionProblem,
    DisconnectedGraph,
    IncompletePCM,
    NoConvergence,
    OrderTooSmall,
    ParseError,
    PatternMismatch,
    PcmError,
    Singular,
    TooManyMissing,
    ValidationError,
    ValidationReport,
    WrongOrder,
    clone_alternative,
    comparison_graph,
    is_connected,
    parse_matrix,
    validate,
)
from .llsm import CompletionResult, WeightVector, gci, llsm_completion, llsm_weights
from .eigen import EigenPair, OptimizerTrace, dominant_eigenpair, ev_completion, saaty_ci
from .canonical4 import (
    CanonicalForm4,
    CharPolyCoeffs,
    char_poly_coeffs,
    closed_form_completion,
    reduce_to_canonical,
    verify_theorem1,
)
from .experiments import (
    CompletionComparison,
    batch_report,
    compare_completions,
    counterexample_of_order,
    lemma2_matrix,
    random_connected_incomplete,
)

__version__ = "0.1.0"
