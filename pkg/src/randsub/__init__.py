"""Exact analysis of win-probability sequences of randomized subtraction games."""

from .charpoly import (
    IntPolynomial,
    characteristic_poly,
    derivative,
    divide_by_x_plus_one,
    eval_integer,
    quotient_closed_form,
    square_free_test,
)
from .convergence import (
    ConditionalOscillation,
    ConvergesToHalf,
    Oscillates,
    Periodic,
    Verdict,
    alpha1_empirical,
    alpha1_general,
    alpha1_pair_printed,
    alpha1_pair_sums,
    classify,
    lemma_sums,
    subsequence_limits,
)
from .errors import (
    IllConditionedError,
    InvalidSetError,
    ResourceLimitError,
    RootSolverError,
)
from .extensions import (
    MultiPileGame,
    PilePosition,
    dynamic_one_or_all,
    multipile_value,
    take_any,
)
from .recurrence import (
    SequenceRun,
    SubtractionSet,
    base_values,
    eval_sequence,
    gcd_reduce,
    iter_sequence,
    make_set,
    signed_deviation,
    single_move_value,
)
from .roots import analyze_roots, closed_form_coefficients, find_roots
from .scan import scan_conjecture, scan_question

__version__ = "0.1.0"
