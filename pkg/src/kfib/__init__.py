"""k-generalized Fibonacci numbers and the machinery behind their smooth-term search."""

from .enclosure import DEFAULT_PRECISION, MAX_PRECISION, RealEnclosure, log_of_int
from .errors import FactorizationTimeout, PrecisionError, ReductionError
from .sequences import KIndex, SequenceTerm, kfib, kfib_stream, kfib_value, kfib_values
from .factorization import (
    PrimeFactorReport,
    SmoothFactorization,
    factor_smooth,
    is_probable_prime,
    largest_prime_factor,
    primes_below,
)
from .algebraic import (
    BinetApprox,
    DominantRoot,
    binet_dominant,
    dominant_root,
    f_eval,
    f_weight,
    psi_eval,
    reciprocal_log_alpha,
    verify_dresden_error,
)
from .bounds import (
    BoundReport,
    MatveevParams,
    Section4Report,
    height_bound_f_alpha,
    invert_x_over_log,
    invert_x_over_log3,
    kfib_matveev_inputs,
    lemma2_log_n_bound,
    lemma3_n_bound,
    matveev_log_lower_bound,
    theorem1_threshold,
    verify_section4_inequalities,
)
from .lattice import (
    BoundState,
    LatticeBasis,
    LinearFormInstance,
    ReductionRound,
    closest_vector_sq,
    initial_large_k_state,
    linear_form_lower_bound,
    lll_reduce,
    rational_gram_schmidt,
    reduce_large_k,
    reduce_large_k_trajectory,
    reduce_small_k,
    shifted_form_lower_bound,
    shortest_vector_sq,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
