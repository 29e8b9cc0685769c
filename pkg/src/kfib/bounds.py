"""Explicit bound calculators around Matveev's lower bound for linear forms.

These are coarse analytic bounds, so they are evaluated in plain floats (log
scale where the linear-scale value would overflow).  Quantities compared
against exact integers live elsewhere, in enclosure arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gmpy2 import mpfr, mpq

from .enclosure import MAX_PRECISION, RealEnclosure, _down, _up
from .errors import PrecisionError
from .algebraic import dominant_root, f_weight
from .sequences import kfib_value


@dataclass(frozen=True)
class MatveevParams:
    """Inputs to Matveev's theorem: t logs over a degree-D field, |b_i| <= B.

    Each A_i must dominate max(D*h(gamma_i), |log gamma_i|, 0.16) for the
    algebraic numbers it models; only the universal floor 0.16 is checkable
    here.
    """

    t: int
    D: int
    B: float
    A: tuple[float, ...]

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("need at least one logarithm")
        if len(self.A) != self.t:
            raise ValueError(f"expected {self.t} height bounds, got {len(self.A)}")
        if self.D < 1:
            raise ValueError("field degree must be >= 1")
        if self.B <= 0:
            raise ValueError("coefficient bound must be positive")
        if any(a < 0.16 for a in self.A):
            raise ValueError("every A_i must be >= 0.16")


@dataclass(frozen=True)
class BoundReport:
    log_lower_bound: float
    inputs: MatveevParams


def matveev_log_lower_bound(p: MatveevParams) -> BoundReport:
    """Natural log of Matveev's lower bound on |gamma_1^b_1 ... gamma_t^b_t - 1|."""
    value = (
        -1.4
        * 30.0 ** (p.t + 3)
        * p.t**4.5
        * p.D**2
        * (1.0 + math.log(p.D))
        * (1.0 + math.log(p.B))
        * math.prod(p.A)
    )
    return BoundReport(value, p)


def kfib_matveev_inputs(k: int, s: int, p_s: int, coeff_bound: float = 1.0) -> MatveevParams:
    """Matveev inputs for the s-prime factorization instance over Q(alpha(k)).

    t = s+2 logs: the s primes (A_i = k log p_s each), alpha (A = 0.7), and
    the Binet weight f_k(alpha) (A = 3k log k).  The coefficient bound is the
    caller's business (n-1 in the application) and defaults to a placeholder.
    """
    if k < 2 or s < 2 or p_s < 3:
        raise ValueError("need k >= 2, s >= 2, p_s >= 3")
    a_prime = k * math.log(p_s)
    heights = (a_prime,) * s + (0.7, 3 * k * math.log(k))
    return MatveevParams(t=s + 2, D=k, B=coeff_bound, A=heights)


def height_bound_f_alpha(k: int) -> float:
    """Upper bound 3 log k on the logarithmic height of the Binet weight at alpha."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return 3 * math.log(k)


def lemma2_log_n_bound(s: int, k: int) -> float:
    """Bound on log n once the term factors over s primes: 30s log s + 3s log k + 3 log(9s+k)."""
    if s < 2 or k < 2:
        raise ValueError("need s >= 2 and k >= 2")
    return 30 * s * math.log(s) + 3 * s * math.log(k) + 3 * math.log(9 * s + k)


def invert_x_over_log3(a: float) -> float:
    """Solve x / log^3 x < A for x: any such x is below 64 A log^3 A (valid for A > 10)."""
    if a <= 10:
        raise ValueError("inversion is only valid for A > 10")
    return 64.0 * a * math.log(a) ** 3


def invert_x_over_log(a: float) -> float:
    """Solve x / log x < A for x: any such x is below 2 A log A (valid for A >= 3)."""
    if a < 3:
        raise ValueError("inversion is only valid for A >= 3")
    return 2.0 * a * math.log(a)


def lemma3_n_bound(k: int) -> float:
    """Absolute bound on n for 7-smooth terms of order k: 1 + 7.73e20 k^7 log^3 k."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return 1.0 + 7.73e20 * float(k) ** 7 * math.log(k) ** 3


def theorem1_threshold(n: int) -> float:
    """The largest-prime-factor threshold (1/84) log log n."""
    if n < 3:
        raise ValueError("threshold needs n >= 3 (log log undefined below)")
    return math.log(math.log(n)) / 84.0


@dataclass(frozen=True)
class Section4Report:
    """Certified verdicts for the close-to-a-power-of-two regime n < 2^(k/2).

    ``ratio_within_12`` uses the constant 12 derived in the general argument;
    ``ratio_within_5`` is the sharper constant from the four-prime rerun
    (derived there for k > 900, reported here for information).
    """

    k: int
    n: int
    alpha_power_within: bool
    f_within: bool
    ratio_within_12: bool
    ratio_within_5: bool

    @property
    def all_ok(self) -> bool:
        return self.alpha_power_within and self.f_within and self.ratio_within_12


def _abs_sq_below(value: RealEnclosure, rhs_sq: mpfr) -> bool | None:
    """Certified |value|^2 < rhs_sq; None when indeterminate.

    Comparing squares keeps 2^(k/2) exact for odd k.
    """
    gap = abs(value)
    hi_sq = _up(value.precision_bits).mul(gap.hi, gap.hi)
    if hi_sq < rhs_sq:
        return True
    lo_sq = _down(value.precision_bits).mul(gap.lo, gap.lo)
    if lo_sq >= rhs_sq:
        return False
    return None


def verify_section4_inequalities(k: int, n: int) -> Section4Report:
    """Certified checks that alpha^(n-1), f_k(alpha) and F(n)/2^(n-2) are close
    to 2^(n-1), 1/2 and 1 respectively, under the case hypothesis n < 2^(k/2)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < k + 2:
        raise ValueError(f"case analysis needs n >= k+2, got n={n}")
    if n * n >= 2**k:
        raise ValueError(f"case hypothesis n < 2^(k/2) violated for (k={k}, n={n})")

    exact = kfib_value(k, n)
    # |F - 2^(n-2)|^2 * 2^k < c^2 * 2^(2n-4), exact integer arithmetic throughout.
    diff = exact - (1 << (n - 2))
    lhs = diff * diff << k
    ratio12 = lhs < 144 << (2 * n - 4)
    ratio5 = lhs < 25 << (2 * n - 4)

    wp = max(k + 96, n.bit_length() + 96)
    while wp <= MAX_PRECISION:
        root = dominant_root(k, wp).enclosure
        alpha_gap = root.pow_int(n - 1) - (1 << (n - 1))
        alpha_ok = _abs_sq_below(alpha_gap, mpfr(2) ** (2 * n - k))
        f_gap = f_weight(k, root) - mpq(1, 2)
        f_ok = _abs_sq_below(f_gap, mpfr(2) ** (2 - 2 * k) * mpfr(k * k))
        if alpha_ok is not None and f_ok is not None:
            return Section4Report(k, n, alpha_ok, f_ok, ratio12, ratio5)
        wp *= 2
    raise PrecisionError(f"section-4 comparisons indeterminate for (k={k}, n={n})")
