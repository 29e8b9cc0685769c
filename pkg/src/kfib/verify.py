"""Bulk certified verification sweeps over (k, n) ranges.

These drive the inequality suites end to end: the root/weight enclosures are
computed once per k and powers of alpha are accumulated incrementally, which
keeps the sweeps at a few microseconds per index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpfr, mpq

from .algebraic import dominant_root, f_weight, verify_dresden_error
from .bounds import theorem1_threshold
from .enclosure import DEFAULT_PRECISION, _up
from .factorization import largest_prime_factor
from .errors import FactorizationTimeout
from .sequences import KIndex, kfib_values


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    violations: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def sandwich_suite(k_max: int, n_max: int, precision_bits: int = DEFAULT_PRECISION) -> SuiteReport:
    """Check alpha^(n-2) <= F(n) <= alpha^(n-1) via outward-rounded endpoint powers."""
    report = SuiteReport("sandwich")
    for k in range(2, k_max + 1):
        enc = dominant_root(k, precision_bits).enclosure
        power = enc.pow_int(-1)  # alpha^(n-2) enclosure at n = 1
        values = kfib_values(k, n_max)
        for n in range(1, n_max + 1):
            f_n = next(values)
            upper = power * enc  # alpha^(n-1)
            if not (power.lo <= f_n and f_n <= upper.hi):
                report.violations.append((k, n))
            report.checked += 1
            power = upper
    return report


def dresden_suite(k_max: int, n_max: int) -> SuiteReport:
    """Check |F(n) - f_k(alpha) alpha^(n-1)| < 1/2 for n from 2-k upward, certified."""
    report = SuiteReport("dresden")
    half = mpq(1, 2)
    for k in range(2, k_max + 1):
        wp = max(DEFAULT_PRECISION, n_max + 96)
        root = dominant_root(k, wp).enclosure
        weight = f_weight(k, root)
        term = weight * root.pow_int(1 - k)  # dominant term at n = 2-k
        values = kfib_values(k, n_max)
        for n in range(2 - k, n_max + 1):
            f_n = 0 if n <= 0 else next(values)
            gap = abs(term - f_n)
            if gap.hi < half:
                pass
            elif gap.lo >= half:
                report.violations.append((k, n))
            elif not verify_dresden_error(KIndex(k, n)):  # indeterminate: escalate pointwise
                report.violations.append((k, n))
            report.checked += 1
            term = term * root
    return report


def section4_suite(k_lo: int, k_hi: int, n_cap: int) -> SuiteReport:
    """Certified close-to-power-of-two checks for k+2 <= n < 2^(k/2), n <= n_cap.

    Verifies |alpha^(n-1) - 2^(n-1)| < 2^n/2^(k/2), |f_k(alpha) - 1/2| < 2k/2^k
    and |F(n)/2^(n-2) - 1| < 12/2^(k/2); square comparisons keep half-integer
    powers of two exact.
    """
    report = SuiteReport("section4")
    for k in range(k_lo, k_hi + 1):
        top = n_cap
        while top * top >= 2**k:
            top -= 1
        if top < k + 2:
            continue
        wp = max(k + 96, top.bit_length() + 96)
        root = dominant_root(k, wp).enclosure
        cu = _up(wp)

        f_gap = abs(f_weight(k, root) - mpq(1, 2))
        f_rhs_sq = mpfr(2) ** (2 - 2 * k) * mpfr(k * k)
        f_ok = cu.mul(f_gap.hi, f_gap.hi) < f_rhs_sq

        power = root.pow_int(k + 1)  # alpha^(n-1) at n = k+2
        values = kfib_values(k, top)
        f_n = 0
        for _ in range(k + 1):
            f_n = next(values)
        for n in range(k + 2, top + 1):
            f_n = next(values)
            ok = f_ok
            gap = abs(power - (1 << (n - 1)))
            if not cu.mul(gap.hi, gap.hi) < mpfr(2) ** (2 * n - k):
                ok = False
            diff = f_n - (1 << (n - 2))
            if not diff * diff << k < 144 << (2 * n - 4):
                ok = False
            if not ok:
                report.violations.append((k, n))
            report.checked += 1
            power = power * root
    return report


def theorem1_suite(k_max: int, n_max: int, exact_factor_limit: int = 10**12) -> SuiteReport:
    """Check P(F(n)) > (1/84) log log n for k in [2, k_max], n in [k+2, n_max].

    The threshold stays below 2 for any index reachable in practice, so a
    prime factor >= 2 settles the comparison; the exact largest prime factor
    is still computed whenever the term is within easy factoring range.
    """
    report = SuiteReport("theorem1")
    for k in range(2, k_max + 1):
        values = kfib_values(k, n_max)
        for n in range(1, n_max + 1):
            f_n = next(values)
            if n < k + 2:
                continue
            threshold = theorem1_threshold(n)
            if f_n <= exact_factor_limit:
                try:
                    p = largest_prime_factor(f_n).largest_prime
                except FactorizationTimeout:
                    p = 2
            else:
                p = 2  # certified lower bound: F(n) >= 3 here
            if not p > threshold:
                report.violations.append((k, n))
            report.checked += 1
    return report


def power_of_two_scan(k_max: int, n_max: int) -> list[tuple[int, int, int]]:
    """All (k, n, F) with n >= k+2 and F a power of two; expected: only (2, 6, 8)."""
    hits = []
    for k in range(2, k_max + 1):
        values = kfib_values(k, n_max)
        for n in range(1, n_max + 1):
            f_n = next(values)
            if n >= k + 2 and f_n & (f_n - 1) == 0:
                hits.append((k, n, f_n))
    return hits


def reciprocal_log_suite(k_max: int, precision_bits: int = DEFAULT_PRECISION) -> SuiteReport:
    """Check 1/log(alpha(k)) < 2.1 for every order up to k_max."""
    report = SuiteReport("reciprocal-log")
    bound = mpq(21, 10)
    for k in range(2, k_max + 1):
        enc = dominant_root(k, precision_bits).enclosure.log().recip()
        if not enc.hi < bound:
            report.violations.append((k,))
        report.checked += 1
    return report
