"""Largest-prime-factor computation and smoothness tests over a fixed base.

Strategy: trial division by sieved primes first, then Brent's cycle-finding
method on whatever cofactor survives, with a strong-pseudoprime test to stop
the recursion.  The pseudoprime test is deterministic below 3.317e24 (fixed
witness set) and uses 64 derandomized rounds above.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import FactorizationTimeout

DEFAULT_SIEVE_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 2_000_000

# Strong-pseudoprime witnesses proving primality for all n < 3.317e24.
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_sieve_cache: dict[int, list[int]] = {}


def primes_below(limit: int) -> list[int]:
    """Primes < limit by a plain byte sieve; cached per limit."""
    cached = _sieve_cache.get(limit)
    if cached is not None:
        return cached
    if limit <= 2:
        primes: list[int] = []
    else:
        sieve = bytearray([1]) * limit
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(limit - 1) + 1):
            if sieve[p]:
                start = p * p
                sieve[start::p] = bytearray(len(range(start, limit, p)))
        primes = [i for i, flag in enumerate(sieve) if flag]
    _sieve_cache[limit] = primes
    return primes


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.317e24, 64 seeded rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_BOUND:
        bases = _MR_BASES
    else:
        rng = random.Random(n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(64))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, seed: int, budget: int) -> tuple[int | None, int]:
    """One Brent cycle-finding attempt; returns (factor or None, iterations used)."""
    rng = random.Random(seed)
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            used += min(m, r - k)
            if used > budget:
                return None, used
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            used += 1
            if used > budget:
                return None, used
    if g == n:
        return None, used
    return g, used


def _factor_into(n: int, out: list[int], budget: list[int]) -> None:
    """Append the prime factors of n (with multiplicity) to out."""
    if n == 1:
        return
    if is_probable_prime(n):
        out.append(n)
        return
    root = math.isqrt(n)
    if root * root == n:
        before = len(out)
        _factor_into(root, out, budget)
        out.extend(out[before:])
        return
    seed = 1
    while True:
        if budget[0] <= 0:
            raise FactorizationTimeout(f"factoring budget exhausted on cofactor {n}")
        factor, used = _brent_rho(n, seed, budget[0])
        budget[0] -= used
        if factor is not None and 1 < factor < n:
            _factor_into(factor, out, budget)
            _factor_into(n // factor, out, budget)
            return
        seed += 1


@dataclass(frozen=True)
class PrimeFactorReport:
    """Value together with its largest prime factor (P(0) = P(1) = 1)."""

    value: int
    largest_prime: int


@dataclass(frozen=True)
class SmoothFactorization:
    """Exponent vector over a fixed prime base; product reproduces the value.

    Over a fixed base the trailing exponent may legitimately be zero (e.g.
    2000 = 2^4 * 5^3 over [2,3,5,7]); the minimal normal form with a positive
    last exponent is recovered by ``canonical()``.
    """

    base: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.base) != len(self.exponents):
            raise ValueError("base and exponent lengths differ")

    @property
    def value(self) -> int:
        v = 1
        for p, e in zip(self.base, self.exponents):
            v *= p**e
        return v

    def canonical(self) -> "SmoothFactorization":
        """Trim trailing zero exponents so the last exponent is positive (or empty for 1)."""
        last = len(self.exponents)
        while last > 0 and self.exponents[last - 1] == 0:
            last -= 1
        return SmoothFactorization(self.base[:last], self.exponents[:last])


def _validate_base(base) -> tuple[int, ...]:
    base = tuple(base)
    if not base:
        raise ValueError("prime base must be nonempty")
    for prev, cur in zip(base, base[1:]):
        if cur <= prev:
            raise ValueError("prime base must be strictly increasing")
    for p in base:
        if not is_probable_prime(p):
            raise ValueError(f"{p} in the base is not prime")
    return base


def factor_smooth(m: int, base) -> SmoothFactorization | None:
    """Exponent vector of m over the base, or None if a factor falls outside it."""
    base = _validate_base(base)
    if m < 1:
        raise ValueError(f"can only smoothness-test positive integers, got {m}")
    exps = []
    for p in base:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        exps.append(e)
    if m != 1:
        return None
    return SmoothFactorization(base, tuple(exps))


def largest_prime_factor(
    m: int,
    *,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> PrimeFactorReport:
    """P(m) with the convention P(0) = P(1) = 1.

    Raises FactorizationTimeout when the rho budget runs out before the
    cofactor is fully split; never returns a wrong answer.
    """
    if m < 0:
        raise ValueError("largest_prime_factor expects a nonnegative integer")
    if m <= 1:
        return PrimeFactorReport(m, 1)
    value = m
    best = 1
    for p in primes_below(sieve_limit):
        if p * p > m:
            break
        while m % p == 0:
            m //= p
            best = p
    if m > 1:
        if m < sieve_limit or is_probable_prime(m):
            best = max(best, m)
        else:
            factors: list[int] = []
            _factor_into(m, factors, [rho_budget])
            best = max(best, max(factors))
    return PrimeFactorReport(value, best)
