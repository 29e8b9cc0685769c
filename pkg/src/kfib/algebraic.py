"""Certified enclosures for the dominant root of x^k - x^(k-1) - ... - x - 1.

The characteristic polynomial has a single root alpha(k) outside the unit
circle, located in (2*(1 - 2^-k), 2).  Root finding runs plain MPFR Newton
from x0 = 2 and then certifies a sign change of the polynomial across a tiny
interval around the approximation; the certificate is what gets returned.
Since alpha sits within ~2^-k of both 2 and the bracket's lower end, the
working precision is always raised to at least k + a guard, whatever the
caller asked for.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr, mpq

from .enclosure import DEFAULT_PRECISION, MAX_PRECISION, RealEnclosure, _down, _up
from .errors import PrecisionError
from .sequences import KIndex, kfib_value

_root_cache: dict[int, RealEnclosure] = {}


def psi_eval(k: int, x: RealEnclosure) -> RealEnclosure:
    """Enclosure of x^k - x^(k-1) - ... - x - 1 over the whole input interval."""
    if k < 2:
        raise ValueError("k must be >= 2")
    result = RealEnclosure.from_int(1, x.precision_bits)
    for _ in range(k):
        result = result * x - 1
    return result


def _psi_point(k: int, x: mpfr, ctx) -> mpfr:
    r = mpfr(1)
    for _ in range(k):
        r = ctx.sub(ctx.mul(r, x), 1)
    return r


def _psi_deriv_point(k: int, x: mpfr, ctx) -> mpfr:
    r = mpfr(k)
    for c in range(k - 1, 0, -1):
        r = ctx.sub(ctx.mul(r, x), c)
    return r


@dataclass(frozen=True)
class DominantRoot:
    k: int
    enclosure: RealEnclosure


@dataclass(frozen=True)
class BinetApprox:
    """Enclosure of the dominant Binet term f_k(alpha) * alpha^(n-1).

    The exact integer term of the sequence lies within this enclosure widened
    by 1/2 on both sides.
    """

    index: KIndex
    dominant_term: RealEnclosure


def _newton_root(k: int, wp: int) -> mpfr:
    ctx = gmpy2.context(precision=wp)
    x = mpfr(2)
    tol = mpfr(2) ** (-wp + 8)
    for _ in range(wp.bit_length() * 8 + 64):
        fx = _psi_point(k, x, ctx)
        dfx = _psi_deriv_point(k, x, ctx)
        step = ctx.div(fx, dfx)
        x = ctx.sub(x, step)
        if abs(step) <= tol:
            return x
    return x


def dominant_root(k: int, precision_bits: int = DEFAULT_PRECISION) -> DominantRoot:
    """Enclosure of alpha(k) of width <= 2^-precision_bits inside the root bracket.

    Certified by a sign change of the characteristic polynomial across the
    returned interval; raises PrecisionError if certification keeps failing.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if precision_bits < 16:
        raise ValueError("precision_bits must be >= 16")
    cached = _root_cache.get(k)
    if cached is not None and mpq(cached.hi) - mpq(cached.lo) <= mpq(1, 2**precision_bits):
        return DominantRoot(k, cached)

    # alpha is within ~2^-k of both bracket ends, so the effective target
    # width must beat 2^-k regardless of what was requested.
    target_bits = max(precision_bits, k + 8)
    wp = target_bits + 64
    cap = max(MAX_PRECISION, 4 * wp)
    while wp <= cap:
        ctx = gmpy2.context(precision=wp)
        bracket_lo = ctx.sub(mpfr(2), mpfr(2) ** (1 - k))
        x = _newton_root(k, wp)
        for eps_bits in (target_bits + 2, target_bits + 1):
            eps = mpfr(2) ** (-eps_bits)
            lo = _down(wp).sub(x, eps)
            hi = _up(wp).add(x, eps)
            if not (bracket_lo < lo and hi < mpfr(2)):
                continue
            left = psi_eval(k, RealEnclosure.point(lo, wp))
            right = psi_eval(k, RealEnclosure.point(hi, wp))
            if left.hi < 0 and right.lo > 0:
                enc = RealEnclosure(lo, hi, wp)
                cached = _root_cache.get(k)
                if cached is None or mpq(enc.hi) - mpq(enc.lo) < mpq(cached.hi) - mpq(cached.lo):
                    _root_cache[k] = enc
                return DominantRoot(k, enc)
        wp *= 2
    raise PrecisionError(f"dominant root of order {k} did not certify at <= {cap} bits")


def f_weight(r: int, x: RealEnclosure) -> RealEnclosure:
    """Enclosure of (x-1) / (2 + (r+1)*(x-2)), the Binet weight function."""
    if r < 2:
        raise ValueError("r must be >= 2")
    numerator = x - 1
    denominator = (x - 2) * (r + 1) + 2
    if denominator.contains_zero():
        raise PrecisionError("weight denominator not separated from zero")
    return numerator / denominator


# Alias under the operation's contract name.
f_eval = f_weight


def _dominant_term(k: int, n: int, wp: int) -> RealEnclosure:
    root = dominant_root(k, wp).enclosure
    return f_weight(k, root) * root.pow_int(n - 1)


def binet_dominant(idx: KIndex, precision_bits: int = DEFAULT_PRECISION) -> BinetApprox:
    """Dominant-term enclosure tight enough to isolate the exact integer.

    The term grows like 2^n, so isolation needs on the order of n bits; the
    precision escalates by doubling until the interval widened by 1/2 contains
    a single integer.
    """
    k, n = idx.k, idx.n
    wp = max(precision_bits, abs(n) + 32, 64)
    while wp <= MAX_PRECISION:
        term = _dominant_term(k, n, wp)
        lo = mpq(term.lo) - mpq(1, 2)
        hi = mpq(term.hi) + mpq(1, 2)
        n_integers = (hi.numerator // hi.denominator) - (-((-lo.numerator) // lo.denominator)) + 1
        if n_integers == 1:
            return BinetApprox(idx, term)
        wp *= 2
    raise PrecisionError(f"dominant term for {idx} does not isolate an integer at <= {MAX_PRECISION} bits")


def verify_dresden_error(idx: KIndex) -> bool:
    """Certified check that |F(n) - f_k(alpha) alpha^(n-1)| < 1/2."""
    k, n = idx.k, idx.n
    exact = kfib_value(k, n)
    wp = max(abs(n) + 32, 64)
    half = mpq(1, 2)
    while wp <= MAX_PRECISION:
        gap = abs(_dominant_term(k, n, wp) - exact)
        if gap.hi < half:
            return True
        if gap.lo >= half:
            return False
        wp *= 2
    raise PrecisionError(f"Dresden error check for {idx} indeterminate at <= {MAX_PRECISION} bits")


def reciprocal_log_alpha(k: int, precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of 1 / log(alpha(k)); stays below 2.1 for every k >= 2."""
    return dominant_root(k, precision_bits).enclosure.log().recip()
