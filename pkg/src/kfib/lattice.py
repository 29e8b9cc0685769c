"""Exact lattice machinery: integral LLL, enumeration, and certified
lower bounds for small values of linear forms in logarithms.

Everything here is exact: basis vectors are Python ints, the LLL bookkeeping
uses the classic all-integer Gram determinant / lambda representation, and
certificates come out as rationals.  No floating-point reduction anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from .algebraic import dominant_root, f_weight
from .bounds import lemma3_n_bound
from .enclosure import RealEnclosure, log_of_int, _down, _up, _ZERO
from .errors import PrecisionError, ReductionError

DEFAULT_DELTA = Fraction(99, 100)

_LOG10_2 = math.log10(2)


@dataclass(frozen=True)
class LatticeBasis:
    """Square integer matrix whose rows span a full-rank lattice."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("basis must be a square matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return len(self.rows)


def _dot(u: list[int], v: list[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: LatticeBasis, delta: Fraction = DEFAULT_DELTA) -> LatticeBasis:
    """LLL reduction with exact integer arithmetic (Gram-determinant form).

    The output spans the same lattice, is size-reduced (|mu_ij| <= 1/2) and
    satisfies the Lovász condition with the given delta.  Rows that turn out
    linearly dependent raise ValueError.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    n = basis.dim
    b = [list(row) for row in basis.rows]
    if n <= 1:
        if n == 1 and all(v == 0 for v in b[0]):
            raise ValueError("zero row is not a basis")
        return LatticeBasis(b)

    p_num, q_den = delta.numerator, delta.denominator
    d = [0] * (n + 1)
    d[0] = 1
    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("zero row is not a basis")
    lam = [[0] * n for _ in range(n)]

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    kmax = 0
    k = 1
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise ValueError("rows are linearly dependent")
                    d[k + 1] = u
        red(k, k - 1)
        if q_den * d[k + 1] * d[k - 1] < p_num * d[k] * d[k] - q_den * lam[k][k - 1] ** 2:
            # swap rows k-1 and k, patching the integral GS data in place
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            lam_old = lam[k][k - 1]
            new_d = (d[k - 1] * d[k + 1] + lam_old * lam_old) // d[k]
            for r in range(k + 1, kmax + 1):
                t = lam[r][k]
                lam[r][k] = (d[k + 1] * lam[r][k - 1] - lam_old * t) // d[k]
                lam[r][k - 1] = (new_d * t + lam_old * lam[r][k]) // d[k + 1]
            d[k] = new_d
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return LatticeBasis(b)


def rational_gram_schmidt(rows) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact Gram-Schmidt: returns (mu, ||b*_i||^2) as Fractions."""
    n = len(rows)
    bstar = [[Fraction(v) for v in row] for row in rows]
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: list[Fraction] = []
    for i in range(n):
        for j in range(i):
            if norms[j] == 0:
                raise ValueError("rows are linearly dependent")
            mu[i][j] = sum(Fraction(rows[i][t]) * bstar[j][t] for t in range(n)) / norms[j]
            bstar[i] = [x - mu[i][j] * y for x, y in zip(bstar[i], bstar[j])]
        norms.append(sum(x * x for x in bstar[i]))
    if any(v == 0 for v in norms):
        raise ValueError("rows are linearly dependent")
    return mu, norms


_ENUM_RADIUS_CAP = 1_000_000


def _nearest_int(value: Fraction) -> int:
    return (2 * value.numerator + value.denominator) // (2 * value.denominator)


def _spiral(radius: int):
    yield 0
    for step in range(1, radius + 1):
        yield step
        yield -step


def _babai_sq(mu, norms, t_coords) -> Fraction:
    """Squared distance of the Babai nearest-plane vector; an upper bound on CVP."""
    n = len(norms)
    shift = [Fraction(0)] * n
    partial = Fraction(0)
    for level in range(n - 1, -1, -1):
        center = t_coords[level] - shift[level]
        cand = _nearest_int(center)
        diff = cand - center
        partial += norms[level] * diff * diff
        delta_t = cand - t_coords[level]
        if delta_t:
            for j in range(level):
                shift[j] += delta_t * mu[level][j]
    return partial


def _enumerate_min_sq(rows, target: list[Fraction] | None) -> Fraction:
    """Exact minimum of ||v - y||^2 over lattice vectors v (Fincke-Pohst).

    With target None this is lambda_1^2 (the zero vector excluded); otherwise
    the exact squared distance from the target to the lattice.  All pruning
    comparisons are exact Fraction arithmetic, so the result is certified.
    Intended for the small dimensions used here; absurd search radii raise
    PrecisionError instead of grinding.
    """
    n = len(rows)
    mu, norms = rational_gram_schmidt(rows)
    if target is None:
        t_coords = [Fraction(0)] * n
        best = min(Fraction(_dot(list(r), list(r))) for r in rows)
    else:
        t_coords = _basis_coordinates(rows, target)
        best = _babai_sq(mu, norms, t_coords)
        if best == 0:
            return best

    x = [0] * n

    def recurse(level: int, partial: Fraction, shift: list[Fraction]) -> None:
        nonlocal best
        center = t_coords[level] - shift[level]
        c_near = _nearest_int(center)
        limit = (best - partial) / norms[level]
        if limit < 0:
            return
        radius = math.isqrt(limit.numerator // limit.denominator) + 1
        if radius > _ENUM_RADIUS_CAP:
            raise PrecisionError("enumeration radius exploded; basis too skewed")
        for offset in _spiral(radius):
            cand = c_near + offset
            diff = cand - center
            new_partial = partial + norms[level] * diff * diff
            if new_partial >= best:
                continue
            x[level] = cand
            if level == 0:
                if target is None and all(v == 0 for v in x):
                    continue
                best = new_partial
            else:
                new_shift = shift[:]
                delta_t = cand - t_coords[level]
                if delta_t:
                    for j in range(level):
                        new_shift[j] += delta_t * mu[level][j]
                recurse(level - 1, new_partial, new_shift)

    # shift[j] accumulates sum_{i>j} (x_i - t_i) mu[i][j]
    recurse(n - 1, Fraction(0), [Fraction(0)] * n)
    return best


def _basis_coordinates(rows, target: list[Fraction]) -> list[Fraction]:
    """Solve y = sum c_i * rows_i exactly."""
    n = len(rows)
    m = [[Fraction(rows[j][i]) for j in range(n)] for i in range(n)]  # transpose
    rhs = [Fraction(v) for v in target]
    # Gaussian elimination with exact pivoting over Q
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("rows are linearly dependent")
        m[col], m[pivot] = m[pivot], m[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
                rhs[r] -= factor * rhs[col]
    return rhs


def shortest_vector_sq(rows) -> Fraction:
    """Exact lambda_1^2 of the lattice spanned by the rows (small dimensions)."""
    return _enumerate_min_sq([list(r) for r in rows], None)


def closest_vector_sq(rows, target) -> Fraction:
    """Exact squared distance from target to the lattice (small dimensions)."""
    return _enumerate_min_sq([list(r) for r in rows], [Fraction(v) for v in target])


# ---------------------------------------------------------------------------
# Certified lower bounds for linear forms in logarithms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearFormInstance:
    """Certified log enclosures, a coefficient box bound X, and a lattice scale 10^C."""

    logs: tuple[RealEnclosure, ...]
    coeff_bound: int
    scaling_exponent: int

    def __init__(self, logs, coeff_bound: int, scaling_exponent: int):
        object.__setattr__(self, "logs", tuple(logs))
        object.__setattr__(self, "coeff_bound", int(coeff_bound))
        object.__setattr__(self, "scaling_exponent", int(scaling_exponent))
        if self.coeff_bound < 1:
            raise ValueError("coefficient bound must be >= 1")
        if self.scaling_exponent < 1:
            raise ValueError("scaling exponent must be >= 1")
        if len(self.logs) < 2:
            raise ValueError("need at least two logarithms")


def _scaled_entry(enc: RealEnclosure, scale: int) -> tuple[int, Fraction]:
    """Nearest integer to scale*theta plus a certified error bound."""
    lo_q, hi_q = enc.mpq_bounds()
    lo = Fraction(int(lo_q.numerator), int(lo_q.denominator)) * scale
    hi = Fraction(int(hi_q.numerator), int(hi_q.denominator)) * scale
    mid = (lo + hi) / 2
    q = (2 * mid.numerator + mid.denominator) // (2 * mid.denominator)
    err = max(Fraction(q) - lo, hi - Fraction(q))
    return int(q), err


def _certificate_parts(logs, scale: int, delta: Fraction):
    entries = [_scaled_entry(enc, scale) for enc in logs]
    q_col = [q for q, _ in entries]
    errs = [e for _, e in entries]
    t = len(logs)
    if q_col[-1] == 0:
        raise PrecisionError("lattice scale too small: last scaled log rounds to zero")
    rows = []
    for i in range(t):
        row = [0] * t
        if i < t - 1:
            row[i] = 1
        row[t - 1] = q_col[i]
        rows.append(row)
    reduced = lll_reduce(LatticeBasis(rows), delta)
    return reduced, errs


def linear_form_lower_bound(
    inst: LinearFormInstance, delta: Fraction = DEFAULT_DELTA
) -> Fraction:
    """Certified L > 0 with |sum x_i log gamma_i| >= L for all 0 < max|x_i| <= X.

    The certificate proves on the way that the form cannot vanish on the box;
    if it can (multiplicatively dependent gammas), separation is impossible
    and PrecisionError is raised no matter the scale.
    """
    for enc in inst.logs:
        if enc.contains_zero():
            raise ValueError("degenerate instance: a log enclosure contains zero")
    t = len(inst.logs)
    X = inst.coeff_bound
    scale = 10**inst.scaling_exponent
    reduced, errs = _certificate_parts(inst.logs, scale, delta)
    lam1_sq = shortest_vector_sq(reduced.rows)
    box_sq = (t - 1) * X * X
    slack = lam1_sq - box_sq
    if slack <= 0:
        raise PrecisionError("lattice cannot separate the coefficient box")
    s_floor = math.isqrt(slack.numerator // slack.denominator)
    l_scaled = Fraction(s_floor) - X * sum(errs)
    if l_scaled <= 0:
        raise PrecisionError("rounding error swallows the shortest-vector bound")
    return l_scaled / scale


def shifted_form_lower_bound(
    inst: LinearFormInstance, shift: RealEnclosure, delta: Fraction = DEFAULT_DELTA
) -> Fraction:
    """Certified L > 0 with |sum x_i log gamma_i - shift| >= L for all |x_i| <= X.

    Used when one coefficient of the full form is pinned (here: the -1 on
    log f_k(alpha)); the certificate is a lower bound on the distance from a
    target vector to the lattice, computed by exact enumeration.
    """
    for enc in inst.logs:
        if enc.contains_zero():
            raise ValueError("degenerate instance: a log enclosure contains zero")
    t = len(inst.logs)
    X = inst.coeff_bound
    scale = 10**inst.scaling_exponent
    reduced, errs = _certificate_parts(inst.logs, scale, delta)
    r_entry, r_err = _scaled_entry(shift, scale)
    target = [Fraction(0)] * (t - 1) + [Fraction(r_entry)]
    dist_sq = closest_vector_sq(reduced.rows, target)
    box_sq = (t - 1) * X * X
    slack = dist_sq - box_sq
    if slack <= 0:
        raise PrecisionError("lattice cannot separate the coefficient box from the target")
    s_floor = math.isqrt(slack.numerator // slack.denominator)
    l_scaled = Fraction(s_floor) - X * sum(errs) - r_err
    if l_scaled <= 0:
        raise PrecisionError("rounding error swallows the distance bound")
    return l_scaled / scale


# ---------------------------------------------------------------------------
# Reduction drivers
# ---------------------------------------------------------------------------


def _log10_int(x: int) -> float:
    """log10 of a positive integer without float overflow."""
    bits = x.bit_length()
    if bits <= 900:
        return math.log10(x)
    return (bits - 900) * _LOG10_2 + math.log10(x >> (bits - 900))


def _scale_ladder(dim: int, X: int, saturation: int | None = None) -> list[int]:
    """Lattice scales to try, best-quality first.

    The sweet spot puts the lattice determinant slightly above the coefficient
    box (about dim*(log10 X + 0.45) digits); much larger scales still certify
    but the resulting L weakens, so doubling is kept as a last-resort rescue
    for separation failures only.  ``saturation`` inserts an extra scale large
    enough to lift a known near-relation of the instance above the box.
    """
    opt = max(16, math.ceil(dim * (_log10_int(X) + 0.45)))
    ladder = [opt, opt + 4, max(2 + dim * len(str(X)), opt + 8)]
    if saturation is not None and saturation > ladder[-1]:
        ladder += [saturation, saturation + 12]
    ladder += [2 * opt, 4 * opt]
    seen: list[int] = []
    for c in ladder:
        if c not in seen:
            seen.append(c)
    return seen


def _z1_saturation_scale(k: int, X: int) -> int:
    """Scale lifting the weight-function near-relation above the box.

    log(2 f_k(alpha)) = (k-1) log(2/alpha) + eps with eps ~ k^2 alpha^(-2k) / 8,
    so integer vectors of size ~k reach form values ~eps; the lattice only
    separates the box once 10^C eps clears it.
    """
    eps_log10 = -2 * k * _LOG10_2 + math.log10(max(k * k / 8.0, 1.0))
    return math.ceil(_log10_int(X) - eps_log10 + 8)


def _prec_for_scale(c: int) -> int:
    return math.ceil(c * 3.322) + 64


def _prime_logs(precision_bits: int) -> list[RealEnclosure]:
    return [log_of_int(p, precision_bits) for p in (2, 3, 5, 7)]


def reduce_small_k(k: int, n_bound: int, delta: Fraction = DEFAULT_DELTA) -> int:
    """Certified replacement bound for n in the order-k smooth-term search.

    Any solution with this k and n below ``n_bound`` satisfies
    |z| < 4/alpha^(n-1) where z is the six-term linear form in
    log 2, log 3, log 5, log 7, log alpha, log f_k(alpha); combining with a
    certified lower bound L on |z| over the coefficient box yields a new bound
    n < 1 + log(4/L)/log alpha.  When the reduced range additionally sits
    below 2^(k/2), the four-prime form of the large-k argument applies per k
    and usually rules the whole range out, collapsing the bound to k+2.
    Returns max(new bound, k+2).
    """
    if not 2 <= k <= 900:
        raise ValueError("reduce_small_k covers 2 <= k <= 900")
    X = int(n_bound)
    if X < k + 2:
        raise ValueError("n_bound below the smallest searched index")

    best: Fraction | None = None
    root_enc: RealEnclosure | None = None
    saturation = _z1_saturation_scale(k, X)
    for c in _scale_ladder(6, X, saturation):
        prec = _prec_for_scale(c)
        root = dominant_root(k, prec).enclosure
        f_log = f_weight(k, root).log()
        logs = _prime_logs(prec) + [root.log(), f_log]
        try:
            best = linear_form_lower_bound(LinearFormInstance(logs, X, c), delta)
            root_enc = root
            break
        except PrecisionError:
            continue
    if best is None:
        # The homogeneous form vanishes on the box when f_k(alpha) is
        # multiplicatively dependent on the other gammas (k = 2 satisfies
        # 5 f^2 alpha^-2 = 1); pin the -1 coefficient on log f instead.
        for c in _scale_ladder(5, X, saturation):
            prec = _prec_for_scale(c)
            root = dominant_root(k, prec).enclosure
            f_log = f_weight(k, root).log()
            logs = _prime_logs(prec) + [root.log()]
            try:
                best = shifted_form_lower_bound(LinearFormInstance(logs, X, c), f_log, delta)
                root_enc = root
                break
            except PrecisionError:
                continue
    if best is None or root_enc is None:
        raise PrecisionError(f"no certified linear-form bound for k={k} at any tried scale")

    # solve 4/alpha^(n-1) > L for n, rounding the quotient up
    cu = _up(128)
    ratio = cu.div(
        cu.log(mpq(4 * best.denominator, best.numerator)),
        _down(128).log(root_enc.lo),
    )
    new_bound = max(int(gmpy2.floor(ratio)) + 2, k + 2)
    return _rule_out_by_four_log(k, new_bound, delta)


def _rule_out_by_four_log(k: int, bound: int, delta: Fraction) -> int:
    """Collapse the bound to k+2 when the four-prime form excludes the range.

    Once every candidate n < bound also satisfies n < 2^(k/2), a solution
    would force |x1 log2 + x2 log3 + x3 log5 + x4 log7| < 24/2^(k/2) with
    coefficients below bound (the close-to-2^(n-2) regime; constant 12 from
    the general case analysis, doubled by the exp-to-linear step, valid for
    k >= 10 where 12/2^(k/2) < 1/2).  If a certified lower bound L on that
    form exceeds 24/2^(k/2), no solution exists and max n collapses to k+2.
    The form cannot vanish since terms with n >= k+2 stay below 2^(n-2).
    """
    if bound <= k + 2 or k < 10:
        return bound
    if (bound - 1) ** 2 >= 2**k:  # need n < 2^(k/2) for every n < bound
        return bound
    try:
        l4 = _four_log_lower_bound(bound, delta)
    except PrecisionError:
        return bound
    # contradiction iff 24/2^(k/2) <= L, compared via squares to keep k odd exact
    if 576 * l4.denominator**2 <= l4.numerator**2 * 2**k:
        return k + 2
    return bound


@dataclass(frozen=True)
class BoundState:
    """Certified (k, n) upper bounds threaded through the large-k reduction."""

    k_max: int
    n_max: int
    round: int = 0

    def __post_init__(self):
        if self.k_max < 2:
            raise ValueError("k_max must be >= 2")
        if self.n_max < self.k_max + 2:
            raise ValueError("n_max must be >= k_max + 2")
        if self.round < 0:
            raise ValueError("round must be >= 0")


# Absolute bounds for 7-smooth terms when k > 900 (the large-k starting state).
LEMMA3_K_BOUND = 1289 * 10**14  # 1.289e17
LEMMA3_N_BOUND = 2795 * 10**142  # 2.795e145


def initial_large_k_state() -> BoundState:
    return BoundState(LEMMA3_K_BOUND, LEMMA3_N_BOUND, 0)


@dataclass(frozen=True)
class ReductionRound:
    round: int
    coeff_bound: int
    form_lower_bound: Fraction
    k_bound: int
    n_bound: int


def _ceil_lemma3(k: int) -> int:
    # pad a float ulp so the certified bound survives the float evaluation
    return math.ceil(lemma3_n_bound(k) * (1.0 + 1e-12)) + 1


def _four_log_lower_bound(X: int, delta: Fraction) -> Fraction:
    """Best certified bound over the scale ladder for the (2,3,5,7) form."""
    best: Fraction | None = None
    for c in _scale_ladder(4, X)[:4]:
        prec = _prec_for_scale(c)
        logs = _prime_logs(prec)
        try:
            cand = linear_form_lower_bound(LinearFormInstance(logs, X, c), delta)
        except PrecisionError:
            continue
        if best is None or cand > best:
            best = cand
    if best is None:
        raise PrecisionError(f"four-log instance not separable at X={X}")
    return best


def _k_bound_from_z2(l_bound: Fraction) -> int:
    """Largest k compatible with 10/2^(k/2) > L, i.e. floor of 2 log2(10/L)."""
    cu = _up(128)
    v = cu.add(_ZERO, mpq(10 * l_bound.denominator, l_bound.numerator))
    return int(gmpy2.floor(cu.mul(cu.log2(v), 2)))


def reduce_large_k_trajectory(
    initial: BoundState | None = None,
    delta: Fraction = DEFAULT_DELTA,
    round_cap: int = 8,
) -> tuple[BoundState, list[ReductionRound]]:
    """Iterate lattice bound / analytic bound until k_max <= 900 (or fixpoint)."""
    state = initial if initial is not None else initial_large_k_state()
    rounds: list[ReductionRound] = []
    while state.k_max > 900:
        if len(rounds) >= round_cap:
            raise ReductionError(f"large-k reduction did not converge in {round_cap} rounds")
        coeff_bound = state.n_max
        l_bound = _four_log_lower_bound(coeff_bound, delta)
        k_new = _k_bound_from_z2(l_bound)
        if k_new >= state.k_max:
            break  # fixpoint: certified information stopped improving
        n_new = _ceil_lemma3(k_new)
        state = BoundState(k_new, n_new, state.round + 1)
        rounds.append(ReductionRound(state.round, coeff_bound, l_bound, k_new, n_new))
    return state, rounds


def reduce_large_k(
    initial: BoundState | None = None,
    delta: Fraction = DEFAULT_DELTA,
    round_cap: int = 8,
) -> BoundState:
    """Final certified state of the large-k reduction loop."""
    state, _ = reduce_large_k_trajectory(initial, delta, round_cap)
    return state
