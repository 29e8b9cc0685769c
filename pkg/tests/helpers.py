"""Independent oracles used by the test suite.

Everything here deliberately avoids the library's own code paths: naive
recurrence sums, Fraction Gram-Schmidt, Hermite normal form, and brute-force
enumeration serve as the second route for the dual checks.
"""

from __future__ import annotations

import math
from fractions import Fraction


def naive_kfib(k: int, n: int) -> int:
    """Direct k-term-sum evaluation from the initial conditions."""
    if n <= 0:
        return 0
    terms = {m: 0 for m in range(2 - k, 1)}
    terms[1] = 1
    for m in range(2, n + 1):
        terms[m] = sum(terms.get(m - j, 0) for j in range(1, k + 1))
    return terms[n]


def frac_gram_schmidt(rows):
    n = len(rows)
    bstar = [[Fraction(v) for v in row] for row in rows]
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = []
    for i in range(n):
        for j in range(i):
            mu[i][j] = sum(Fraction(rows[i][t]) * bstar[j][t] for t in range(n)) / norms[j]
            bstar[i] = [x - mu[i][j] * y for x, y in zip(bstar[i], bstar[j])]
        norms.append(sum(x * x for x in bstar[i]))
    return mu, norms


def integer_det(rows) -> int:
    """Fraction-free Bareiss determinant."""
    n = len(rows)
    m = [list(map(int, row)) for row in rows]
    sign = 1
    prev = 1
    for col in range(n - 1):
        if m[col][col] == 0:
            pivot = next((r for r in range(col + 1, n) if m[r][col] != 0), None)
            if pivot is None:
                return 0
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]


def hermite_normal_form(rows):
    """Row-style HNF (canonical form of the lattice spanned by the rows)."""
    m = [list(map(int, row)) for row in rows]
    n_rows = len(m)
    n_cols = len(m[0])
    r = 0
    for c in range(n_cols):
        while True:
            nonzero = [i for i in range(r, n_rows) if m[i][c] != 0]
            if not nonzero:
                break
            i0 = min(nonzero, key=lambda i: abs(m[i][c]))
            m[r], m[i0] = m[i0], m[r]
            done = True
            for i in range(r + 1, n_rows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < n_rows and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-v for v in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == n_rows:
                break
    return m


def brute_shortest_sq(rows, coeff_range: int) -> int:
    """Minimum nonzero squared norm over integer combinations within the range."""
    import itertools

    n = len(rows)
    best = None
    for coeffs in itertools.product(range(-coeff_range, coeff_range + 1), repeat=n):
        if all(c == 0 for c in coeffs):
            continue
        vec = [sum(c * rows[i][j] for i, c in enumerate(coeffs)) for j in range(len(rows[0]))]
        norm = sum(v * v for v in vec)
        if best is None or norm < best:
            best = norm
    return best


def enumerate_shortest_sq(rows) -> Fraction:
    """Exact lambda_1^2 by depth-first search over GS coefficient bounds.

    Independent of the library's enumeration (fresh implementation with its
    own recursion layout); exact Fraction pruning throughout.
    """
    mu, norms = frac_gram_schmidt(rows)
    n = len(rows)
    best = min(Fraction(sum(v * v for v in row)) for row in rows)

    def descend(level, partial, coords):
        nonlocal best
        if level < 0:
            if any(coords) and partial < best:
                best = partial
            return
        center = -sum(coords[j] * mu[j][level] for j in range(level + 1, n))
        limit = (best - partial) / norms[level]
        if limit < 0:
            return
        radius = math.isqrt(limit.numerator // limit.denominator) + 1
        base = (2 * center.numerator + center.denominator) // (2 * center.denominator)
        for offset in range(-radius, radius + 1):
            x = base + offset
            term = norms[level] * (x - center) ** 2
            if partial + term > best:
                continue
            coords[level] = x
            descend(level - 1, partial + term, coords)
            coords[level] = 0

    descend(n - 1, Fraction(0), [0] * n)
    return best
