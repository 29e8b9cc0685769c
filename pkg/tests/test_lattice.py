import math
import random
from fractions import Fraction

import pytest

from kfib.enclosure import log_of_int
from kfib.errors import PrecisionError
from kfib.lattice import (
    LatticeBasis,
    LinearFormInstance,
    closest_vector_sq,
    linear_form_lower_bound,
    lll_reduce,
    rational_gram_schmidt,
    reduce_small_k,
    shifted_form_lower_bound,
    shortest_vector_sq,
)

from helpers import (
    brute_shortest_sq,
    enumerate_shortest_sq,
    frac_gram_schmidt,
    hermite_normal_form,
    integer_det,
)

DELTA = Fraction(99, 100)


def random_basis(rng, dim, bound=10**6):
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(dim)]
        if integer_det(rows) != 0:
            return rows


def assert_reduced(rows, delta=DELTA):
    mu, norms = frac_gram_schmidt(rows)
    for i in range(len(rows)):
        for j in range(i):
            assert abs(mu[i][j]) <= Fraction(1, 2), "size reduction violated"
    for i in range(1, len(rows)):
        assert norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1], "Lovasz violated"


def test_identity_is_fixed_point():
    basis = LatticeBasis([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert lll_reduce(basis).rows == basis.rows


def test_textbook_example():
    reduced = lll_reduce(LatticeBasis([[4, 1], [1, 1]]))
    norms = [sum(v * v for v in row) for row in reduced.rows]
    # brute force over coefficients in [-5, 5]^2: shortest vector has norm^2 = 2
    assert brute_shortest_sq([[4, 1], [1, 1]], 5) == 2
    assert norms[0] == 2


def test_dependent_rows_rejected():
    with pytest.raises(ValueError):
        lll_reduce(LatticeBasis([[1, 2], [2, 4]]))
    with pytest.raises(ValueError):
        lll_reduce(LatticeBasis([[0, 0], [1, 1]]))


def test_delta_validation():
    with pytest.raises(ValueError):
        lll_reduce(LatticeBasis([[1, 0], [0, 1]]), Fraction(1, 4))
    with pytest.raises(ValueError):
        lll_reduce(LatticeBasis([[1, 0], [0, 1]]), Fraction(1))


def test_random_bases_properties():
    rng = random.Random(20240)
    for trial in range(120):
        dim = rng.randint(2, 6)
        rows = random_basis(rng, dim)
        reduced = lll_reduce(LatticeBasis(rows)).rows
        assert_reduced(reduced)
        assert abs(integer_det(reduced)) == abs(integer_det(rows))
        assert hermite_normal_form(reduced) == hermite_normal_form(rows)


def test_first_vector_against_enumerated_lambda1():
    rng = random.Random(555)
    for trial in range(40):
        dim = rng.randint(2, 4)
        rows = random_basis(rng, dim, bound=10**4)
        reduced = lll_reduce(LatticeBasis(rows)).rows
        lam1 = enumerate_shortest_sq(reduced)
        first = sum(v * v for v in reduced[0])
        assert first <= 2 ** (dim - 1) * lam1


def test_shortest_vector_matches_independent_enumeration():
    rng = random.Random(77)
    for trial in range(30):
        dim = rng.randint(2, 5)
        rows = random_basis(rng, dim, bound=10**3)
        reduced = lll_reduce(LatticeBasis(rows)).rows
        assert shortest_vector_sq(reduced) == enumerate_shortest_sq(reduced)


def test_shortest_vector_small_cases():
    assert shortest_vector_sq([[4, 1], [1, 1]]) == 2
    assert shortest_vector_sq([[7, 0], [0, 3]]) == 9


def test_closest_vector_cases():
    assert closest_vector_sq([[2, 0], [0, 2]], [1, 1]) == 2
    assert closest_vector_sq([[1, 0], [0, 1]], [Fraction(1, 2), 0]) == Fraction(1, 4)
    assert closest_vector_sq([[3, 1], [1, 2]], [0, 0]) == 0


def test_gram_schmidt_rejects_dependent_rows():
    with pytest.raises(ValueError):
        rational_gram_schmidt([[1, 1], [2, 2]])


def test_closest_vector_against_diagonal_oracle():
    # distance to a diagonal lattice has a per-coordinate closed form, and
    # unimodular row operations leave the lattice (hence the distance) fixed
    rng = random.Random(4242)
    for _ in range(25):
        dim = rng.randint(2, 4)
        diag = [rng.randint(1, 50) for _ in range(dim)]
        target = [Fraction(rng.randint(-500, 500), rng.randint(1, 7)) for _ in range(dim)]
        expected = sum(min(t % d, d - (t % d)) ** 2 for t, d in zip(target, diag))
        rows = [[diag[i] if j == i else 0 for j in range(dim)] for i in range(dim)]
        for _ in range(12):  # scramble with unimodular row ops
            i, j = rng.sample(range(dim), 2)
            rows[i] = [a + rng.randint(-3, 3) * b for a, b in zip(rows[i], rows[j])]
        assert closest_vector_sq(rows, target) == expected


# ---------------------------------------------------------------------------
# linear-form certificates
# ---------------------------------------------------------------------------


def test_two_log_instance():
    logs = [log_of_int(2, 128), log_of_int(3, 128)]
    bound = linear_form_lower_bound(LinearFormInstance(logs, 1, 24), DELTA)
    # brute force over the 8 nonzero pairs: min is log(3/2)
    assert 0 < bound <= Fraction(4054651081081645, 10**16)


def test_multiplicative_dependence_documented():
    # 2 log 2 - log 4 = 0 exists only at X >= 2; at X = 1 the minimum is log 2
    logs = [log_of_int(2, 160), log_of_int(4, 160)]
    bound = linear_form_lower_bound(LinearFormInstance(logs, 1, 30), DELTA)
    assert 0 < bound <= Fraction(6931471805599453, 10**16)
    with pytest.raises(PrecisionError):
        linear_form_lower_bound(LinearFormInstance(logs, 2, 30), DELTA)
    with pytest.raises(PrecisionError):
        linear_form_lower_bound(LinearFormInstance(logs, 2, 60), DELTA)


def test_degenerate_zero_log_rejected():
    logs = [log_of_int(2, 64), log_of_int(1, 64)]
    with pytest.raises(ValueError):
        linear_form_lower_bound(LinearFormInstance(logs, 1, 20), DELTA)


def test_four_log_soundness_brute_force_x4():
    # exhaustive check at X = 4 over all 9^4 coefficient vectors
    prec = 160
    logs = [log_of_int(p, prec) for p in (2, 3, 5, 7)]
    bound = linear_form_lower_bound(LinearFormInstance(logs, 4, 20), DELTA)
    refs = [math.log(p) for p in (2, 3, 5, 7)]
    true_min = min(
        abs(a * refs[0] + b * refs[1] + c * refs[2] + d * refs[3])
        for a in range(-4, 5)
        for b in range(-4, 5)
        for c in range(-4, 5)
        for d in range(-4, 5)
        if (a, b, c, d) != (0, 0, 0, 0)
    )
    assert float(bound) <= true_min + 1e-12
    assert bound > 0


def test_monotone_in_coeff_bound_at_fixed_scale():
    prec = 200
    logs = [log_of_int(p, prec) for p in (2, 3, 5, 7)]
    small = linear_form_lower_bound(LinearFormInstance(logs, 10, 40), DELTA)
    large = linear_form_lower_bound(LinearFormInstance(logs, 1000, 40), DELTA)
    assert large <= small


def test_shifted_certificate_sound_small_case():
    # |a log2 + b log3 - log 5| over |a|,|b| <= 6, exhaustive reference
    prec = 160
    logs = [log_of_int(2, prec), log_of_int(3, prec)]
    shift = log_of_int(5, prec)
    bound = shifted_form_lower_bound(LinearFormInstance(logs, 6, 24), shift, DELTA)
    true_min = min(
        abs(a * math.log(2) + b * math.log(3) - math.log(5))
        for a in range(-6, 7)
        for b in range(-6, 7)
    )
    assert 0 < float(bound) <= true_min + 1e-12


def test_shifted_certificate_detects_target_in_lattice():
    prec = 160
    logs = [log_of_int(2, prec), log_of_int(3, prec)]
    shift = log_of_int(12, prec)  # 12 = 2^2 * 3 is in the lattice
    with pytest.raises(PrecisionError):
        shifted_form_lower_bound(LinearFormInstance(logs, 4, 40), shift, DELTA)


def test_instance_validation():
    logs = [log_of_int(2, 64), log_of_int(3, 64)]
    with pytest.raises(ValueError):
        LinearFormInstance(logs, 0, 20)
    with pytest.raises(ValueError):
        LinearFormInstance(logs, 5, 0)
    with pytest.raises(ValueError):
        LinearFormInstance(logs[:1], 5, 20)


# ---------------------------------------------------------------------------
# reduction drivers
# ---------------------------------------------------------------------------


def test_reduce_small_k_bounds():
    from kfib.lattice import _ceil_lemma3

    bound2 = reduce_small_k(2, _ceil_lemma3(2))
    assert 14 <= bound2 <= 1100  # must keep the real solutions (max n = 12) reachable
    bound3 = reduce_small_k(3, _ceil_lemma3(3))
    assert 17 <= bound3 <= 1100
    assert reduce_small_k(900, _ceil_lemma3(900)) >= 902


def test_reduce_small_k_validation():
    with pytest.raises(ValueError):
        reduce_small_k(1, 1000)
    with pytest.raises(ValueError):
        reduce_small_k(901, 1000)
    with pytest.raises(ValueError):
        reduce_small_k(10, 5)


def test_reduce_small_k_iterates_downward():
    from kfib.lattice import _ceil_lemma3

    bound = reduce_small_k(5, _ceil_lemma3(5))
    tighter = reduce_small_k(5, bound)
    assert 7 <= tighter <= bound
