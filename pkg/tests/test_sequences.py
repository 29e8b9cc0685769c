import pytest
from hypothesis import given, settings, strategies as st

from kfib.sequences import KIndex, kfib, kfib_stream, kfib_value, kfib_values

from helpers import naive_kfib


def test_table_values():
    assert kfib_value(2, 12) == 144
    assert kfib_value(4, 9) == 108
    assert kfib_value(6, 8) == 63
    assert kfib_value(3, 0) == 0


def test_kfib_wraps_index():
    term = kfib(KIndex(2, 12))
    assert term.value == 144
    assert term.index == KIndex(2, 12)


def test_tribonacci_prefix():
    assert list(kfib_values(3, 7)) == [1, 1, 2, 4, 7, 13, 24]


def test_single_term_stream():
    assert list(kfib_values(2, 1)) == [1]


def test_tetranacci_stream():
    # listing: 1, 1, 2, 4, 8, 15, 29, 56, 108, 208, ...
    values = list(kfib_values(4, 10))
    assert values[7] == 56  # F(8)
    assert values[-1] == 208  # F(10)


def test_stream_terms_carry_indices():
    terms = list(kfib_stream(5, 4))
    assert [t.index.n for t in terms] == [1, 2, 3, 4]
    assert [t.value for t in terms] == [1, 1, 2, 4]


def test_powers_of_two_prefix():
    for k in range(2, 12):
        for n in range(2, k + 2):
            assert kfib_value(k, n) == 2 ** (n - 2)
        assert kfib_value(k, k + 2) == 2**k - 1


def test_below_power_of_two_after_prefix():
    for k in range(2, 11):
        for n in range(k + 2, 4 * k + 10):
            assert kfib_value(k, n) < 2 ** (n - 2)


def test_matches_naive_sum_exhaustively():
    for k in range(2, 11):
        values = list(kfib_values(k, 200))
        expected = [naive_kfib(k, n) for n in range(1, 201)]
        assert values == expected, k


def test_monotone():
    for k in (2, 3, 7):
        values = list(kfib_values(k, 100))
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_zero_for_nonpositive_indices():
    assert kfib_value(5, -3) == 0
    assert kfib_value(5, 0) == 0


def test_domain_errors():
    with pytest.raises(ValueError):
        kfib_value(1, 5)
    with pytest.raises(ValueError):
        kfib_value(4, -3)
    with pytest.raises(ValueError):
        KIndex(3, -2)
    with pytest.raises(ValueError):
        list(kfib_values(3, 0))


@settings(deadline=None, max_examples=60)
@given(k=st.integers(2, 12), n=st.integers(1, 120))
def test_doubling_identity_matches_naive(k, n):
    assert kfib_value(k, n) == naive_kfib(k, n)
