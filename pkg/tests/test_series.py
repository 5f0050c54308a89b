import pytest

from liecheck.series import (
    GradedSeries,
    coeffwise_geq,
    compare,
    one_minus_power,
    product_of_geometric,
    truncated_divide,
)


def test_product_of_geometric_counts_partitions():
    # parts 1 and 2: floor(d/2) + 1
    s = product_of_geometric([1, 2], 10)
    assert s.coeffs == tuple(d // 2 + 1 for d in range(11))


def test_division_inverts_multiplication():
    p = product_of_geometric([2, 3], 12)
    back = p * one_minus_power(2) * one_minus_power(3)
    assert back.coeffs == (1,)
    assert truncated_divide(GradedSeries.one(), one_minus_power(2) * one_minus_power(3), 12) == p


def test_truncation_semantics():
    s = GradedSeries((1, 2, 3), trunc=1)
    assert s.coeffs == (1, 2)
    with pytest.raises(ValueError):
        s.coefficient(2)
    c = compare(s, GradedSeries((1, 2, 7)))
    assert c.equal and c.clamped and c.bound == 1


def test_signed_and_palindromic():
    s = GradedSeries((1, -1))
    assert not s.is_nonnegative()
    assert GradedSeries((1, 2, 2, 1)).is_palindromic()
    assert str(GradedSeries((1, 1, 2))) == "1 + q + 2q^2"


def test_coeffwise_geq():
    assert coeffwise_geq(GradedSeries((1, 2, 1)), GradedSeries((1, 1)))
    assert not coeffwise_geq(GradedSeries((1, 1, 2, 2, 1)), GradedSeries((1, 2, 2, 1)))


def test_pairs_round_trip():
    s = GradedSeries((1, 0, 3))
    assert GradedSeries.from_pairs(s.to_pairs()) == s


def test_hand_examples():
    s = GradedSeries((1, 1)) * GradedSeries.geometric(1, 3)
    assert s == GradedSeries((1, 2, 2, 2), trunc=3)
    assert coeffwise_geq(GradedSeries((1, 2, 1)), GradedSeries((1, 1, 1)))
    assert product_of_geometric([1, 2], 5).coeffs == (1, 1, 2, 2, 3, 3)
