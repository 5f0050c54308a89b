from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecheck.exact import (
    Mat,
    bracket,
    express_in_basis,
    filtered_span_dims,
    format_rat,
    kernel_of_columns,
    parse_rat,
    rank_kernel,
    rank_of,
    rank_profile,
)

small = st.integers(-4, 4)
fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))


def matrices(entries):
    return st.integers(1, 5).flatmap(
        lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    )


@settings(max_examples=60, deadline=None)
@given(matrices(fracs))
def test_flint_and_python_agree(rows):
    m = Mat.from_rows(rows)
    r1, k1 = rank_kernel(m, "flint")
    r2, k2 = rank_kernel(m, "python")
    assert r1 == r2
    assert k1 == k2
    assert r1 + len(k1) == m.ncols
    for v in k1:
        assert not m.apply(v)


@settings(max_examples=60, deadline=None)
@given(matrices(small))
def test_integer_fast_path_matches_rational(rows):
    cols = [list(c) for c in zip(*rows)]
    as_frac = [[Fraction(x) for x in c] for c in cols]
    assert rank_profile(cols) == rank_profile(as_frac)
    assert rank_of(cols) == rank_of(as_frac)


def test_rank_profile_greedy():
    vs = [[1, 0], [2, 0], [0, 1], [1, 1]]
    assert rank_profile(vs) == [0, 2]
    assert rank_profile([[0, 0]]) == []


def test_express_in_basis():
    coords = express_in_basis([[1, 1], [0, 2]], [[3, 5]])
    assert coords == [[Fraction(3), Fraction(1)]]
    with pytest.raises(ValueError):
        express_in_basis([[1, 0]], [[0, 1]])


def test_kernel_and_bracket():
    assert kernel_of_columns([[1, 0], [0, 0]], 2) == [(Fraction(0), Fraction(1))]
    e = Mat.from_rows([[0, 1], [0, 0]])
    f = Mat.from_rows([[0, 0], [1, 0]])
    assert bracket(e, f) == Mat.from_rows([[1, 0], [0, -1]])


def test_rational_round_trip():
    for x in (Fraction(-3, 7), Fraction(5), Fraction(0)):
        assert parse_rat(format_rat(x)) == x
    assert format_rat(Fraction(4, 2)) == "2"


def test_filtered_span_dims():
    s = filtered_span_dims([([1, 0, 0], 0), ([2, 0, 0], 1), ([0, 1, 0], 1), ([1, 1, 1], 3)])
    assert s.coeffs == (1, 1, 0, 1)


def test_hand_examples():
    assert rank_kernel(Mat.identity(2)) == (2, [])
    assert rank_kernel(Mat.zero(2, 2))[1] == [(1, 0), (0, 1)]
    assert rank_kernel(Mat.from_rows([[1, 2], [2, 4]])) == (1, [(Fraction(-2), Fraction(1))])
    assert filtered_span_dims([([1, 0], 0), ([0, 1], 1)]).coeffs == (1, 1)
    assert filtered_span_dims([([1, 0], 0), ([2, 0], 1)]).coeffs == (1,)
    assert filtered_span_dims([([1, 0], 1), ([1, 1], 1), ([0, 1], 2)]).coeffs == (0, 2)
