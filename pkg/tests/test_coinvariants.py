import pytest

from liecheck.chevalley import chevalley_for
from liecheck.coinvariants import (
    LIE_INVARIANT_DIM_LIMIT,
    chevalley_invariant_check,
    fundamental_degrees,
    hilbert_identity_check,
    invariant_basis,
    invariant_degrees,
    lie_invariants,
    nilpotent_cone_hilbert_check,
    parabolic_coinvariant_dims,
    reynolds_invariant_dim,
    verify_borel,
    verify_key_i,
    verify_surjectivity_shadow,
)
from liecheck.report import FAIL, PASS
from liecheck.rootdata import build_root_datum

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


def test_borel_examples():
    a2 = build_root_datum("A2")
    assert parabolic_coinvariant_dims(a2, (1, 1)).series.coeffs == (1, 2, 2, 1)
    assert parabolic_coinvariant_dims(a2, (0, 0)).series.coeffs == (1,)
    rep = parabolic_coinvariant_dims(a2, (0, 1))
    assert rep.parabolic == (0,) and rep.series.coeffs == (1, 1, 1)


@pytest.mark.parametrize("label", TYPES)
def test_full_flag_coinvariants(label):
    d = build_root_datum(label)
    rep = verify_borel(label, d.rho)
    assert rep.verdict == PASS
    assert rep.series_lhs.total() == d.weyl_order
    assert rep.series_lhs.is_palindromic()
    assert rep.series_lhs.top_degree == d.num_positive_roots


@pytest.mark.parametrize("label,parabolic,d", [("A2", (), 3), ("A2", (0,), 4), ("B2", (0, 1), 4), ("G2", (0, 1), 6), ("A3", (1,), 3)])
def test_reynolds_oracle(label, parabolic, d):
    assert len(invariant_basis(label, parabolic, d)) == reynolds_invariant_dim(label, parabolic, d)


@pytest.mark.parametrize("label", TYPES)
def test_invariant_degrees(label):
    assert chevalley_invariant_check(label, 12).verdict == PASS
    assert hilbert_identity_check(label, 30).verdict == PASS


def test_fundamental_degrees():
    assert fundamental_degrees("A3") == (2, 3, 4)
    assert fundamental_degrees("G2") == (2, 6)


def test_minuscule_key_identity():
    rep = verify_key_i("A3", (0, 1, 0))
    assert rep.verdict == PASS
    assert rep.series_lhs.coeffs == (1, 1, 2, 1, 1)
    assert rep.details["dim"] * rep.details["W_mu"] == rep.details["W"]
    with pytest.raises(ValueError):
        verify_key_i("G2", (1, 0))


def test_surjectivity_shadow():
    assert verify_surjectivity_shadow("A2", (0, 0)).verdict == PASS
    assert verify_surjectivity_shadow("A2", (2, 0)).verdict == PASS
    # H^2 of G/B has dimension 2, the cyclic series has one class in degree 1
    bad = verify_surjectivity_shadow("A2", (1, 1))
    assert bad.verdict == FAIL
    assert bad.series_lhs.coefficient(1) == 1 and bad.series_rhs.coefficient(1) == 2


def test_sl2_lie_invariants():
    sl2 = chevalley_for("A1")
    assert lie_invariants(sl2, 0) == 1
    assert lie_invariants(sl2, 2) == 1
    assert lie_invariants(sl2, 1) == lie_invariants(sl2, 3) == 0
    assert invariant_degrees(sl2).degrees == (2,)
    rep = nilpotent_cone_hilbert_check(sl2, 10)
    assert rep.verdict == PASS
    assert rep.series_lhs.coeffs[:4] == (1, 3, 5, 7)


def test_sl3_invariants():
    sl3 = chevalley_for("A2")
    assert invariant_degrees(sl3).degrees == (2, 3)
    assert nilpotent_cone_hilbert_check(sl3, 6).series_lhs.coeffs == (1, 8, 35, 111, 286, 637, 1274)


def test_size_limit():
    with pytest.raises(ValueError):
        lie_invariants(chevalley_for("G2"), 2, limit=LIE_INVARIANT_DIM_LIMIT)
