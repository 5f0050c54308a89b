from fractions import Fraction

import pytest

from liecheck.chevalley import chevalley_for, principal_triple
from liecheck.peterson import (
    FiltrationTable,
    annihilator_generators,
    brylinski_filtration,
    cyclic_submodule,
    filtration_for,
    instance,
    joint_kernel,
    monomials_of_degree,
    schubert_cell_oracle,
    specm_scheme,
    specm_scheme_full_scan,
    verify_cells,
    verify_key_ii,
    verify_kkk_and_ue,
    verify_mult1,
    verify_oracles,
    verify_peterson,
)
from liecheck.report import PASS
from liecheck.rootdata import build_root_datum

SMALL = [("A1", (0,)), ("A1", (2,)), ("A1", (5,)), ("A2", (1, 1)), ("A2", (2, 0)), ("A2", (2, 1)),
         ("B2", (1, 0)), ("B2", (0, 2)), ("G2", (1, 0)), ("A3", (1, 0, 1)), ("C3", (1, 0, 0))]


def test_principal_triple_a2():
    L = chevalley_for("A2")
    t = principal_triple(L)
    assert t.h[:2] == (2, 2) and not any(t.h[2:])
    assert [t.f[L.f_index(i)] for i in range(2)] == [2, 2]


@pytest.mark.parametrize("label,degrees", [("A1", (1,)), ("A2", (1, 2)), ("G2", (1, 5)), ("B3", (1, 3, 5))])
def test_ge_degrees_and_filtration_jumps(label, degrees):
    inst = instance(label, build_root_datum(label).highest_root)
    assert tuple(sorted(inst.act.degrees)) == degrees
    assert filtration_for(label).jumps == degrees


def test_filtration_a1():
    L = chevalley_for("A1")
    assert brylinski_filtration(L, principal_triple(L)).dims == (0, 1)


def test_spec_examples():
    assert verify_peterson("A1", (0,)).series_lhs.coeffs == (1,)
    adj1 = cyclic_submodule(instance("A1", (2,)).act)
    assert adj1.series.coeffs == (1, 1, 1) and adj1.cyclic
    adj2 = instance("A2", (1, 1))
    assert adj2.cyclic.total == 7 and not adj2.cyclic.cyclic
    rep = verify_peterson("A2", (1, 1))
    assert rep.verdict == PASS and rep.series_lhs == rep.series_rhs
    assert rep.series_lhs.coeffs == (1, 1, 2, 2, 1)
    assert rep.lam == (-1, -1)
    g2 = verify_mult1("G2", (1, 0))
    assert g2.details["cyclic"] and g2.details["multiplicity_free"] and g2.details["dim"] == 7
    b2 = verify_kkk_and_ue("B2", (0, 2))
    assert b2.details["dim"] == 10 and b2.details["dim_V0"] == 2 and not b2.details["cyclic"]
    assert b2.details["dim_generated_by_M"] == 10


@pytest.mark.parametrize("n", range(0, 6))
def test_sl2_closed_form(n):
    rep = verify_peterson("A1", (n,))
    assert rep.verdict == PASS
    assert rep.series_lhs.coeffs == (1,) * (n + 1)
    ann = annihilator_generators(instance("A1", (n,)).act)
    assert ann.counts() == {n + 1: 1}
    (gen,) = [g for _, gs in ann.generators for g in gs]
    assert list(gen) == [(n + 1,)]


def test_trivial_annihilator_is_augmentation():
    ann = annihilator_generators(instance("A2", (0, 0)).act)
    assert ann.counts() == {1: 1, 2: 1}


@pytest.mark.parametrize("label,hw", SMALL)
def test_annihilator_bookkeeping(label, hw):
    act = instance(label, hw).act
    cyc = cyclic_submodule(act)
    ann = annihilator_generators(act)
    for d in range(ann.cap + 1):
        assert ann.monomial_counts[d] == len(monomials_of_degree(act.degrees, d))
        assert ann.image_ranks[d] == cyc.series.coefficient(d)
        assert ann.monomial_counts[d] == ann.image_ranks[d] + ann.kernel_dims[d]


@pytest.mark.parametrize("label,hw", SMALL)
def test_specm_matches_full_scan(label, hw):
    inst = instance(label, hw)
    filt = filtration_for(label)
    sch = specm_scheme(inst.module, filt)
    full = specm_scheme_full_scan(inst.module, filt, sch.max_weight_scanned + 2)
    assert full.truncate(sch.max_weight_scanned + 2) == sch.series.truncate(sch.max_weight_scanned + 2)
    assert sch.series.total() == len(sch.points)


def _modified(filt: FiltrationTable) -> FiltrationTable:
    """Another adapted basis: reverse the order and add lower-filtration vectors to higher ones."""
    order = sorted(range(len(filt.degrees)), key=lambda j: (filt.degrees[j], -j))
    basis = [list(filt.basis[j]) for j in order]
    degrees = [filt.degrees[j] for j in order]
    for j in range(1, len(basis)):
        for k in range(j):
            if degrees[k] <= degrees[j]:
                basis[j] = [x + Fraction(k + 2, 3) * y for x, y in zip(basis[j], basis[k])]
    return FiltrationTable(filt.dims, tuple(tuple(b) for b in basis), tuple(degrees))


@pytest.mark.parametrize("label,hw", [("A2", (1, 1)), ("A3", (1, 0, 1)), ("B2", (1, 1)), ("G2", (0, 1)), ("C3", (0, 1, 0))])
def test_series_independent_of_adapted_basis(label, hw):
    inst = instance(label, hw)
    filt = filtration_for(label)
    assert specm_scheme(inst.module, _modified(filt)).series == specm_scheme(inst.module, filt).series


def test_key_identity_examples():
    rep = verify_key_ii("A2", (0, 0), (1, 1))
    assert rep.verdict == PASS
    assert (rep.details["W"], rep.details["W_mu"], rep.details["dim_VJ"], rep.details["dim_V_mu"]) == (6, 6, 2, 2)
    triv = verify_key_ii("A3", (0, 0, 0), (0, 0, 0))
    assert triv.details["dim_VJ"] == 1
    assert verify_key_ii("A3", (0, 1, 0), (2, 0, 0)).verdict == PASS
    with pytest.raises(ValueError):
        verify_key_ii("A2", (1, 0), (1, 1))  # wrong coset
    with pytest.raises(ValueError):
        verify_key_ii("G2", (1, 0), (1, 0))  # not minuscule


def test_joint_kernel_of_augmentation_is_invariants():
    inst = instance("A2", (1, 1))
    gens = [g for _, gs in annihilator_generators(instance("A2", (0, 0)).act).generators for g in gs]
    assert joint_kernel(inst.act, gens) == 2


def test_cells_oracle():
    d = build_root_datum("A1")
    assert schubert_cell_oracle(d, (0,)).coeffs == (1,)
    assert schubert_cell_oracle(d, (2,)).coeffs == (1, 1, 1)
    for label, hw in [("A2", (1, 1)), ("B2", (1, 1)), ("A2", (3, 0))]:
        assert verify_cells(label, hw).verdict == PASS


@pytest.mark.parametrize("label,hw", SMALL)
def test_oracles(label, hw):
    assert verify_oracles(label, hw).verdict == PASS
