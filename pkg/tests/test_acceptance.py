"""Acceptance suite: criteria 1-9, exact, one printed verdict line each.

The default sweep (A1, A2, A3, B2, B3, C3, G2; dim V <= 400) is run once per
session and the per-criterion tests read its reports.
"""

import random
from collections import Counter
from fractions import Fraction

import pytest

from conftest import record
from liecheck.chevalley import (
    centralizer,
    chevalley_for,
    conjugate_to_cartan,
    is_abelian,
    principal_triple,
    structure_report,
)
from liecheck.cli import DEFAULT_TYPES, SweepConfig, run_check, run_sweep, sweep_instances
from liecheck.coinvariants import hilbert_identity_check, invariant_degrees, nilpotent_cone_hilbert_check
from liecheck.peterson import grF_polynomial_ring_check, instance
from liecheck.report import DIVERGENT, FAIL, PASS, SKIP
from liecheck.rootdata import build_root_datum

BUDGET_SECONDS = 15 * 60


@pytest.fixture(scope="module")
def sweep(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweep")
    return run_sweep(SweepConfig(out_dir=out))


def by_check(summary, check):
    return [r for r in summary.reports if r.check == check]


def verdicts(reports):
    return Counter(r.verdict for r in reports)


def test_sweep_covers_every_instance(sweep):
    expected = sum(len(sweep_instances(build_root_datum(t), 400)) for t in DEFAULT_TYPES)
    assert sweep.instances == expected
    assert sweep.attempted == len(sweep.reports)
    assert not any(r.verdict == SKIP for r in sweep.reports)


def test_criterion_1_peterson_sweep(sweep):
    reps = by_check(sweep, "peterson")
    ok = len(reps) == sweep.instances and all(r.verdict == PASS for r in reps)
    fast = sweep.wall_seconds < BUDGET_SECONDS
    record(1, ok and fast, f"{len(reps)} instances, full sweep {sweep.wall_seconds:.0f}s")
    assert ok
    assert fast


def test_criterion_2_multiplicity_free_iff_cyclic(sweep):
    reps = by_check(sweep, "mult1")
    ok = len(reps) == sweep.instances and all(r.verdict == PASS for r in reps)
    catalogue = {"G2": [(1, 0)], "B2": [(1, 0)], "B3": [(1, 0, 0)], "A2": [(k, 0) for k in range(1, 5)]}
    notes = []
    for label, hws in catalogue.items():
        for hw in hws:
            rep = run_check("mult1", label, hw)
            ok = ok and rep.verdict == PASS and rep.details["cyclic"] and rep.details["multiplicity_free"]
    # symmetric powers of C^3: report what is computed
    sym = [k for k in range(1, 5) if run_check("mult1", "A2", (k, 0)).details["multiplicity_free"]]
    notes.append(f"S^k(C^3) multiplicity-free for k in {sym}")
    assert instance("G2", (1, 0)).module.dim == 7
    assert instance("B2", (1, 0)).module.dim == 5
    assert instance("B3", (1, 0, 0)).module.dim == 7
    record(2, ok, "; ".join(notes))
    assert ok


def test_criterion_3_root_lattice(sweep):
    reps = by_check(sweep, "kkk")
    expected = sum(
        1 for t in DEFAULT_TYPES for hw in sweep_instances(build_root_datum(t), 400) if build_root_datum(t).in_root_lattice(hw)
    )
    ok = len(reps) == expected and all(r.verdict == PASS for r in reps)
    ok = ok and all(r.details["cyclic"] == (r.details["dim_V0"] == 1) for r in reps)
    ok = ok and all(r.details["dim_M"] == r.details["dim_V0"] and r.details["dim_generated_by_M"] == r.details["dim"] for r in reps)
    record(3, ok, f"{len(reps)} root-lattice instances")
    assert ok


def test_criterion_4_key_identity(sweep):
    reps = by_check(sweep, "key2")
    ok = bool(reps) and all(r.verdict == PASS for r in reps)
    ok = ok and all(r.details["W_mu"] * r.details["dim_VJ"] == r.details["W"] * r.details["dim_V_mu"] for r in reps)
    refs = {(r.type, tuple(r.details["mu"])) for r in reps}
    for t in DEFAULT_TYPES:
        datum = build_root_datum(t)
        ok = ok and (t, (0,) * datum.rank) in refs
        if t in ("A2", "A3", "B3", "C3"):
            ok = ok and all((t, mu) in refs for mu in datum.minuscule_weights())
    # mu = 0 reads dim V^{g^e} = dim V(0)
    zero = [r for r in reps if not any(r.details["mu"])]
    ok = ok and all(r.details["dim_VJ"] == r.details["dim_V_mu"] for r in zero)
    record(4, ok, f"{len(reps)} (V, mu) pairs")
    assert ok


def test_criterion_5_minuscule(sweep):
    reps = by_check(sweep, "key1")
    ok = bool(reps) and all(r.verdict == PASS for r in reps)
    for t in DEFAULT_TYPES:
        datum = build_root_datum(t)
        ok = ok and {r.highest_weight for r in reps if r.type == t} == set(datum.minuscule_weights())
    surj = by_check(sweep, "surj")
    bad = [r for r in surj if r.verdict == FAIL]
    note = f"minuscule part {'PASS' if ok else 'FAIL'} on {len(reps)} weights"
    if bad:
        note += f"; graded surjectivity shadow FAILS on {len(bad)}/{len(surj)} instances (see decisions ledger)"
    record(5, ok and not bad, note)
    assert ok


@pytest.mark.xfail(strict=True, reason="graded surjectivity shadow is false once lambda has two nonzero coordinates")
def test_criterion_5_surjectivity_shadow(sweep):
    surj = by_check(sweep, "surj")
    assert surj and all(r.verdict == PASS for r in surj)


def test_criterion_5_surjectivity_totals(sweep):
    # what does hold: |Specm V| >= |W/W_lambda| and the first counterexample is the A2 adjoint
    for r in by_check(sweep, "surj"):
        assert r.series_lhs.total() >= r.series_rhs.total()
    adj = next(r for r in by_check(sweep, "surj") if r.type == "A2" and r.highest_weight == (1, 1))
    assert adj.series_lhs.coeffs == (1, 1, 2, 2, 1)
    assert adj.series_rhs.coeffs == (1, 2, 2, 1)


def test_criterion_6_structure():
    ok = True
    rng = random.Random(20260601)
    for t in DEFAULT_TYPES:
        L = chevalley_for(t)
        rep = structure_report(L)
        ok = ok and rep["product_check"] and rep["abelian"] and rep["dim_centralizer"] == L.rank
        triple = principal_triple(L)
        for _ in range(5):
            x = dict(enumerate(triple.e))
            for i in range(L.rank):
                c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                x[L.h_index(i)] = x.get(L.h_index(i), 0) + c
            cent = centralizer(L, {k: v for k, v in x.items() if v})
            ok = ok and cent.dim == L.rank and is_abelian(L, cent.basis)
        conj = conjugate_to_cartan(L, triple)
        jumps = Counter()
        for k in range(1, len(conj.filtration_dims)):
            jumps[k] = conj.filtration_dims[k] - conj.filtration_dims[k - 1]
        ok = ok and conj.filtration_dims[0] == 0 and +jumps == Counter(rep["exponents"])
    record(6, ok, "seven types, 5 random t each")
    assert ok


def test_criterion_7_kostant_brylinski():
    reps = [grF_polynomial_ring_check(t, 20) for t in DEFAULT_TYPES]
    ok = all(r.verdict == PASS for r in reps)
    record(7, ok, "filtered S h to degree 20")
    assert ok


def test_criterion_8_invariants():
    reps = [hilbert_identity_check(t, 30) for t in DEFAULT_TYPES]
    ok = all(r.verdict == PASS for r in reps)
    sl2, sl3 = chevalley_for("A1"), chevalley_for("A2")
    n2 = nilpotent_cone_hilbert_check(sl2, 10)
    ok = ok and n2.verdict == PASS and n2.series_lhs.coeffs[:6] == (1, 3, 5, 7, 9, 11)
    n3 = nilpotent_cone_hilbert_check(sl3, 6)
    ok = ok and n3.verdict == PASS
    ok = ok and invariant_degrees(sl2).degrees == (2,) and invariant_degrees(sl3).degrees == (2, 3)
    record(8, ok, "identity to degree 30; nilcone sl2 to 10, sl3 to 6")
    assert ok


def test_criterion_9_oracles(sweep):
    reps = by_check(sweep, "oracles")
    ok = len(reps) == sweep.instances and all(r.verdict == PASS for r in reps)
    cells = [r for r in by_check(sweep, "cells") if r.type in ("A1", "A2", "B2")]
    v = verdicts(cells)
    ok = ok and bool(cells) and v[FAIL] == 0
    record(9, ok, f"{len(reps)} modules; cell oracle {v[PASS]} agree, {v[DIVERGENT]} divergent")
    assert ok
