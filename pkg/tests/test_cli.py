import csv
import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecheck import cli, peterson
from liecheck.cli import EXIT_FAIL, EXIT_OK, EXIT_SKIP, EXIT_USAGE, SweepConfig, main, run_sweep, sweep_instances
from liecheck.rootdata import build_root_datum
from liecheck.series import GradedSeries


def test_verify_examples(tmp_path, capsys):
    assert main(["verify", "peterson", "A2", "1,1", "--out", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    lhs = next(line for line in out.splitlines() if "lhs:" in line).split(":", 1)[1]
    rhs = next(line for line in out.splitlines() if "rhs:" in line).split(":", 1)[1]
    assert lhs == rhs == " 1 + q + 2q^2 + 2q^3 + q^4"
    report = json.loads((tmp_path / "peterson-A2-1_1.json").read_text())
    assert report["schema_version"] == 1 and report["verdict"] == "PASS"
    assert report["lambda"] == "-1,-1" and report["highest_weight"] == "1,1"
    assert "millis" not in report
    assert main(["verify", "mult1", "G2", "1,0"]) == EXIT_OK
    assert main(["verify", "peterson", "A1", "0"]) == EXIT_OK
    assert "lhs: 1\n" in capsys.readouterr().out


def test_flag_forms_and_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path))
    assert main(["verify", "kkk", "--type", "B2", "--weight", "0,2"]) == EXIT_OK
    assert (tmp_path / "kkk-B2-0_2.json").exists()
    assert main(["verify", "key2", "A3", "2,0,0", "--mu", "0,1,0"]) == EXIT_OK
    assert (tmp_path / "key2-A3-2_0_0-mu0_1_0.json").exists()
    assert main(["verify", "hilb4", "G2", "--trunc", "12"]) == EXIT_OK


@pytest.mark.parametrize(
    "argv,code",
    [
        (["verify", "peterson", "A9", "1"], EXIT_USAGE),
        (["verify", "peterson", "A2", "1;1"], EXIT_USAGE),
        (["verify", "peterson", "A2", "1,1,1"], EXIT_USAGE),
        (["verify", "peterson", "A2", "--weight=-1,0"], EXIT_USAGE),
        (["verify", "key2", "A2", "1,1", "--mu", "1,0"], EXIT_USAGE),
        (["verify", "peterson", "B3", "2,2,2"], EXIT_SKIP),
        (["verify", "peterson", "A2", "2,2", "--dim-bound", "10"], EXIT_SKIP),
        (["verify", "surj", "A2", "1,1"], EXIT_FAIL),
    ],
)
def test_exit_codes(argv, code):
    assert main(argv) == code


def test_bad_check_name_is_usage():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense", "A2", "1,1"])
    assert exc.value.code == 2


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=6))
def test_injected_series_sets_exit_code(coeffs):
    real = peterson.specm_scheme

    def fake(module, filt):
        sch = real(module, filt)
        sch.series = GradedSeries(tuple(coeffs))
        return sch

    peterson.specm_scheme = fake
    try:
        code = main(["verify", "peterson", "A2", "2,0"])
    finally:
        peterson.specm_scheme = real
    expected = EXIT_OK if GradedSeries(tuple(coeffs)) == GradedSeries((1, 1, 1, 1, 1, 1)) else EXIT_FAIL
    assert code == expected


def test_empty_sweep(tmp_path, capsys):
    assert main(["sweep", "--type=", "--out", str(tmp_path), "--jobs", "1"]) == EXIT_OK
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["instances"] == 0 and summary["attempted"] == 0


def test_small_dim_bound_sweep_skips():
    summary = run_sweep(SweepConfig(types=("A2", "B2"), dim_bound=10, max_dim=40, families=("peterson", "mult1", "key2")))
    counts = {v: sum(c[v] for c in summary.counts.values()) for v in ("PASS", "FAIL", "SKIP")}
    assert counts["FAIL"] == 0
    assert counts["SKIP"] > counts["PASS"]
    assert summary.attempted == len(summary.reports)


def test_sweep_reproducible_and_ordered(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    cfg = dict(types=("A1", "B2"), max_dim=20, families=("peterson", "mult1", "key2", "cells"))
    run_sweep(SweepConfig(out_dir=a, jobs=1, **cfg))
    s2 = run_sweep(SweepConfig(out_dir=b, jobs=2, **cfg))
    names = sorted(p.name for p in a.glob("*.json"))
    assert names == sorted(p.name for p in b.glob("*.json"))
    for name in names:
        if name not in ("summary.json", "timings.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()
    order = [r.highest_weight for r in s2.reports if r.check == "peterson"]
    expected = sweep_instances(build_root_datum("A1"), 20) + sweep_instances(build_root_datum("B2"), 20)
    assert order == expected


def test_table(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["table", str(empty)]) == EXIT_OK
    assert capsys.readouterr().out == "check,type,highest_weight,lambda,verdict,series_lhs,series_rhs\n"
    reports = tmp_path / "reports"
    assert main(["verify", "peterson", "A2", "1,1", "--out", str(reports)]) == EXIT_OK
    assert main(["verify", "surj", "A2", "1,1", "--out", str(reports)]) == EXIT_FAIL
    capsys.readouterr()
    assert main(["table", str(reports)]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    pet = next(r for r in rows if r["check"] == "peterson")
    assert pet["series_lhs"] == pet["series_rhs"] == "1,1,2,2,1"
    assert next(r for r in rows if r["check"] == "surj")["verdict"] == "FAIL"
    assert main(["table", str(reports), "--format", "md"]) == EXIT_OK
    assert "**FAIL**" in capsys.readouterr().out
    (reports / "broken.json").write_text("{not json")
    assert main(["table", str(reports)]) == EXIT_FAIL
    assert "broken.json" in capsys.readouterr().err


def test_cache_command(tmp_path, capsys):
    assert main(["cache", "--type", "A2,G2", "--cache-dir", str(tmp_path)]) == EXIT_OK
    assert main(["cache", "--type", "A2", "--cache-dir", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "A2: built" in out and "A2: hit" in out
    assert len(list(tmp_path.glob("structure-*.txt"))) == 2
    assert main(["cache", "--type", "Z2", "--cache-dir", str(tmp_path)]) == EXIT_USAGE


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(families=())
    with pytest.raises(ValueError):
        SweepConfig(dim_bound=0)
    with pytest.raises(ValueError):
        SweepConfig(families=("bogus",))
