import csv
import json

import pytest

from isocycles.cli import EXIT_CONTINUUM, EXIT_OK, EXIT_VALIDATION, EXIT_VERIFY, main
from isocycles.config import FIXTURE_NAMES, config_to_dict, dump_config, load_config, load_fixture


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _write(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


S2_MAP = {"a": "1/5", "b": "2/5", "c": "-3/10", "alpha": "1/10", "beta": "3/10", "gamma": "-1"}


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_config_round_trip(tmp_path, name):
    cfg = load_fixture(name)
    path = tmp_path / f"{name}.json"
    dump_config(cfg, path)
    again = load_config(str(path))
    assert again == cfg
    assert config_to_dict(again) == config_to_dict(cfg)


def test_bare_json_numbers_read_exactly(tmp_path):
    doc = {"plus": {"family": "S2", "params": dict(S2_MAP, b=0.4)}, "minus": {"family": "S2", "params": S2_MAP}}
    cfg = load_config(_write(tmp_path, doc))
    assert cfg.system.plus == cfg.system.minus


def test_derive_lists_exact_fields(capsys):
    code, out, _ = _run(capsys, "derive", "--config", "lc-s3")
    assert code == EXIT_OK
    assert "[plus] Lc on x >= 0" in out and "[minus] S3 on x <= 0" in out


def test_derive_identity_is_canonical(capsys, tmp_path):
    ident = {"a": 1, "b": 0, "c": 0, "alpha": 0, "beta": 1, "gamma": 0}
    doc = {"plus": {"family": "S1", "params": ident}, "minus": {"family": "S1", "params": ident}}
    code, out, _ = _run(capsys, "derive", "--config", _write(tmp_path, doc), "--json")
    assert code == EXIT_OK
    P = json.loads(out)["plus"]["field"]["P"]["text"]
    assert P == "x^3 - x*y^2 - y"


def test_singular_map_is_validation_error(capsys, tmp_path):
    bad = dict(S2_MAP, alpha="2/5", beta="4/5")
    doc = {"plus": {"family": "S2", "params": bad}, "minus": {"family": "S2", "params": S2_MAP}}
    code, _, err = _run(capsys, "derive", "--config", _write(tmp_path, doc))
    assert code == EXIT_VALIDATION and "invalid configuration" in err


def test_nonpositive_d_is_validation_error(capsys, tmp_path):
    lc = {"A": "1", "B": "1", "C": "1", "D": "0", "omega": "1"}
    doc = {"plus": {"family": "Lc", "params": lc}, "minus": {"family": "S2", "params": S2_MAP}}
    code, _, err = _run(capsys, "close", "--config", _write(tmp_path, doc))
    assert code == EXIT_VALIDATION and "D" in err


def test_missing_field_named(capsys, tmp_path):
    doc = {"plus": {"family": "S2", "params": {k: v for k, v in S2_MAP.items() if k != "gamma"}},
           "minus": {"family": "S2", "params": S2_MAP}}
    code, _, err = _run(capsys, "solve", "--config", _write(tmp_path, doc))
    assert code == EXIT_VALIDATION and "gamma" in err


def test_bad_tolerance(capsys):
    code, _, _ = _run(capsys, "verify", "--config", "s1-s2", "--tol", "-1")
    assert code == EXIT_VALIDATION


def test_close_reports_degree_and_bounds(capsys):
    code, out, _ = _run(capsys, "close", "--config", "s1-s3", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert (doc["degree"], doc["pair_bound"], doc["table_bound"]) == (10, 5, 5)
    code, out, _ = _run(capsys, "close", "--config", "lc-s3", "--json")
    doc = json.loads(out)
    assert (doc["degree"], doc["pair_bound"], doc["strategy"]) == (6, 3, "linear solve")


def test_close_s2_s4_within_resultant_degree(capsys):
    code, out, _ = _run(capsys, "close", "--config", "s2-s4", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["degree"] <= 26 and doc["table_bound"] == 13


def test_continuum_exit_code(capsys, tmp_path):
    doc = {"plus": {"family": "S2", "params": S2_MAP}, "minus": {"family": "S2", "params": S2_MAP}}
    path = _write(tmp_path, doc)
    assert _run(capsys, "close", "--config", path)[0] == EXIT_CONTINUUM
    code, out, _ = _run(capsys, "solve", "--config", path, "--json")
    assert code == EXIT_CONTINUUM and json.loads(out)["continuum"]


def test_solve_json(capsys):
    code, out, _ = _run(capsys, "solve", "--config", "s1-s2", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and len(doc["pairs"]) == 3
    assert all(p["in_box"] and p["y1"] < p["y2"] for p in doc["pairs"])


def test_verify_success_and_failure(capsys):
    code, out, _ = _run(capsys, "verify", "--config", "s1-s2")
    assert code == EXIT_OK and "3 of 3 candidate(s) verified" in out
    code, out, _ = _run(capsys, "verify", "--config", "s1-s2", "--tol", "1e-15", "--json")
    doc = json.loads(out)
    assert code == EXIT_VERIFY and doc["verified"] < 3
    assert any(c["verdict"].startswith("rejected(closure") for c in doc["cycles"])


def test_verify_box_skips_outside_pairs(capsys):
    code, out, _ = _run(capsys, "verify", "--config", "s1-s2", "--box=-1,0,0,1", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["verified"] == 1 and len(doc["skipped_outside_box"]) == 2


def test_plot_writes_svg_and_csv(capsys, tmp_path):
    code, _, _ = _run(capsys, "plot", "--config", "s1-s2", "--out", str(tmp_path))
    assert code == EXIT_OK
    svg = (tmp_path / "s1-s2.svg").read_text()
    assert svg.lstrip().startswith("<?xml") and "<svg" in svg
    with open(tmp_path / "s1-s2_orbits.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "x", "y", "half", "cycle_index"]
    assert {r[4] for r in rows[1:]} == {"0", "1", "2"}
    assert {r[3] for r in rows[1:]} == {"plus", "minus"}


def test_plot_without_cycles_has_streamlines_only(capsys, tmp_path):
    # the lc-s3 algebraic pairs fail the crossing condition, so nothing is traced
    code, out, _ = _run(capsys, "plot", "--config", "lc-s3", "--out", str(tmp_path), "--json")
    assert code == EXIT_OK and json.loads(out)["cycles"] == 0
    assert (tmp_path / "lc-s3.svg").stat().st_size > 0
    with open(tmp_path / "lc-s3_orbits.csv", newline="") as fh:
        assert list(csv.reader(fh)) == [["t", "x", "y", "half", "cycle_index"]]
