import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab.cli import main
from tmlab.report import (VerificationReport, classify, emit_plot_data, read_reports,
                          worst_status, write_report)
from tmlab.suites import SuiteConfig
from tmlab.errors import ConfigError

margins = st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=50)


@given(margins, st.floats(0.0, 10.0))
def test_status_rule(ms, budget):
    r = VerificationReport.from_margins("x", ms, budget, {})
    scale = max(abs(m) for m in ms)
    if budget > scale:
        assert r.status == "inconclusive"
    else:
        assert (r.status == "pass") == (min(ms) >= -budget)


@given(st.lists(st.sampled_from(["pass", "fail", "inconclusive"])))
def test_worst_status(statuses):
    w = worst_status(statuses)
    if "fail" in statuses:
        assert w == "fail"
    elif "inconclusive" in statuses:
        assert w == "inconclusive"
    else:
        assert w == "pass"


def test_classify_infinite():
    assert classify(math.inf, 0.0, 1.0) == "pass"
    assert classify(-math.inf, 0.0, 1.0) == "fail"


def test_report_round_trip(tmp_path):
    r = VerificationReport.from_margins("a.b", [0.5, 1.0], 1e-9, {"seed": 3}, runtime_ms=12)
    write_report(r, tmp_path)
    back, = read_reports(tmp_path)
    assert back == r


def test_plot_data_header_only(tmp_path):
    r = VerificationReport.from_margins("empty", [], 0.0, {})
    p = emit_plot_data(r, {"rho": [], "margin": []}, tmp_path / "e.csv")
    assert p.read_text().splitlines() == ["# check_id=empty", "rho,margin"]


def test_plot_data_rows(tmp_path):
    r = VerificationReport.from_margins("k", [1.0, 2.0], 0.0, {})
    p = emit_plot_data(r, {"x": [0.1, 0.2], "margin": np.array([1.0, 2.0])}, tmp_path / "k.csv")
    lines = p.read_text().splitlines()
    assert len(lines) == 4 and lines[1] == "x,margin"


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig.from_document({"nope": 1})
    with pytest.raises(ConfigError):
        SuiteConfig.from_document({"tol": "small"})
    with pytest.raises(ConfigError):
        SuiteConfig.from_document([1, 2])
    assert SuiteConfig.from_document({"seed": 4}).seed == 4


def test_verify_kernel_bounds(tmp_path):
    assert main(["verify", "kernel-bounds", "--out", str(tmp_path)]) == 0
    doc = json.loads((tmp_path / "kernel-bounds.bounds.json").read_text())
    assert doc["status"] == "pass" and doc["min_margin"] >= -1e-9
    assert doc["parameters"]["seed"] == 0 and "tol" in doc["parameters"]
    head = (tmp_path / "kernel-bounds.bounds.csv").read_text().splitlines()[:2]
    assert head[0] == "# check_id=kernel-bounds.bounds"
    assert head[1].startswith("rho,phi,bound_sinh,bound_rho_sinh,margin")


def test_deterministic_reports(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["verify", "rearrangement", "--out", str(a)]) == 0
    assert main(["verify", "rearrangement", "--out", str(b), "--jobs", "2"]) == 0
    for p in a.glob("*"):
        if not p.name.endswith(".runtime.json"):
            assert p.read_bytes() == (b / p.name).read_bytes()


def test_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("TMLAB_OUT", str(tmp_path / "env"))
    assert main(["verify", "kernel-bounds"]) == 0
    assert (tmp_path / "env" / "kernel-bounds.heat-mass.json").exists()


def test_malformed_config_exit_3(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "all", "--config", str(bad), "--out", str(tmp_path)]) == 3
    assert main(["verify", "no-such-suite"]) == 3


def test_polygon_map_triangle(tmp_path):
    tri = tmp_path / "tri.txt"
    tri.write_text("0 0\n1 0\n0.3 0.8\n")
    assert main(["polygon-map", str(tri), "--out", str(tmp_path / "o")]) == 0


def test_polygon_map_nonconvex_fails(tmp_path):
    ell = tmp_path / "ell.txt"
    ell.write_text("0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n")
    assert main(["polygon-map", str(ell), "--out", str(tmp_path / "o")]) == 1


def test_geometric_with_config_triangle(tmp_path):
    tri = tmp_path / "tri.txt"
    tri.write_text("0 0\n1 0\n0.3 0.8\n")
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"polygons": [str(tri)], "random_polygons": 1, "points": 100}))
    assert main(["verify", "geometric", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0


def test_sweep_and_report(tmp_path):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"center": [0.1, 0.0], "outer": 0.4, "concentrations": [1, 10, 30],
                               "betas": ["4pi", "4.4pi"], "seeds": [0, 1]}))
    out = tmp_path / "o"
    assert main(["sweep", str(fam), "--out", str(out)]) == 0
    assert len(read_reports(out)) == 4
    assert main(["report", str(out)]) == 0


def test_sweep_bad_family(tmp_path):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps({"betas": ["lots"]}))
    assert main(["sweep", str(fam)]) == 3
