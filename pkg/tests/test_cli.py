import json

import pytest

from asymlab.cli import main, parse_radii, parse_target
from asymlab.growth import Classic
from asymlab.specs import Polynomial


def run(tmp_path, *argv):
    import os

    old = os.getcwd()
    os.chdir(tmp_path)
    try:
        return main(list(argv))
    finally:
        os.chdir(old)


# --- mini-language ---------------------------------------------------------

def test_parse_target_poly_complex():
    p = parse_target("poly:1,2+3i,-0.5i")
    assert isinstance(p, Polynomial)
    assert p.coeffs == (1 + 0j, 2 + 3j, -0.5j)


def test_parse_target_classic():
    c = parse_target("classic:3")
    assert isinstance(c, Classic)
    assert c.cfg.n == 3


def test_parse_target_malformed():
    from asymlab.cli import UsageError

    for bad in ("poly:", "poly", "wat:1", "poly:xx"):
        with pytest.raises(UsageError):
            parse_target(bad)


def test_parse_radii():
    assert parse_radii("2,3,4.5") == [2.0, 3.0, 4.5]
    assert parse_radii("1:3:0.5") == [1.0, 1.5, 2.0, 2.5, 3.0]
    from asymlab.cli import UsageError

    with pytest.raises(UsageError):
        parse_radii("3:1:0.5")


# --- subcommands -----------------------------------------------------------

def test_construct_writes_spec_and_manifest(tmp_path, capsys):
    rc = run(tmp_path, "construct", "--n", "2", "--a", "poly:1", "--a", "poly:0,1")
    assert rc == 0
    out = capsys.readouterr().out
    assert "c_2 = 0.886226" in out
    spec = json.loads((tmp_path / "funcspec.json").read_text())
    assert spec["format"] == "funcspec/1" and spec["kind"] == "constructed"
    man = json.loads((tmp_path / "run_manifest.json").read_text())
    assert man["format"] == "manifest/1" and man["command"] == "construct"
    assert man["config"]["tol"] == 1e-9  # defaults echoed


def test_construct_n1_warns(tmp_path, capsys):
    rc = run(tmp_path, "construct", "--n", "1", "--a", "poly:5")
    assert rc == 0
    assert "degenerate" in capsys.readouterr().out


def test_construct_malformed_target(tmp_path):
    assert run(tmp_path, "construct", "--n", "2", "--a", "poly:", "--a", "poly:1") == 2


def test_trace_csv(tmp_path, capsys):
    run(tmp_path, "construct", "--n", "2", "--a", "poly:1", "--a", "poly:0,1")
    capsys.readouterr()
    rc = run(tmp_path, "trace", "--spec", "funcspec.json", "--radii", "2:5:1", "--out", "-")
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "ray_index,r,log10_abs_residual"
    assert len(lines) == 1 + 8  # 2 rays x 4 radii
    # residuals strictly decreasing within each ray
    for j in (1, 2):
        vals = [float(l.split(",")[2]) for l in lines[1:] if l.startswith("%d," % j)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


def test_trace_empty_radii(tmp_path):
    run(tmp_path, "construct", "--n", "2", "--a", "poly:1", "--a", "poly:0,1")
    assert run(tmp_path, "trace", "--spec", "funcspec.json", "--radii", "") == 2


def test_growth_classic(tmp_path, capsys):
    rc = run(
        tmp_path, "growth", "--f", "classic:2", "--radii", "5:30:5",
        "--coarse", "64", "--out", "g.csv", "--fit-out", "fit.json",
    )
    assert rc == 0
    fit = json.loads((tmp_path / "fit.json").read_text())
    assert abs(fit["rho_hat"] - 1.0) <= 0.25
    lines = (tmp_path / "g.csv").read_text().strip().splitlines()
    assert lines[0] == "r,log_max_mod,argmax_theta,domain_id"
    assert len(lines) == 7


def test_growth_single_radius_fails(tmp_path):
    assert run(tmp_path, "growth", "--f", "poly:0,1", "--radii", "5", "--out", "g.csv") == 2


def test_growth_threads_match_serial(tmp_path):
    run(tmp_path, "growth", "--f", "poly:1,1", "--radii", "2,3,4,5", "--out", "a.csv", "--fit-out", "fa.json")
    run(tmp_path, "growth", "--f", "poly:1,1", "--radii", "2,3,4,5", "--threads", "4", "--out", "b.csv", "--fit-out", "fb.json")
    assert (tmp_path / "a.csv").read_text() == (tmp_path / "b.csv").read_text()


def test_domain_closed_form(tmp_path):
    rc = run(
        tmp_path, "domain", "--rays", "3", "--R1", "1", "--R", "10",
        "--radii", "1,5", "--out", "d.json", "--slices-out", "s.csv",
    )
    assert rc == 0
    doc = json.loads((tmp_path / "d.json").read_text())
    import math

    want = (math.pi / 8.0) * 10.0 ** 1.5
    assert abs(doc["carleman"][0]["logM_lower"] - want) <= 1e-6
    assert all(row["holds"] for row in doc["sector_inequality"])
    lines = (tmp_path / "s.csv").read_text().strip().splitlines()
    assert lines[0] == "j,t,arc_start,arc_end,phi"
    assert len(lines) == 1 + 6  # 3 domains x 2 radii, one arc each


def test_domain_wos_seed_echoed(tmp_path):
    rc = run(
        tmp_path, "domain", "--rays", "2", "--R1", "1", "--R", "8",
        "--radii", "2", "--wos", "--z1=-2i", "--walks", "500", "--seed", "99",
        "--out", "d.json", "--slices-out", "s.csv",
    )
    assert rc == 0
    doc = json.loads((tmp_path / "d.json").read_text())
    assert doc["wos"]["seed"] == 99
    assert 0.0 <= doc["wos"]["omega_hat"] <= 1.0


def test_check_filter_and_exit(tmp_path, capsys):
    rc = run(tmp_path, "check", "--filter", "carleman")
    assert rc == 0
    out = capsys.readouterr().out
    assert "carleman-rays" in out and "PASS" in out
    doc = json.loads((tmp_path / "check.json").read_text())
    assert all(row["pass"] for row in doc)


def test_check_unknown_filter(tmp_path):
    assert run(tmp_path, "check", "--filter", "nope") == 2


def test_usage_error_exit_code(tmp_path):
    assert run(tmp_path, "frobnicate") == 2
    assert run(tmp_path, "trace", "--radii", "1,2") == 2  # no spec given


def test_csv_17_digit_stability(tmp_path):
    run(tmp_path, "growth", "--f", "poly:0,1", "--radii", "2,3,4,5", "--out", "g.csv", "--fit-out", "f.json")
    row = (tmp_path / "g.csv").read_text().strip().splitlines()[1].split(",")
    # 17 significant digits reproduce the double exactly
    import math

    assert float(row[1]) == math.log(2.0) or abs(float(row[1]) - math.log(2.0)) < 1e-15
