import math
import subprocess
import sys

import numpy as np
import pytest

from modstar import cli, dedekind, geodesics
from modstar.charfn import counterexample_fourier_grid
from modstar.density import find_sigma0
from modstar.specialfn import wieand_limit


def run_cli(args):
    return cli.main([str(a) for a in args])


def read_rows(path):
    lines = path.read_text().splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


def read_meta(path):
    pairs = [line.split("=", 1) for line in path.read_text().splitlines()]
    return dict(pairs)


def test_geodesics_matches_module(tmp_path):
    out = tmp_path / "geo.csv"
    assert run_cli(["geodesics", "--x", 7, "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "trace,norm,length,psi,word"
    assert len(rows) == 1
    g = geodesics.enumerate_classes(7.0).classes[0]
    assert rows[0] == ["3", f"{g.norm:.17g}", f"{g.length:.17g}", "0", "RL"]
    assert abs(float(rows[0][1]) - (7.0 + 3.0 * math.sqrt(5.0)) / 2.0) < 1e-12


def test_dedekind_figure_row_count_and_values(tmp_path):
    out = tmp_path / "fig.csv"
    t = 1.5707963267948966
    assert run_cli(["dedekind-figure", "--t", t, "--n-max", 120, "--stride", 7,
                    "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "t,N,value"
    assert len(rows) == len(range(2, 121, 7))
    trace = dedekind.figure_trace(t, 120, 7)
    for row, (n, v) in zip(rows, trace.rows):
        assert int(row[1]) == n
        assert row[2] == f"{v:.17g}"
    assert read_meta(tmp_path / "fig.csv.meta")["window"] == "convergent"


def test_dedekind_figure_window_tag_not_convergent(tmp_path):
    out = tmp_path / "fig4pi.csv"
    assert run_cli(["dedekind-figure", "--t", 4 * math.pi, "--n-max", 40,
                    "--output", out, "--no-plot"]) == 0
    assert read_meta(tmp_path / "fig4pi.csv.meta")["window"] == "exploratory"
    out2 = tmp_path / "fig15.csv"
    assert run_cli(["dedekind-figure", "--t", 4.5, "--n-max", 40,
                    "--output", out2, "--no-plot"]) == 0
    assert read_meta(tmp_path / "fig15.csv.meta")["window"] == "theorem-only"


def test_counterexample_matches_module(tmp_path):
    out = tmp_path / "ce.csv"
    assert run_cli(["counterexample", "--which", "A", "--lambda-min", -0.5,
                    "--lambda-max", 0.5, "--points", 11,
                    "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "lambda,re,im,label"
    lams = np.linspace(-0.5, 0.5, 11)
    vals = counterexample_fourier_grid("A", lams)
    assert [r[1] for r in rows] == [f"{v:.17g}" for v in vals]


def test_wieand_matches_module(tmp_path):
    out = tmp_path / "w.csv"
    assert run_cli(["wieand-limit", "--gamma", 0.125, "--t-min", -2, "--t-max", 2,
                    "--points", 9, "--output", out, "--no-plot"]) == 0
    _, rows = read_rows(out)
    ts = np.linspace(-2.0, 2.0, 9)
    assert [r[1] for r in rows] == [f"{wieand_limit(t, 0.125):.17g}" for t in ts]


def test_density_check_matches_module(tmp_path):
    out = tmp_path / "d.csv"
    assert run_cli(["density-check", "--poly", "1,0,1", "--output", out,
                    "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "sigma,min_value,integral,grid_radius,grid_points"
    report = find_sigma0((1.0, 0.0, 1.0))
    assert rows[0] == report.csv_row().split(",")
    assert read_meta(tmp_path / "d.csv.meta")["certified"] == "true"


def test_vardi_phi_deterministic_and_seeded(tmp_path):
    out1, out2, out3 = (tmp_path / n for n in ("p1.csv", "p2.csv", "p3.csv"))
    args = ["vardi-phi", "--t", 1.5707963267948966, "--samples", 20000,
            "--seed", 42, "--chunks", 8, "--no-plot"]
    assert run_cli(args + ["--output", out1]) == 0
    assert run_cli(args + ["--output", out2]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    value, err = dedekind.vardi_phi(1.5707963267948966, 20000, 42, 8)
    _, rows = read_rows(out1)
    assert rows[0][1] == f"{value:.17g}" and rows[0][2] == f"{err:.17g}"
    # different seed, different bytes
    assert run_cli(["vardi-phi", "--t", 1.5707963267948966, "--samples", 20000,
                    "--seed", 1, "--chunks", 8, "--no-plot", "--output", out3]) == 0
    assert out1.read_bytes() != out3.read_bytes()


def test_vardi_phi_quadrature_flag(tmp_path):
    out = tmp_path / "q.csv"
    assert run_cli(["vardi-phi", "--t", 1.0, "--quadrature", "--n-theta", 64,
                    "--n-u", 64, "--output", out, "--no-plot"]) == 0
    _, rows = read_rows(out)
    assert rows[0][1] == f"{dedekind.vardi_phi_quadrature(1.0, 64, 64):.17g}"
    assert rows[0][2] == "0"
    assert read_meta(tmp_path / "q.csv.meta")["method"] == "tensor-quadrature"


def test_vardi_law_matches_module(tmp_path):
    out = tmp_path / "law.csv"
    assert run_cli(["vardi-law", "--n", 50, "--n", 120, "--output", out,
                    "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "N,ks_distance"
    assert rows[0][1] == f"{dedekind.vardi_law_check(50):.17g}"
    assert rows[1][1] == f"{dedekind.vardi_law_check(120):.17g}"


def test_sarnak_matches_module(tmp_path):
    out = tmp_path / "s.csv"
    t = math.pi / 12.0
    assert run_cli(["sarnak", "--t", t, "--x", 2000, "--output", out,
                    "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "t,x,value,phi1"
    assert rows[0][2] == f"{geodesics.sarnak_trace(t, 2000.0):.17g}"
    assert rows[0][3] == f"{4.0 / 3.0:.17g}"


def test_sarnak_window_refused_without_flag(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run_cli(["sarnak", "--t", 0.5, "--x", 100, "--output", out,
                    "--no-plot"]) == 1
    assert "Sarnak window" in capsys.readouterr().err
    assert not out.exists()
    assert run_cli(["sarnak", "--t", 0.5, "--x", 100, "--exploratory",
                    "--output", out, "--no-plot"]) == 0
    _, rows = read_rows(out)
    assert rows[0][3] == "nan"  # no limit value is claimed outside the window
    assert read_meta(tmp_path / "s.csv.meta")["window"] == "exploratory"


def test_selberg_matches_module(tmp_path):
    out = tmp_path / "sel.csv"
    assert run_cli(["selberg", "--x", 7, "--x", 1000, "--output", out,
                    "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "x,ratio,count"
    assert rows[0][1] == f"{geodesics.selberg_check(7.0):.17g}"
    assert int(rows[1][2]) == geodesics.enumerate_classes(1000.0).size


def test_iid_modgauss_sweep(tmp_path):
    out = tmp_path / "iid.csv"
    assert run_cli(["iid-modgauss", "--k", 3, "--n", "100,1000",
                    "--lambda-min", 0, "--lambda-max", 1, "--points", 5,
                    "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == "lambda,re,im,label,n"
    assert sum(r[3] == "renormalized-sum" and r[4] == "100" for r in rows) == 5
    assert sum(r[3] == "renormalized-sum" and r[4] == "1000" for r in rows) == 5
    assert sum(r[3] == "limit" for r in rows) == 5
    from modstar.cumulants import BaseLaw, cum1_lhs
    v = cum1_lhs(BaseLaw.two_point(), 3, 100, 1.0)
    row = next(r for r in rows if r[4] == "100" and r[0] == "1")
    assert row[1] == f"{v.real:.17g}"


def test_invert_limit_errors_cleanly(tmp_path, capsys):
    out = tmp_path / "h.csv"
    assert run_cli(["invert-limit", "--k", 2, "--c", -1.0, "--output", out,
                    "--no-plot"]) == 1
    assert "divergent" in capsys.readouterr().err


def test_unknown_subcommand_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_unknown_flag_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["sarnak", "--t", "0.1", "--x", "100", "--frobnicate"])
    assert exc.value.code == 2


def test_meta_sidecar_contents(tmp_path):
    out = tmp_path / "geo.csv"
    assert run_cli(["geodesics", "--x", 50, "--output", out, "--no-plot"]) == 0
    meta = read_meta(tmp_path / "geo.csv.meta")
    assert meta["command"] == "geodesics"
    assert meta["x"] == "50.0"
    assert meta["seed"] == "0" and meta["chunks"] == "1"
    assert meta["output"] == str(out)
    assert "wall_clock_seconds" in meta and "version" in meta


def test_plot_rendered_next_to_csv(tmp_path):
    out = tmp_path / "fig.csv"
    assert run_cli(["dedekind-figure", "--t", 1.0, "--n-max", 60,
                    "--output", out]) == 0
    png = tmp_path / "fig.png"
    assert png.exists() and png.read_bytes()[:4] == b"\x89PNG"


def test_console_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "modstar.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    for name in ("iid-modgauss", "dedekind-figure", "vardi-phi", "sarnak",
                 "wieand-limit", "counterexample", "invert-limit"):
        assert name in proc.stdout


def test_help_documents_windows():
    proc = subprocess.run([sys.executable, "-m", "modstar.cli", "sarnak", "--help"],
                          capture_output=True, text=True)
    assert "pi/12" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "modstar.cli", "wieand-limit", "--help"],
                          capture_output=True, text=True)
    assert "|t| < pi" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "modstar.cli", "vardi-phi", "--help"],
                          capture_output=True, text=True)
    assert "4pi" in proc.stdout
