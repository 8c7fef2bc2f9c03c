"""CLI behavior: subcommands, config merging, exit codes, diagnostics."""

import numpy as np
import pytest

from exprk.cli import main
from exprk.config import RunConfig, parse_config_text
from exprk.convergence import parse_csv
from exprk.errors import ParameterError
from exprk.tableau_io import TableauParseError, parse_tableau
from exprk.tableaus import third_order

FAST = ["--n", "25", "--tau-list", "0.125,0.0625,0.03125,0.015625",
        "--tau-ref", str(2.0 ** -13)]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------------ help

def test_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in ("convergence", "check-order", "probe", "solve"):
        assert name in out


def test_no_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


# ----------------------------------------------------------- convergence

def test_convergence_writes_csv_and_prints_orders(tmp_path, capsys):
    out = tmp_path / "study.csv"
    code, stdout, _ = run(["convergence", "--scheme", "euler",
                           "--out", str(out)] + FAST, capsys)
    assert code == 0
    assert "fitted_order_l2=" in stdout and str(out) in stdout
    rows = parse_csv(out.read_text())
    assert len(rows) == 4 and all(r.flag == "ok" for r in rows)


def test_convergence_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("scheme = rk2\nn = 50\n"
                   "tau_list = 0.125,0.0625,0.03125,0.015625\n"
                   f"tau_ref = {2.0 ** -13}\n"
                   f"out = {tmp_path / 'a.csv'}\n")
    code, stdout, _ = run(["convergence", "--config", str(cfg), "--n", "25"],
                          capsys)
    assert code == 0
    text = (tmp_path / "a.csv").read_text()
    assert "scheme=rk2" in text and "n=25" in text  # flag wins over file


def test_convergence_config_file_applies_when_no_flags(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("scheme = euler\nn = 25\n"
                   "tau_list = 0.125,0.0625,0.03125,0.015625\n"
                   f"tau_ref = {2.0 ** -13}\n"
                   f"out = {tmp_path / 'b.csv'}\n")
    code, _, _ = run(["convergence", "--config", str(cfg)], capsys)
    assert code == 0
    assert "scheme=euler n=25" in (tmp_path / "b.csv").read_text()


def test_convergence_missing_config_exit_2(tmp_path, capsys):
    missing = tmp_path / "nope.cfg"
    code, _, stderr = run(["convergence", "--config", str(missing)], capsys)
    assert code == 2 and str(missing) in stderr


def test_convergence_short_tau_list_exit_2(capsys):
    code, _, stderr = run(["convergence", "--tau-list", "0.25,0.125"], capsys)
    assert code == 2 and "tau_list" in stderr


def test_convergence_unknown_config_key_names_it(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("stepsize = 0.1\n")
    code, _, stderr = run(["convergence", "--config", str(cfg)], capsys)
    assert code == 2 and "stepsize" in stderr and "1" in stderr


def test_convergence_deterministic_reruns(tmp_path, capsys):
    paths = [tmp_path / "r1.csv", tmp_path / "r2.csv"]
    for p in paths:
        code, _, _ = run(["convergence", "--scheme", "euler",
                          "--out", str(p)] + FAST, capsys)
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


# ------------------------------------------------------------ check-order

def test_check_order_rk3_pass(capsys):
    code, stdout, _ = run(["check-order", "--scheme", "rk3paper"], capsys)
    assert code == 0 and "condition" in stdout


def test_check_order_rk3_requires_order_3(capsys):
    code, _, _ = run(["check-order", "--scheme", "rk3paper",
                      "--require-order", "3"], capsys)
    assert code == 0


def test_check_order_rk2_fails_order_3(capsys):
    code, stdout, _ = run(["check-order", "--scheme", "rk2",
                           "--require-order", "3"], capsys)
    assert code == 1 and "fails" in stdout


def test_check_order_euler_requires_order_1(capsys):
    code, _, _ = run(["check-order", "--scheme", "euler",
                      "--require-order", "1"], capsys)
    assert code == 0


def test_check_order_unknown_scheme_exit_2(capsys):
    code, _, stderr = run(["check-order", "--scheme", "etd5"], capsys)
    assert code == 2 and "etd5" in stderr


# ----------------------------------------------------------------- probe

def test_probe_smoothing_bounded(tmp_path, capsys):
    out = tmp_path / "smooth.csv"
    code, stdout, _ = run(["probe", "smoothing", "--gamma", "0.5",
                           "--n", "50", "--out", str(out)], capsys)
    assert code == 0 and "verdict=bounded" in stdout
    assert out.read_text().splitlines()[0] == "grid_value,quantity"


def test_probe_relbound_small_gamma_unbounded(capsys):
    code, stdout, _ = run(["probe", "relbound", "--gamma", "0.1", "--n", "200"],
                          capsys)
    assert code == 1 and "verdict=unbounded" in stdout


def test_probe_fourier_smooth_data(capsys):
    code, stdout, _ = run(["probe", "fourier", "--beta", "0.24",
                           "--coeffs", "u0", "--norm", "l2"], capsys)
    assert code == 0 and "verdict=bounded" in stdout


def test_probe_bad_gamma_exit_2(capsys):
    code, _, _ = run(["probe", "relbound", "--gamma", "1.5"], capsys)
    assert code == 2


# ----------------------------------------------------------------- solve

def test_solve_prints_norms(capsys):
    code, stdout, _ = run(["solve", "--scheme", "rk2", "--n", "25",
                           "--tau", "0.0625"], capsys)
    assert code == 0
    assert "scheme=rk2(c=0.5) steps=16" in stdout and "l2=" in stdout


def test_solve_nondivisible_tau_exit_2(capsys):
    code, _, stderr = run(["solve", "--n", "25", "--tau", "0.3"], capsys)
    assert code == 2 and "divide" in stderr


# --------------------------------------------------------- custom tableau

RK3_FILE = """\
name = rk3-from-file
c = 0,0.5,1
a[2][1] = scale:0.5 phi:1 w:0.5
a[3][1] = scale:1 phi:1 w:1 + scale:0.5 phi:2 w:-2 + scale:1 phi:2 w:-2
a[3][2] = scale:0.5 phi:2 w:2 + scale:1 phi:2 w:2
b[1] = scale:1 phi:1 w:1 + scale:1 phi:2 w:-3 + scale:1 phi:3 w:4
b[2] = scale:1 phi:2 w:4 + scale:1 phi:3 w:-8
b[3] = scale:1 phi:2 w:-1 + scale:1 phi:3 w:4
"""


def test_parse_tableau_matches_builtin():
    parsed = parse_tableau(RK3_FILE)
    builtin = third_order()
    key_fn = lambda t: (t.scale, t.order, t.weight)
    assert parsed.c == builtin.c
    for key, combo in builtin.a.items():
        assert sorted(parsed.a[key].terms, key=key_fn) == \
            sorted(combo.terms, key=key_fn)
    for pb, bb in zip(parsed.b, builtin.b):
        assert sorted(pb.terms, key=key_fn) == sorted(bb.terms, key=key_fn)


def test_tableau_file_drives_cli(tmp_path, capsys):
    path = tmp_path / "scheme.tab"
    path.write_text(RK3_FILE)
    code, stdout, _ = run(["check-order", "--tableau", str(path),
                           "--require-order", "3"], capsys)
    assert code == 0 and "rk3-from-file" not in stdout  # table shows rows only

    out = tmp_path / "custom.csv"
    code, _, _ = run(["convergence", "--tableau", str(path),
                      "--out", str(out)] + FAST, capsys)
    assert code == 0 and "scheme=rk3-from-file" in out.read_text()


def test_parse_tableau_reports_line_and_column():
    bad = "c = 0,0.5\na[2][1] = scale:0.5 phi:one w:1\n"
    with pytest.raises(TableauParseError) as exc:
        parse_tableau(bad)
    assert exc.value.line_no == 2 and exc.value.column >= 1


def test_parse_tableau_missing_nodes():
    with pytest.raises(TableauParseError):
        parse_tableau("b[1] = scale:1 phi:1 w:1\n")


def test_missing_tableau_file_exit_2(tmp_path, capsys):
    missing = tmp_path / "no.tab"
    code, _, stderr = run(["solve", "--tableau", str(missing), "--n", "25",
                           "--tau", "0.25"], capsys)
    assert code == 2 and str(missing) in stderr


# ---------------------------------------------------------------- config

def test_parse_config_text_comments_and_blank_lines():
    values = parse_config_text("# a comment\n\nscheme = rk2  # trailing\nn=25\n")
    assert values == {"scheme": "rk2", "n": "25"}


def test_parse_config_text_rejects_bad_line():
    with pytest.raises(ParameterError, match="2"):
        parse_config_text("n = 10\njust words\n")


def test_runconfig_apply_casts_and_skips_none():
    cfg = RunConfig().apply({"n": "25", "tau_ref": None, "norms": "l2,linf"})
    assert cfg.n == 25 and cfg.tau_ref is None and cfg.norms == ("l2", "linf")


def test_runconfig_apply_bad_value():
    with pytest.raises(ParameterError, match="nu"):
        RunConfig().apply({"nu": "two"})
