"""CLI surface: reports, exit codes, CSV format, determinism."""

import csv

import pytest

from thetasum.cli import main

SWEEP_HEADER = (
    "a_re,a_im,w,method,value_re,value_im,err_estimate,"
    "abs_err_vs_oracle,terms_k,terms_j,terms_n,j0"
)


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------


def test_eval_reference_point(capsys):
    rc, out, _ = run(capsys, "eval", "--a", "1.0", "--w", "4")
    assert rc == 0
    assert "method        even" in out
    assert "0.36902565" in out
    assert "abs_error" in out
    assert "3.76" in out  # abs error ~3.76e-8


def test_eval_guard_names_precondition(capsys):
    rc, _, err = run(capsys, "eval", "--a", "-1", "--w", "4")
    assert rc == 2
    assert "Re(a) > 0" in err


def test_eval_generic_matches_oracle(capsys):
    rc, out, _ = run(capsys, "eval", "--a", "0.5", "--w", "1.5", "--method", "generic")
    assert rc == 0
    abs_error = float(next(line.split()[1] for line in out.splitlines() if line.startswith("abs_error")))
    # at a = 0.5 the achievable accuracy is set by the neglected
    # exponentially small component ~ exp(-pi^2/a) = 2.7e-9
    assert abs_error <= 1e-9


def test_eval_generic_small_a_matches_oracle(capsys):
    rc, out, _ = run(capsys, "eval", "--a", "0.05", "--w", "1.5", "--method", "generic")
    assert rc == 0
    abs_error = float(next(line.split()[1] for line in out.splitlines() if line.startswith("abs_error")))
    assert abs_error <= 1e-12


def test_eval_direct_infeasible_exit_code(capsys):
    rc, _, err = run(capsys, "eval", "--a", "1e-15", "--w", "4", "--method", "direct")
    assert rc == 3
    assert "expansion" in err


def test_eval_near_odd_warning_shown(capsys):
    rc, out, _ = run(capsys, "eval", "--a", "0.05", "--w", "3.01", "--method", "generic")
    assert rc == 0
    assert "warning" in out


def test_eval_bad_policy(capsys):
    rc, _, err = run(capsys, "eval", "--a", "1", "--w", "4", "--policy", "sloppy")
    assert rc == 2
    assert "policy" in err


def test_eval_complex_argument(capsys):
    rc, out, _ = run(capsys, "eval", "--a", "0.5+0.3j", "--w", "4")
    assert rc == 0
    assert "value_im" in out


# ----------------------------------------------------------------------
# table1
# ----------------------------------------------------------------------


def test_table1_all_rows(capsys):
    rc, out, _ = run(capsys, "table1")
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 9  # header + 8 rows
    assert "binary64-noise" in out
    assert "0.369026" in out


def test_table1_row_restriction(capsys):
    rc, out, _ = run(capsys, "table1", "--rows", "0.75,2.00")
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert "0.475493" in out


def test_table1_unknown_row(capsys):
    rc, _, err = run(capsys, "table1", "--rows", "0.33")
    assert rc == 2
    assert "reference table" in err


def test_table1_csv_output(tmp_path, capsys):
    target = tmp_path / "table.csv"
    rc, _, _ = run(capsys, "table1", "--csv", str(target))
    assert rc == 0
    rows = list(csv.reader(target.open()))
    assert rows[0][0] == "a"
    assert len(rows) == 9


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------


def test_sweep_shape_and_header(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    rc, _, _ = run(
        capsys, "sweep", "--a", "1.0", "--w", "4", "--methods", "even", "--out", str(target)
    )
    assert rc == 0
    text = target.read_text().splitlines()
    assert text[0] == SWEEP_HEADER
    assert len(text) == 2
    assert len(text[1].split(",")) == 12


def test_sweep_cardinality(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    a_list = "0.10,0.20,0.25,0.50,0.75,1.00,1.50,2.00"
    rc, _, _ = run(capsys, "sweep", "--a", a_list, "--w", "4", "--methods", "even", "--out", str(target))
    assert rc == 0
    assert len(target.read_text().splitlines()) == 9


def test_sweep_complex_parameter_sector(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    rc, _, _ = run(capsys, "sweep", "--a", "0.5+0.3j", "--w", "4", "--methods", "even", "--out", str(target))
    assert rc == 0
    row = next(csv.DictReader(target.open()))
    assert float(row["abs_err_vs_oracle"]) <= 1e-9


def test_sweep_round_trip_17_digits(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    rc, _, _ = run(
        capsys,
        "sweep",
        "--a",
        "1.0,0.5",
        "--w",
        "4",
        "--methods",
        "even,direct",
        "--out",
        str(target),
    )
    assert rc == 0
    with target.open() as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            for key in ("value_re", "value_im", "err_estimate"):
                text = row[key]
                assert f"{float(text):.17g}" == text


def test_sweep_unwritable_path(capsys):
    rc, _, err = run(
        capsys, "sweep", "--a", "1.0", "--w", "4", "--out", "/nonexistent-dir/x.csv"
    )
    assert rc == 4
    assert "cannot write" in err


def test_sweep_config_validation(tmp_path):
    from thetasum import DomainError, MethodChoice
    from thetasum.cli import SweepConfig, run_sweep

    with pytest.raises(DomainError):
        SweepConfig(a_values=(), w=4.0, methods=(MethodChoice.DIRECT,), output_path="x")
    with pytest.raises(DomainError):
        SweepConfig(a_values=(-1 + 0j,), w=4.0, methods=(MethodChoice.DIRECT,), output_path="x")
    target = tmp_path / "api.csv"
    config = SweepConfig(
        a_values=(1.0 + 0j, 0.5 + 0j),
        w=4.0,
        methods=(MethodChoice.EVEN_TRANSFORM, MethodChoice.DIRECT),
        output_path=str(target),
    )
    assert run_sweep(config) == 4
    assert len(target.read_text().splitlines()) == 5


def test_sweep_method_mismatch_is_precondition(capsys, tmp_path):
    target = tmp_path / "s.csv"
    rc, _, err = run(
        capsys, "sweep", "--a", "1.0", "--w", "4", "--methods", "generic", "--out", str(target)
    )
    assert rc == 2
    assert "even" in err


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


@pytest.mark.parametrize("suite", ["specfun", "oracle", "engine", "appendix", "all"])
def test_verify_suites_pass(capsys, suite):
    rc, out, _ = run(capsys, "verify", "--suite", suite)
    assert rc == 0
    assert "[PASS]" in out
    assert "0 failed" in out


def test_verify_appendix_reports_slope(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "appendix")
    assert rc == 0
    assert "remainder slope" in out


# ----------------------------------------------------------------------
# determinism
# ----------------------------------------------------------------------


def test_stdout_deterministic(capsys):
    _, first, _ = run(capsys, "table1")
    _, second, _ = run(capsys, "table1")
    assert first == second
    _, e1, _ = run(capsys, "eval", "--a", "0.8", "--w", "4")
    _, e2, _ = run(capsys, "eval", "--a", "0.8", "--w", "4")
    assert e1 == e2


def test_timing_flag_adds_line(capsys):
    rc, out, _ = run(capsys, "--timing", "table1", "--rows", "1.00")
    assert rc == 0
    assert "elapsed_s" in out
