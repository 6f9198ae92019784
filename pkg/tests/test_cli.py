import json
import subprocess
import sys
from fractions import Fraction

import pytest

from colored_homfly.cli import PREC_ENV, csv_digits, main, parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decimal_M_is_exact():
    assert parse_rational("1.3") == Fraction(13, 10)
    assert parse_rational("13/10") == Fraction(13, 10)


def test_csv_digits():
    assert csv_digits(128) == 30
    assert csv_digits(64) == 11


def test_invariant_json(capsys):
    code, out, _ = run(capsys, "invariant", "--knot", "5_2", "--n", "1")
    assert code == 0
    rec = json.loads(out)
    assert rec["knot"] == "5_2" and rec["n"] == 1 and "clearing_factor" not in rec


def test_twist3_equals_5_2_bytes(capsys):
    _, a, _ = run(capsys, "invariant", "--knot", "twist:3", "--n", "2")
    _, b, _ = run(capsys, "invariant", "--knot", "5_2", "--n", "2")
    assert a == b and a


def test_whitehead_carries_clearing_factor(capsys):
    code, out, _ = run(capsys, "invariant", "--knot", "wh", "--n", "1")
    assert code == 0 and "clearing_factor" in json.loads(out)


@pytest.mark.parametrize("argv", [
    ["invariant", "--knot", "5_2", "--n", "0"],
    ["invariant", "--knot", "5_2", "--n", "9"],
    ["invariant", "--knot", "wh", "--n", "7"],
    ["invariant", "--knot", "4_1", "--n", "2"],
    ["evaluate", "--knot", "5_2", "--M", "2", "--N", "401"],
    ["evaluate", "--knot", "5_2", "--M", "1/2", "--N", "2"],
    ["integral", "--x", "0.9"],
    ["oracle", "--fixture", "nonexistent"],
    ["debug", "--coeff", "alpha", "--args", "1,2"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_argparse_rejects_bad_knot(capsys):
    with pytest.raises(SystemExit) as info:
        main(["evaluate", "--knot", "3_1", "--M", "2", "--N", "3"])
    assert info.value.code == 2


def test_numeric_failure_exit(capsys):
    code, _, err = run(capsys, "evaluate", "--knot", "5_2", "--M", "1", "--N", "5")
    assert code == 3 and "numeric failure" in err


def test_evaluate_fig8_base(capsys):
    code, out, _ = run(capsys, "evaluate", "--knot", "4_1", "--M", "2", "--N", "2")
    rec = json.loads(out)
    assert code == 0
    assert float(rec["re"]) == 5.0 and float(rec["im"]) == 0.0
    assert set(rec) == {"re", "im", "precision_used", "terms_evaluated", "terms_skipped_zero"}


def test_evaluate_matches_invariant_path(capsys):
    import mpmath

    from colored_homfly.invariants import FIVE_TWO, colored_homfly
    from colored_homfly.numeric import EvalPoint, point_values

    _, out, _ = run(capsys, "evaluate", "--knot", "5_2", "--M", "2", "--N", "3")
    rec = json.loads(out)
    with mpmath.workprec(200):
        a, q = point_values(EvalPoint.of(2, 3))
        exact = colored_homfly(FIVE_TWO, 2)(a, q)
        assert abs(mpmath.mpc(rec["re"], rec["im"]) - exact) < mpmath.mpf(10) ** -25


def test_evaluate_wh_skips(capsys):
    _, out, _ = run(capsys, "evaluate", "--knot", "wh", "--M", "1.3", "--N", "100")
    assert json.loads(out)["terms_skipped_zero"] > 0


def test_evaluate_csv(capsys):
    _, out, _ = run(capsys, "evaluate", "--knot", "6_1", "--M", "3", "--N", "4", "--format", "csv")
    lines = out.split("\n")
    assert lines[0] == "re,im,precision_used,terms_evaluated,terms_skipped_zero"
    assert len(lines) == 3 and lines[2] == ""


def test_oracle_matches_invariant(capsys):
    _, a, _ = run(capsys, "oracle", "--fixture", "5_2")
    _, b, _ = run(capsys, "invariant", "--knot", "5_2", "--n", "1")
    ra, rb = json.loads(a), json.loads(b)
    assert ra["polynomial"] == rb["polynomial"]


def test_oracle_unknot(capsys):
    _, out, _ = run(capsys, "oracle", "--fixture", "unknot", "--format", "text")
    assert out == "1\n"


def test_oracle_list(capsys):
    _, out, _ = run(capsys, "oracle", "--list")
    assert "wh_r3" in out.split()


def test_integral_points(capsys):
    _, out, _ = run(capsys, "integral", "--x", "5/6")
    assert out.splitlines()[1].split(",")[1].strip("0.") == ""
    _, out, _ = run(capsys, "integral", "--x", "0")
    assert out.splitlines()[1].split(",")[1].startswith("2.0298832")


def test_integral_range(capsys):
    _, out, _ = run(capsys, "integral", "--x-range", "0:5/6:100")
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert len(rows) == 101
    fs = [float(f) for _, f in rows]
    assert min(fs) == fs[-1] == 0.0
    assert all(f > 0 for f in fs[:-1])


def test_grid_rows(capsys):
    _, out, _ = run(capsys, "grid", "--knot", "5_2", "--N", "20", "--divisions", "6")
    lines = out.splitlines()
    assert lines[0] == "k,divisions,M_num,M_den,N,x"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2", "3", "4", "5"]


def test_asympt_step_beyond_range(capsys):
    _, out, _ = run(capsys, "asympt", "--knot", "5_2", "--M", "2", "--N-range", "10:12:5")
    lines = out.splitlines()
    assert lines[0] == "M_num,M_den,N,x,y"
    assert len(lines) == 2 and lines[1].startswith("2,1,10,")


def test_asympt_threads_byte_identical(capsys):
    _, a, _ = run(capsys, "asympt", "--knot", "wh", "--M", "3/2", "--N-range", "6:12:3", "--threads", "1")
    _, b, _ = run(capsys, "asympt", "--knot", "wh", "--M", "3/2", "--N-range", "6:12:3", "--threads", "2")
    assert a == b


def test_out_is_written_atomically(capsys, tmp_path):
    target = tmp_path / "sub" / "f.csv"
    code, out, _ = run(capsys, "integral", "--x", "1/2", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("x,f\n")
    assert [p.name for p in target.parent.iterdir()] == ["f.csv"]


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv(PREC_ENV, "96")
    _, out, _ = run(capsys, "evaluate", "--knot", "5_2", "--M", "2", "--N", "5")
    assert json.loads(out)["precision_used"] == 96
    monkeypatch.setenv(PREC_ENV, "lots")
    code, _, _ = run(capsys, "evaluate", "--knot", "5_2", "--M", "2", "--N", "5")
    assert code == 2


def test_debug_coeff(capsys):
    code, out, _ = run(capsys, "debug", "--coeff", "alpha", "--args", "1,1,0")
    assert code == 0 and out == "1\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "colored_homfly", "oracle", "--fixture", "unknot", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1\n"
