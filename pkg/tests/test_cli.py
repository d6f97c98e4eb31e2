import io
import json
import math

import pytest

from clifflog.cli import EXIT_CHECK, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run

KEYS = {"command", "algebra", "input", "result", "sector", "residual", "timing"}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    return code, json.loads(out) if out else None, err


def test_eval_log_example():
    code, rep, _ = call_json("eval", "--algebra", "cl11", "log(2+4e1-5e2-e12)")
    assert code == EXIT_OK
    assert KEYS <= rep.keys()
    assert rep["sector"]["tag"] == "TrigSector"
    assert rep["residual"] <= 1e-12
    assert rep["result"]["coeffs"][0] == pytest.approx(0.5 * math.log(12), abs=1e-15)


def test_eval_winding_k1():
    code, rep, _ = call_json("eval", "--algebra", "cl11", "--k", "1", "log(2+4e1-5e2-e12)")
    assert code == EXIT_OK and rep["residual"] <= 1e-12
    assert rep["branch"]["k"] == 1


def test_eval_exp_zero_text():
    code, out, _ = call("eval", "--algebra", "cl02", "exp(0)")
    assert code == EXIT_OK and "Multivector: 1\n" in out


def test_no_solution_exits_3():
    code, out, err = call("eval", "--algebra", "cl11", "log(2+5e1-4e2-7e12)")
    assert code == EXIT_DOMAIN and "no solution" in err


def test_singular_division_exits_3():
    code, _, err = call("eval", "--algebra", "cl10", "1/(1+e1)")
    assert code == EXIT_DOMAIN and err


@pytest.mark.parametrize("argv", [
    ("eval", "--algebra", "cl01", "2+e2"),
    ("eval", "--algebra", "cl11", "2 $ 3"),
    ("eval", "--algebra", "cl11", "exp("),
    ("eval", "--algebra", "cl33", "1"),
    ("check", "roundtrip", "--algebra", "cl11", "--samples", "0"),
    ("bench", "--algebra", "cl11", "--op", "tan"),
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == EXIT_USAGE


@pytest.mark.parametrize("expr, tag", [("1+e1", "LightCone"), ("2+e12", "HyperbolicSector"), ("0", "ZeroMV")])
def test_classify(expr, tag):
    code, rep, _ = call_json("classify", "--algebra", "cl11", expr)
    assert code == EXIT_OK and rep["sector"]["tag"] == tag


def test_classify_text_first_line_is_tag():
    assert call("classify", "--algebra", "cl11", "1+e1")[1].splitlines()[0] == "LightCone"


def test_roots_counts():
    code, rep, _ = call_json("roots", "--algebra", "cl10", "3+2e1")
    assert code == EXIT_OK and len(rep["roots"]) == 4
    code, rep, _ = call_json("roots", "--algebra", "cl11", "-1")
    assert code == EXIT_OK and len(rep["roots"]) == 2 and rep["families"]


def test_check_passes_and_fails():
    code, rep, _ = call_json("check", "sqrt", "--algebra", "cl20", "--samples", "60", "--seed", "4")
    assert code == EXIT_OK and rep["result"]["kind"] == "Passed"
    code, rep, _ = call_json("check", "roundtrip", "--algebra", "cl02", "--samples", "20", "--tol", "1e-30")
    assert code == EXIT_CHECK and rep["result"]["kind"] != "Passed"


def test_json_is_byte_identical_across_runs():
    argv = ("check", "product", "--algebra", "cl11", "--samples", "40", "--seed", "9", "--json")
    first, second = call(*argv)[1], call(*argv)[1]
    assert first == second
    argv = ("eval", "--algebra", "cl20", "sqrt(2-e1+2e12)", "--json")
    assert call(*argv)[1] == call(*argv)[1]


def test_json_floats_round_trip_exactly():
    _, out, _ = call("eval", "--algebra", "cl02", "exp(0.3+0.7e1-0.2e12)", "--json")
    from clifflog import functions as fn
    from clifflog.core import Signature, mv
    want = fn.exp(mv(Signature.CL02, 0.3, 0.7, 0, -0.2)).coeffs
    assert tuple(json.loads(out)["result"]["coeffs"]) == want


def test_bench_csv_is_deterministic_without_timing():
    argv = ("bench", "--algebra", "cl02", "--op", "log", "--samples", "50", "--terms", "12", "--no-timing")
    code, first, _ = call(*argv)
    assert code == EXIT_OK
    assert first.splitlines()[0] == "impl,terms,ns_per_op,max_abs_err"
    assert [r.split(",")[0] for r in first.splitlines()[1:3]] == ["closed", "series"]
    assert call(*argv)[1] == first


def test_bench_timed_rows_match_apart_from_timing():
    argv = ("bench", "--algebra", "cl11", "--op", "exp", "--samples", "30")
    mask = lambda text: [r.split(",")[:2] + r.split(",")[3:] for r in text.splitlines()]
    first, second = call(*argv)[1], call(*argv)[1]
    assert mask(first) == mask(second)
    assert float(first.splitlines()[1].split(",")[2]) > 0


def test_seed_from_environment(monkeypatch):
    argv = ("check", "roundtrip", "--algebra", "cl01", "--samples", "10", "--json")
    monkeypatch.setenv("CLIFFLOG_SEED", "123")
    assert json.loads(call(*argv)[1])["report"]["seed"] == 123
    assert json.loads(call(*argv, "--seed", "5")[1])["report"]["seed"] == 5
