import io
import json
import math

import pytest

from ifunc.catalog import catalog
from ifunc.cli import main, parse
from ifunc.distribution import distribution_from_dict
from ifunc.params import IFunctionParams

EXPONENTIAL_JSON = IFunctionParams(1, 0, [], [(0, 1, 1)]).to_json()


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_eval_exponential_csv():
    code, out, _ = run("eval", EXPONENTIAL_JSON, "--points", "1")
    assert code == 0
    assert out.splitlines() == ["x,value", "1,0.36787944117144233"]
    code, out, _ = run("eval", EXPONENTIAL_JSON, "--points", "1", "--contour-only")
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(math.exp(-1), rel=1e-14)


def test_eval_from_file_json_format(tmp_path):
    path = tmp_path / "exp.json"
    path.write_text(EXPONENTIAL_JSON)
    code, out, _ = run("eval", str(path), "--points", "0.5,2", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["x"] for r in rows] == [0.5, 2.0]
    assert rows[1]["value"] == pytest.approx(math.exp(-2), rel=1e-12)


def test_default_grids():
    code, out, _ = run("pdf", "exponential")
    lines = out.splitlines()[1:]
    assert len(lines) == 64
    xs = [float(l.split(",")[0]) for l in lines]
    assert xs[0] == pytest.approx(1e-3) and xs[-1] == pytest.approx(1e3)
    code, out, _ = run("cdf", "uniform", "--count", "5")
    assert [float(l.split(",")[0]) for l in out.splitlines()[1:]] == [0, 0.25, 0.5, 0.75, 1]


def test_quantities():
    code, out, _ = run("hazard", "exponential:lam=2", "--points", "0.5,1,2")
    assert code == 0
    assert all(float(l.split(",")[1]) == pytest.approx(0.5, rel=1e-9) for l in out.splitlines()[1:])
    code, out, _ = run("mgf", "exponential", "--points", "0.5")
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(2.0, rel=1e-9)
    code, out, _ = run("cf", "exponential", "--points", "1")
    assert complex(out.splitlines()[1].split(",")[1]) == pytest.approx(1 / (1 - 1j), rel=1e-8)


def test_parallel_output_is_identical():
    a = run("pdf", "gamma:theta=2.5", "--count", "12")[1]
    b = run("pdf", "gamma:theta=2.5", "--count", "12", "--jobs", "4")[1]
    assert a == b


def test_catalog_commands():
    code, out, _ = run("catalog", "list")
    names = [row["name"] for row in json.loads(out)]
    assert code == 0 and "uniform" in names and len(names) == 16
    code, out, _ = run("catalog", "show", "uniform")
    record = json.loads(out)
    assert record["k0"] == pytest.approx(1.0)
    assert record["ifunction"]["upper"] == [{"a": 1.0, "A": 1.0, "alpha": 1.0}]
    assert record["ifunction"]["lower"] == [{"b": 0.0, "B": 1.0, "beta": 1.0}]
    d = distribution_from_dict(record)
    assert d == catalog("uniform")


def test_algebra_quotient_emits_half_cauchy(tmp_path):
    code, out, _ = run("algebra", "quotient", "half_normal", "half_normal", "--check")
    record = json.loads(out)
    assert code == 0
    assert all(r["passed"] for r in record["check"])
    d = distribution_from_dict(record)
    target = catalog("half_cauchy", lam=1.0)
    assert d.params == target.params and d.delta == pytest.approx(target.delta)
    path = tmp_path / "q.json"
    path.write_text(out)
    code, out2, _ = run("pdf", str(path), "--points", "1")
    assert float(out2.splitlines()[1].split(",")[1]) == pytest.approx(1 / math.pi, rel=1e-9)


def test_algebra_power_and_scale():
    code, out, _ = run("algebra", "power", "exponential:lam=2", "--exponent", "1/3", "--check")
    assert code == 0 and all(r["passed"] for r in json.loads(out)["check"])
    code, out, _ = run("algebra", "scale", "exponential", "--factor", "3")
    assert distribution_from_dict(json.loads(out)).pdf(1.0) == pytest.approx(math.exp(-1 / 3) / 3, rel=1e-10)


def test_ifig_laplace():
    code, out, _ = run("ifig", "laplace", "inverse_gaussian:mu=1,lam=1", "--points", "1")
    assert code == 0
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(math.exp(1 - math.sqrt(3)), rel=1e-6)


def test_sample_is_deterministic(tmp_path):
    a = run("sample", "exponential", "--count", "3", "--seed", "9")[1]
    b = run("sample", "exponential", "--count", "3", "--seed", "9")[1]
    assert a == b and a.startswith("x,value\n1,")
    path = tmp_path / "s.csv"
    run("sample", "exponential", "--count", "3", "--seed", "9", "-o", str(path))
    assert path.read_text() == a


def test_verify_suite():
    code, out, _ = run("verify", "--suite", "12")
    rows = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and rows and all(r["passed"] for r in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ("bogus",),
        ("pdf", "nope"),
        ("pdf", "exponential", "--lo", "2", "--hi", "1"),
        ("pdf", "exponential", "--count", "0"),
        ("eval", "{not json"),
        ("pdf", "exponential", "--rel-tol", "2"),
        ("algebra", "power", "exponential", "--exponent", "x"),
        ("pdf", "exponential:foo=1"),
        ("ifig", "moment", "gig:lam=1"),
        ("verify", "--suite", "99"),
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert json.loads(err)["exit_code"] == 2


def test_numerical_errors_exit_3():
    code, _, err = run("moment", "half_cauchy", "--points", "1")
    assert code == 3 and json.loads(err)["error"] == "MomentDivergenceError"
    code, _, err = run("mgf", "exponential", "--points", "2")
    assert code == 3


def test_max_height_env(monkeypatch):
    monkeypatch.setenv("IFUNC_MAX_HEIGHT", "80")
    cmd = parse(["pdf", "exponential"])
    assert cmd.config().max_height == 80
    monkeypatch.setenv("IFUNC_MAX_HEIGHT", "abc")
    code, _, _ = run("pdf", "exponential", "--points", "1")
    assert code == 2
