import json
import subprocess
import sys
from pathlib import Path

import pytest

from hyperalg.cli import main
from hyperalg.fixtures import fixture_hash
from hyperalg.hypermatrix import delta, dumps, loads

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "hyperalg" / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def delta_file(tmp_path):
    path = tmp_path / "a.hmx"
    path.write_text(dumps(delta(3, 2)))
    return path


def test_fuss_catalan(capsys):
    assert run(capsys, "fuss-catalan", 5) == (0, "3\n", "")
    assert run(capsys, "fuss-catalan", 7)[1] == "12\n"


def test_span_second_fixture(capsys):
    code, out, _ = run(capsys, "span", "--formulation", "second", FIXTURES / "second_A1.hmx")
    rec = json.loads(out)
    assert code == 0 and rec["dim"] == 8
    assert rec["config"]["convention"] == "literal"
    assert rec["config"]["backend"] == "exact"


def test_span_first_fixture(capsys):
    rec = json.loads(run(capsys, "span", "--formulation", "first", FIXTURES / "first_A1.hmx")[1])
    assert (rec["dim"], rec["max_degree"], rec["terms"]) == (8, 7, 17)


def test_product_delta(capsys, delta_file):
    code, out, _ = run(capsys, "product", "--background", "delta", delta_file, delta_file, delta_file)
    assert code == 0 and loads(out) == delta(3, 2)
    code, out, _ = run(capsys, "product", "--background", delta_file, delta_file, delta_file, delta_file)
    assert loads(out) == delta(3, 2)


def test_power_and_ch(capsys, delta_file):
    assert loads(run(capsys, "power", "--index", 3, delta_file)[1]) == delta(3, 2)
    assert loads(run(capsys, "power", "--formulation", "first", "--tree", "PAAPAAA", delta_file)[1]) == delta(3, 2)
    rec = json.loads(run(capsys, "ch", FIXTURES / "second_A1.hmx")[1])
    assert rec["r"] == 8 and len(rec["alphas"]) == 8


def test_modp_backend_record(capsys):
    rec = json.loads(run(capsys, "ch", "--backend", "modp", "--prime", 10007, FIXTURES / "second_A1.hmx")[1])
    assert rec["backend"] == "modp 10007" and rec["config"]["backend"] == "modp 10007"


def test_tetra(capsys, tmp_path):
    ones = tmp_path / "ones.hmx"
    ones.write_text("hmx 1\norder 3\ndims 3 3 3\nbackend exact\n" + "1\n" * 27)
    assert run(capsys, "tetra", ones)[1] == "3\n"
    assert run(capsys, "tetra", "--glued", "first", "--at", "0,1,2", ones)[1] == "9\n"
    assert run(capsys, "tetra", "--k", 1, "--at", "0,1,2", ones)[1] == "3\n"


def test_inflate_and_invariant(capsys, tmp_path):
    g = tmp_path / "c3.edges"
    g.write_text("0 1\n1 2\n2 0\n")
    A = loads(run(capsys, "inflate", g)[1])
    assert A.nonzero() == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    assert loads(run(capsys, "inflate", "--paths-only", g)[1]) == A
    rec = json.loads(run(capsys, "invariant", g)[1])
    assert rec["graph"] == "c3.edges" and rec["backend"] == "exact"
    assert "elapsed_s" not in rec
    assert "elapsed_s" in json.loads(run(capsys, "invariant", "--timings", g)[1])


def test_distinguish_known_pair(capsys):
    code, out, _ = run(
        capsys, "distinguish", "--undirected", FIXTURES / "star_k14.edges", FIXTURES / "c4_plus_k1.edges"
    )
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "different-invariant"
    assert len(rec["reports"]) == 2


def test_distinguish_not_cospectral_exits_zero(capsys, tmp_path):
    a, b = tmp_path / "k2.edges", tmp_path / "e2.edges"
    a.write_text("0 1\n")
    b.write_text("vertices 2\n")
    code, out, _ = run(capsys, "distinguish", "--undirected", a, b)
    assert code == 0 and json.loads(out)["verdict"] == "not-cospectral"


def test_graph6_input(capsys, tmp_path):
    g = tmp_path / "k14.g6"
    g.write_text("D?{\n")
    rec = json.loads(run(capsys, "invariant", "--backend", "exact", g)[1])
    assert rec["n"] == 5 and rec["backend"] == "exact"


def test_bench(capsys):
    rec = json.loads(run(capsys, "bench", "--workload", "product", "--size", 2, "--repetitions", 1)[1])
    assert rec["identical"] is True and "median_s" in rec["kernel"]
    rec = json.loads(
        run(capsys, "bench", "--workload", "span", "--repetitions", 1, "--hypermatrix", FIXTURES / "second_A2.hmx")[1]
    )
    assert rec["dim"] == 27


def test_usage_errors(capsys):
    for argv in (["bench", "--repetitions", "0"], ["frobnicate"], ["span", "--bogus", "x"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code != 0
        assert "usage" in capsys.readouterr().err


def test_operation_error_is_one_json_line(capsys, tmp_path):
    bad = tmp_path / "bad.hmx"
    bad.write_text("hmx 1\norder 1\ndims 1\nbackend exact\n1/1\n")
    code, out, err = run(capsys, "tetra", bad)
    assert code == 1 and out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["error"] == "HMXParseError"
    code, _, err = run(capsys, "tetra", FIXTURES / "second_A1.hmx")
    assert code == 1 and "0/1" in json.loads(err)["message"]


def test_out_flag(capsys, tmp_path, delta_file):
    target = tmp_path / "result.hmx"
    code, out, _ = run(capsys, "product", "--out", target, delta_file, delta_file, delta_file)
    assert code == 0 and out == ""
    assert loads(target.read_text()) == delta(3, 2)


def test_gen_is_seeded(capsys):
    a = run(capsys, "gen", "graph", "--seed", 5, "--size", 6)[1]
    b = run(capsys, "gen", "graph", "--seed", 5, "--size", 6)[1]
    assert a == b and a.startswith("vertices 6\n")


def test_env_prime(capsys, monkeypatch):
    monkeypatch.setenv("HYPERALG_PRIME", "1000003")
    rec = json.loads(run(capsys, "ch", "--backend", "modp", FIXTURES / "second_A1.hmx")[1])
    assert rec["backend"] == "modp 1000003"


def test_version_embeds_fixture_hash():
    out = subprocess.run([sys.executable, "-m", "hyperalg", "--version"], capture_output=True, text=True, check=True)
    assert out.stdout.strip().endswith(f"(fixtures {fixture_hash()})")
