import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from superdixmier import catalogue
from superdixmier.cli import main
from superdixmier.parsing import parse_element

from conftest import cat, homogeneous_elements
from make_golden import GOLDEN, golden_cases, run

H3 = {"name": "h3", "generators": [{"id": "z", "parity": 0}, {"id": "q", "parity": 0}, {"id": "p", "parity": 0}],
      "brackets": [{"left": "q", "right": "p", "value": {"z": "1"}}]}


@pytest.fixture
def h3_files(tmp_path):
    alg = tmp_path / "h3.json"
    alg.write_text(json.dumps(H3))
    lam = tmp_path / "lam.json"
    lam.write_text(json.dumps({"values": {"z": "1"}}))
    other = tmp_path / "b.json"
    other.write_text(json.dumps({"values": {"z": "2"}}))
    return str(alg), str(lam), str(other)


def test_dixmier_json(h3_files):
    alg, lam, _ = h3_files
    code, out = run(["dixmier", alg, lam, "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["p"] == 1 and data["q"] == 0
    assert data["generator_images"] == {"z": "1", "q": "q_1", "p": "p_1"}


def test_member_exit_codes(h3_files):
    alg, lam, _ = h3_files
    assert run(["member", alg, lam, "--element", "z - 1"])[0] == 0
    assert run(["member", alg, lam, "--element", "q"])[0] == 1


def test_orbit_eq_central_separator(h3_files):
    alg, a, b = h3_files
    code, out = run(["orbit-eq", alg, a, b, "--degree", "3", "--json"])
    assert code == 1
    data = json.loads(out)
    assert data["verdict"] == "distinct_with_separator" and data["separator"] == "-1 + z"


def test_orbit_eq_witness():
    code, out = run(["orbit-eq", "@h3", "@lam", "@lam_shift", "--json"])
    assert code == 0
    assert json.loads(out)["witness_text"] == ["-q"]


def test_orbit_eq_inconclusive():
    code, _ = run(["orbit-eq", "@h3", '{"values": {"q": "1"}}', '{"values": {"q": "2"}}', "--degree", "0"])
    assert code == 2


def test_input_errors(h3_files, capsys):
    alg, lam, _ = h3_files
    assert main(["dixmier", "/nonexistent.json", lam]) == 3
    assert main(["member", alg, lam, "--element", "w + 1"]) == 3
    assert main(["member", alg, lam]) == 3
    assert main(["dixmier", alg, '{"values": {"x": "1"}}']) == 3
    assert main(["dixmier", "@nope", "@lam"]) == 3
    assert main(["polarize", '{"generators": [{"id": "a"},]}', "@lam"]) == 3
    err = capsys.readouterr().err
    assert "input error" in err and "column" in err


def test_non_nilpotent_is_input_error(tmp_path):
    from test_superlie import gl11_like
    from superdixmier.parsing import serialize_algebra

    f = tmp_path / "gl.json"
    f.write_text(json.dumps(serialize_algebra(gl11_like())))
    assert main(["dixmier", str(f), '{"values": {"z": "1"}}']) == 3


def test_validate_reports_axiom(tmp_path):
    bad = dict(H3, brackets=H3["brackets"] + [{"left": "q", "right": "z", "value": {"q": "1"}}])
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(bad))
    code, out = run(["validate", str(f), "--json"])
    data = json.loads(out)
    assert code == 1 and not data["valid"] and data["axiom"] == "super Jacobi identity"
    assert run(["validate", "@h3"])[0] == 0


def test_validate_normalizes_idempotently(tmp_path):
    data = json.loads(run(["validate", "@mixed32", "--json"])[1])["normalized"]
    f = tmp_path / "n.json"
    f.write_text(json.dumps(data))
    again = json.loads(run(["validate", str(f), "--json"])[1])["normalized"]
    assert again == data


def test_induce():
    code, out = run(["induce", "@h3", "@lam", "--vector", "p^2", "--element", "q",
                     "--annihilator", "1", "--descend", "z, q", "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["vector"] == {"p^2": "1"}
    assert data["action"] == {"p": "2"}
    assert data["annihilator"]["basis"] == ["1 - z"]
    assert data["descent"]["z"] == "q" and data["descent"]["replayed"]


def test_induce_overflow_inconclusive():
    assert run(["induce", "@h3", "@lam", "--degree", "2", "--vector", "p^2", "--element", "p"])[0] == 2


def test_induce_bad_subspace():
    assert run(["induce", "@h3", "@lam", "--h", "q*p"])[0] == 3
    assert run(["induce", "@h3", "@lam", "--h", "q, p"])[0] == 3


def test_split_max_text():
    code, out = run(["split-max", "@cl11", "@lam"])
    assert code == 0 and "I+" in out and "FAILED" not in out
    code, out = run(["split-max", "@h3", "@lam"])
    assert code == 0 and "maximal" in out


def test_selftest():
    code, out = run(["selftest", "--json"])
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("case", list(golden_cases()), ids=lambda c: "%s:%s:%s" % c)
def test_golden(case):
    name, lname, cmd = case
    record = json.loads((GOLDEN / ("%s__%s__%s.json" % case)).read_text(encoding="utf-8"))
    code, out = run(record["argv"])
    assert code == record["exit"]
    assert json.loads(out) == record["output"]


def test_golden_spot_values():
    rec = json.loads((GOLDEN / "sheis__lam__dixmier.json").read_text())
    assert (rec["output"]["p"], rec["output"]["q"]) == (0, 2)
    rec = json.loads((GOLDEN / "sheis_diag__lam__dixmier.json").read_text())
    assert rec["output"]["adjoined_radicands"] == ["-1"]
    rec = json.loads((GOLDEN / "sheis__lam__polarize.json").read_text())
    assert rec["output"]["h"] == {"even": ["z"], "odd": ["c1"], "sdim": "(1|1)"}


def test_byte_identical_output():
    argv = ["orbit-eq", "@filiform4", "@lam", '{"values": {"e4": "1", "e3": "2", "e2": "-1"}}',
            "--seed", "4", "--json"]
    assert run(argv)[1] == run(argv)[1]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "superdixmier", "dixmier", "@cl11", "@lam", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["q"] == 1


@pytest.mark.parametrize("name", catalogue.names())
@given(st.data())
def test_element_print_parse_fixpoint(name, data):
    alg, _ = cat(name)
    u = data.draw(homogeneous_elements(alg))
    s = str(u)
    assert parse_element(alg, s) == u
    assert str(parse_element(alg, s)) == s


def test_element_examples():
    alg, _ = cat("h3")
    assert str(parse_element(alg, " z-1 ")) == "-1 + z"
    alg, _ = cat("cl11")
    assert parse_element(alg, "c^2") == parse_element(alg, "1/2*z")
    alg, _ = cat("sheis_diag")
    u = parse_element(alg, "sqrt(-1)*c1 + (1 + sqrt(2))/3*c2")
    assert parse_element(alg, str(u)) == u
