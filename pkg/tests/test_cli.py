import json
import subprocess
import sys

import pytest

from artifact.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, run
from artifact.coeffs import CoeffInvariant

import corpus


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def _run(argv, tmp_path):
    out = tmp_path / "out.json"
    code = run(argv + ["--output", str(out)])
    return code, out.read_text()


@pytest.fixture
def z2z_file(tmp_path):
    return _write(tmp_path / "z2z.json", corpus.z2z().to_json())


@pytest.fixture
def ck_file(tmp_path):
    return _write(tmp_path / "ck.json", {"adjacency": [[3, 1], [0, 3]], "ideal_block": [1]})


def test_ktheory(ck_file, tmp_path):
    code, text = _run(["ktheory", "--input", ck_file], tmp_path)
    assert code == EXIT_OK
    rep = json.loads(text)
    assert [g["torsion"] for g in rep["sixterm"]["groups"][:3]] == [[2], [4], [2]]
    assert rep["exact"] is True


def test_aut_on_z2z(z2z_file, tmp_path):
    code, text = _run(["aut", "--input", z2z_file], tmp_path)
    assert code == EXIT_OK
    assert json.loads(text)["aut"]["order"] == 2


def test_invariant_dump_round_trips(ck_file, tmp_path):
    code, text = _run(["invariant", "--input", ck_file], tmp_path)
    assert code == EXIT_OK
    d = json.loads(text)
    assert json.dumps(CoeffInvariant.from_json(d).to_json(), indent=2) == text.rstrip("\n")


def test_verify_corrupted_dump(tmp_path):
    src = _write(tmp_path / "ck9.json", {"adjacency": [[4, 1], [0, 4]], "ideal_block": [1]})
    code, text = _run(["invariant", "--input", src, "--support", "3,9"], tmp_path)
    d = json.loads(text)
    m = d["maps"]["beta[3,4]"]
    m["matrix"] = [[-x for x in row] for row in m["matrix"]]
    bad = _write(tmp_path / "bad.json", d)
    code, text = _run(["verify", "--input", bad], tmp_path)
    assert code == EXIT_VERIFY
    rep = json.loads(text)
    assert rep["error"]["type"] == "verification"
    assert rep["error"]["relation"]
    names = [f["name"] for f in rep["verify"]["failures"]]
    assert "beta-kappa square (n=3,m=3,i=4)" in names


def test_verify_passes(z2z_file, tmp_path):
    code, text = _run(["verify", "--input", z2z_file], tmp_path)
    assert code == EXIT_OK and json.loads(text)["verify"]["ok"]


def test_support_override(z2z_file, tmp_path):
    code, text = _run(["invariant", "--input", z2z_file, "--support", "4,2"], tmp_path)
    assert json.loads(text)["support"] == [2, 4]


def test_resolve(tmp_path):
    src = _write(tmp_path / "g.json", corpus.two_four().to_json())
    code, text = _run(["resolve", "--input", src], tmp_path)
    assert code == EXIT_OK
    rep = json.loads(text)
    assert rep["lambda2_diagonal"] == [2, 4]
    assert rep["kernels_on_H"]["4"] == {"torsion": [2, 4], "free_rank": 0}
    assert rep["hom_sequence"]["middle_exact"]


def test_hom_and_oracle(ck_file, tmp_path):
    other = _write(tmp_path / "four_eight.json", corpus.four_eight().to_json())
    code, text = _run(["hom", "--input", other, "--second", ck_file], tmp_path)
    assert code == EXIT_OK
    assert json.loads(text)["support"] == [2, 4, 8]
    code, text = _run(["oracle", "--input", other, "--second", ck_file], tmp_path)
    rep = json.loads(text)
    assert code == EXIT_OK and rep["agree"] and rep["solver_order"] == rep["oracle_order"]


@pytest.mark.parametrize("payload", [
    "not json",
    json.dumps([1, 2]),
    json.dumps({"something": 1}),
    json.dumps({"adjacency": [[1, 1], [1, 1]], "ideal_block": [1]}),
    json.dumps({"groups": [{"torsion": [], "free_rank": 1}] * 2 + [{"torsion": [], "free_rank": 0}] * 4,
                "maps": [[[0]], [], [], [], [], [[]]]}),
])
def test_input_errors(payload, tmp_path):
    p = tmp_path / "in.json"
    p.write_text(payload)
    code, text = _run(["invariant", "--input", str(p)], tmp_path)
    assert code == EXIT_INPUT
    assert json.loads(text)["error"]["type"] == "input"


def test_missing_second_and_infinite_oracle(z2z_file, tmp_path):
    assert _run(["hom", "--input", z2z_file], tmp_path)[0] == EXIT_INPUT
    assert _run(["oracle", "--input", z2z_file], tmp_path)[0] == EXIT_INPUT


def test_bad_flags():
    assert run(["nonsense", "--input", "x"]) == EXIT_INPUT
    assert run(["aut", "--input", "x", "--support", "1"]) == EXIT_INPUT


def test_text_format(ck_file, tmp_path):
    code, text = _run(["ktheory", "--input", ck_file, "--format", "text"], tmp_path)
    assert code == EXIT_OK
    assert "Z/4" in text and "zero_exponential: true" in text


def test_module_entry_point(ck_file):
    proc = subprocess.run([sys.executable, "-m", "artifact", "ktheory", "--input", ck_file],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["exact"] is True


def test_reports_are_deterministic(ck_file, tmp_path):
    for cmd in ("invariant", "verify", "resolve", "aut"):
        a = _run([cmd, "--input", ck_file], tmp_path)
        b = _run([cmd, "--input", ck_file], tmp_path)
        assert a == b
