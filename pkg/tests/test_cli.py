import io
import json

import pytest

from earlab.cli import main, worker_cap


def run(capsys, *argv):
    code = main(list(argv))
    doc = json.loads(capsys.readouterr().out)
    return code, doc


@pytest.fixture
def c5_file(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text("".join(f"{i} {(i + 1) % 5}\n" for i in range(5)))
    return str(path)


@pytest.fixture
def k3_sym_file(tmp_path):
    arcs = [(u, v) for u in range(3) for v in range(3) if u != v]
    path = tmp_path / "k3.txt"
    path.write_text("".join(f"{u} {v}\n" for u, v in arcs))
    return str(path)


@pytest.fixture
def le3_instance(tmp_path, capsys):
    code = main(["gen", "--le", "--base", "4", "--ears", "2",
                 "--min-ear-length", "3", "--max-ear-length", "4",
                 "--seed", "9"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(doc))
    dec = tmp_path / "dec.json"
    dec.write_text(json.dumps(doc["payload"]["decomposition"]))
    return str(inst), str(dec)


def test_envelope_shape(capsys, c5_file):
    code, doc = run(capsys, "decompose", c5_file)
    assert code == 0
    assert doc["status"] == "ok"
    assert isinstance(doc["timing_ms"], int)
    assert doc["payload"]["decomposition"]["base"] == [0, 1, 2, 3, 4]
    assert doc["payload"]["ear_count"] == 0


def test_decompose_min_ear_length_failure(capsys, k3_sym_file):
    code, doc = run(capsys, "decompose", k3_sym_file, "--min-ear-length", "2")
    assert code == 1
    assert doc["status"] == "property_failed"
    assert "provably none" in doc["error"]
    assert doc["payload"] is None


def test_classify(capsys, k3_sym_file):
    code, doc = run(capsys, "classify", k3_sym_file)
    assert code == 0
    assert doc["payload"]["levels"] == {"1": True, "2": False, "3": False}
    assert doc["payload"]["max_certified"] == 1


def test_classify_non_strong(capsys, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("0 1\n")
    code, doc = run(capsys, "classify", str(path))
    assert code == 0
    assert doc["payload"]["strong"] is False
    assert doc["payload"]["max_certified"] is None


def test_constructions_from_instance(capsys, le3_instance):
    inst, dec = le3_instance
    for argv in (["seymour", inst, "--decomposition", dec],
                 ["transversal", inst, "--decomposition", dec],
                 ["quasi-kernel", inst, "--decomposition", dec],
                 ["color", inst, "--decomposition", dec, "--exact"],
                 ["oriented", inst, "--decomposition", dec]):
        code, doc = run(capsys, *argv)
        assert code == 0, argv
        assert doc["status"] == "ok"


def test_color_reports_bounds(capsys, c5_file):
    code, doc = run(capsys, "color", c5_file, "--exact")
    assert code == 0
    assert doc["payload"]["colors_used"] == 3
    assert doc["payload"]["dichromatic"] == {"lower": 2, "upper": 3, "exact": 2}


def test_kernel_trace(capsys, c5_file):
    code, doc = run(capsys, "kernel", "trace", c5_file)
    assert code == 0
    assert doc["payload"]["dichotomy"] == "all_stages_lack_kernels"
    assert doc["payload"]["base_parity"] == "odd"


def test_kernel_extend_and_restrict(capsys, tmp_path):
    graph = tmp_path / "g.txt"
    graph.write_text("0 1\n1 2\n2 3\n3 0\n1 4\n4 3\n")
    dec = tmp_path / "d.json"
    dec.write_text(json.dumps({"base": [0, 1, 2, 3], "ears": [[1, 4, 3]]}))
    members = tmp_path / "s.json"
    members.write_text("[1, 3]")
    for action in ("extend", "restrict"):
        code, doc = run(capsys, "kernel", action, str(graph),
                        "--decomposition", str(dec), "--set", str(members))
        assert code == 0
        assert doc["payload"]["members"] == [1, 3]
        assert doc["payload"]["verified"] is True


def test_kernel_extend_requires_set(capsys, c5_file):
    code, doc = run(capsys, "kernel", "extend", c5_file)
    assert code == 2
    assert doc["status"] == "invalid_input"


def test_verify_t(capsys):
    code, doc = run(capsys, "verify-T")
    assert code == 0
    payload = doc["payload"]
    assert payload["iso_class_count"] == 1
    assert payload["code"] == "101001001010101"
    assert payload["walk_property"] is True
    assert payload["reference_walks_valid"] is True
    assert payload["census"]["labeled_count"] == 240


def test_census(capsys):
    code, doc = run(capsys, "census")
    assert code == 0
    assert doc["payload"]["labeled_count"] == 240
    assert doc["payload"]["closed_reading"]["agrees"] is True


def test_gen_gi_payload_is_a_digraph(capsys):
    code, doc = run(capsys, "gen", "--gi", "2")
    assert code == 0
    assert doc["payload"]["n"] == 9
    assert len(doc["payload"]["arcs"]) == 15


def test_gen_le_is_deterministic(capsys):
    _, first = run(capsys, "gen", "--le", "--seed", "4", "--ears", "2")
    _, second = run(capsys, "gen", "--le", "--seed", "4", "--ears", "2")
    assert first["payload"] == second["payload"]


def test_gen_pipes_into_oracle(capsys, monkeypatch):
    code, doc = run(capsys, "gen", "--gi", "2")
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
    code, doc = run(capsys, "oracle", "kernel", "-")
    assert code == 0
    assert doc["payload"]["value"] is True
    assert doc["payload"]["witness"] == [3, 4, 5, 6, 7, 8]


def test_oracle_kinds(capsys, c5_file):
    expected = {"kernel": False, "quasi-kernel": 2, "chromatic": 3,
                "oriented": 5, "longest-path": 4}
    for kind, value in expected.items():
        code, doc = run(capsys, "oracle", kind, c5_file)
        assert code == 0
        assert doc["payload"]["value"] == value, kind


def test_oracle_all_flag(capsys, c5_file):
    code, doc = run(capsys, "oracle", "quasi-kernel", c5_file, "--all")
    assert code == 0
    assert len(doc["payload"]["details"]["all_quasi_kernels"]) > 1


def test_invalid_input_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2 3\n")
    code, doc = run(capsys, "oracle", "kernel", str(path))
    assert code == 2
    assert doc["status"] == "invalid_input"
    assert "line 1" in doc["error"]


def test_missing_file_exit_code(capsys):
    code, doc = run(capsys, "oracle", "kernel", "/nonexistent/file.txt")
    assert code == 2


def test_cap_exceeded_exit_code(capsys, tmp_path):
    path = tmp_path / "big.txt"
    path.write_text("".join(f"{i} {(i + 1) % 25}\n" for i in range(25)))
    code, doc = run(capsys, "oracle", "kernel", str(path))
    assert code == 3
    assert doc["status"] == "cap_exceeded"


def test_worker_cap_env(monkeypatch):
    monkeypatch.setenv("EARLAB_THREADS", "4")
    assert worker_cap() == 4
    monkeypatch.setenv("EARLAB_THREADS", "zebra")
    assert worker_cap() == 1
    monkeypatch.delenv("EARLAB_THREADS")
    assert worker_cap() == 1
