import io
import json
import shutil
import subprocess

import pytest

from graded_roots.cli import dumps, main
from graded_roots.plumbing import brieskorn_graph, graph_to_dict


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def graph_json(p, q, r):
    return dumps(graph_to_dict(brieskorn_graph(p, q, r)))


def test_brieskorn_then_hf():
    code, out, _ = run(["brieskorn", "2", "3", "11"])
    assert code == 0
    code, out, _ = run(["hf"], out)
    assert code == 0
    mod = json.loads(out)
    assert mod["tower"] == "-2"
    assert mod["reduced"] == [{"deg": "-2", "rank": 1}]


def test_classify_poincare_sphere():
    code, out, _ = run(["classify"], graph_json(2, 3, 5))
    assert code == 0
    report = json.loads(out)
    assert report["kind"] == "rational" and report["sigma_K"] == "-inf"


def test_sigma_family():
    code, out, _ = run(["sigma", "--family", "2", "1"])
    assert code == 0
    res = json.loads(out)
    assert res["sigma"] == -1 and res["laufer_index"] == 60


def test_sigma_char():
    code, out, _ = run(["sigma", "--char", "0,0,0,0,0,0,0,0,-1"], graph_json(2, 3, 11))
    assert code == 0
    assert json.loads(out) == {"k": [0] * 8 + [-1], "laufer_index": 6, "leaf_grade": 0, "sigma": 0}


def test_sigma_char_uses_input_ids():
    # Sigma(2,3,7) with the center listed last
    data = {"vertices": [{"id": 0, "weight": -2}, {"id": 1, "weight": -3},
                         {"id": 2, "weight": -7}, {"id": 3, "weight": -1}],
            "edges": [[3, 0], [3, 1], [3, 2]]}
    code, out, err = run(["sigma", "--char", "0,1,5,-1"], json.dumps(data))
    assert code == 0
    assert json.loads(out)["k"] == [-1, 5, 1, 0]
    assert json.loads(err.splitlines()[0]) == {"id_map": {"0": 3, "1": 2, "2": 1, "3": 0}}


def test_exit_codes_and_error_names():
    code, _, err = run(["brieskorn", "2", "4", "7"])
    assert code == 3 and json.loads(err)["error"] == "NotCoprime"
    code, _, err = run(["hf"], "{not json")
    assert code == 2 and json.loads(err)["error"] == "ParseError"
    code, _, err = run(["hf", "--max-iter", "3"], graph_json(2, 3, 11))
    assert code == 4 and json.loads(err)["error"] == "IterationCapExceeded"
    code, _, err = run(["classify"], json.dumps({"vertices": [{"id": 0, "weight": -1},
                                                             {"id": 1, "weight": -1}],
                                                "edges": [[0, 1]]}))
    assert code == 3 and json.loads(err)["error"] == "NotNegativeDefinite"
    assert run(["no-such-command"])[0] == 2
    assert run(["sigma"], graph_json(2, 3, 11))[0] == 2


def test_environment_cap(monkeypatch):
    monkeypatch.setenv("GRADED_ROOTS_MAX_ITER", "3")
    assert run(["hf"], graph_json(2, 3, 11))[0] == 4


def test_root_dot_is_deterministic():
    a = run(["root", "--format", "dot"], graph_json(2, 3, 11))[1]
    b = run(["root", "--format", "dot"], graph_json(2, 3, 11))[1]
    assert a == b and a.startswith("graph graded_root {")


def test_root_json_and_b0():
    code, out, err = run(["root", "--b0", "3"], graph_json(2, 3, 11))
    assert code == 0
    res = json.loads(out)
    assert res["trace"]["base"] == 0  # the chosen base is moved to canonical id 0
    assert res["trace"]["tau"][-1] == 2
    assert "id_map" in json.loads(err.splitlines()[0])


def test_batch_mode_preserves_order():
    graphs = [graph_to_dict(brieskorn_graph(*t)) for t in [(2, 3, 11), (2, 3, 5), (2, 3, 7), (3, 4, 11)]]
    seq = run(["hf"], json.dumps(graphs))[1]
    par = run(["hf", "--jobs", "2"], json.dumps(graphs))[1]
    assert seq == par
    assert [m["tower"] for m in json.loads(seq)] == ["-2", "-2", "0", "-2"]


def test_batch_mode_reports_errors_in_place():
    graphs = [graph_to_dict(brieskorn_graph(2, 3, 5)), {"vertices": []}]
    code, out, err = run(["classify"], json.dumps(graphs))
    res = json.loads(out)
    assert code == 2
    assert res[0]["kind"] == "rational" and res[1]["error"] == "ParseError"


def test_plan_from_file(tmp_path):
    path = tmp_path / "word.txt"
    path.write_text("g=1; a1 a2^-1\n")
    code, out, _ = run(["plan", str(path), "--n", "2"])
    assert code == 0
    plan = json.loads(out)
    assert plan["total_twists"] == 11 + 1 + 2 + 12
    code, out, _ = run(["plan", str(path), "--target-graph"])
    assert json.loads(out) == graph_to_dict(brieskorn_graph(2, 3, 7))
    assert run(["plan", str(tmp_path / "missing")])[0] == 2
    assert run(["plan", "--n", "0"], "g=1; a1")[0] == 3


def test_semigroup_tau_command():
    code, out, _ = run(["semigroup-tau", "3", "4"])
    assert code == 0 and json.loads(out)["minima"][1] == [11, -1]
    assert run(["semigroup-tau", "4", "6"])[0] == 3


def test_corpus_is_seeded():
    a = run(["corpus", "--count", "5", "--seed", "9"])[1]
    assert a == run(["corpus", "--count", "5", "--seed", "9"])[1]
    assert a != run(["corpus", "--count", "5", "--seed", "10"])[1]
    assert len(json.loads(a)) == 5


@pytest.mark.parametrize("argv,stdin", [
    (["brieskorn", "2", "3", "11"], ""),
    (["hf"], graph_json(3, 4, 11)),
    (["classify"], graph_json(2, 3, 11)),
    (["root"], graph_json(2, 3, 7)),
    (["sigma", "--family", "3", "2"], ""),
    (["semigroup-tau", "2", "7"], ""),
    (["plan"], "g=2; a1 a3^-1 X(c)"),
    (["random-tau", "--seed", "3"], ""),
])
def test_json_round_trip(argv, stdin):
    code, out, _ = run(argv, stdin)
    assert code == 0
    assert dumps(json.loads(out)) == out.strip()


def test_text_format():
    code, out, _ = run(["hf", "--format", "text"], graph_json(2, 3, 11))
    assert code == 0
    assert 'tower: "-2"' in out and "reduced:" in out


@pytest.mark.skipif(shutil.which("graded-roots") is None, reason="console script not installed")
def test_console_script_pipeline():
    g = subprocess.run(["graded-roots", "brieskorn", "2", "3", "11"],
                       capture_output=True, text=True, check=True).stdout
    res = subprocess.run(["graded-roots", "hf"], input=g, capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["tower"] == "-2"
