import json
import os
import subprocess
import sys

import pytest

from rainbow_forge.cli import main
from rainbow_forge.documents import InstanceDocument, build_document, export_dot
from rainbow_forge.families import example1
from rainbow_forge.hypercore import EdgeColoring, MultiHypergraph
from rainbow_forge.listcolor import galvin_counterexample
from rainbow_forge.solver import decompose_and_solve, find_frm

from conftest import GOLDEN, golden_names, load_golden


def run_cli(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "rainbow_forge.cli", *args],
                          capture_output=True, text=True, env=full_env)


def test_build_figure_two_document(capsys):
    assert main(["build", "example1", "--r", "3", "--delta", "2"]) == 0
    doc = InstanceDocument.loads(capsys.readouterr().out)
    inst = example1(3, 2)
    assert doc.graph == inst.graph
    assert doc.coloring.classes == inst.coloring.classes
    assert doc.manifest.min_class_size == 5
    assert doc.provenance["builder"] == "example1"


def test_build_galvin_document(capsys):
    assert main(["build", "galvin", "--delta", "2"]) == 0
    doc = InstanceDocument.loads(capsys.readouterr().out)
    gi = galvin_counterexample(2)
    assert doc.coloring.num_classes == 9
    assert doc.graph == gi.graph
    assert doc.list_instance == gi.lists


def test_build_guard_is_a_usage_error(capsys):
    assert main(["build", "example2", "--r", "2", "--s", "3", "--delta", "4"]) == 2
    assert "multiple of s" in capsys.readouterr().err
    assert main(["build", "nosuch"]) == 2
    assert main(["build", "knn_cayley", "--n", "2", "--r", "3"]) == 2
    assert main(["build", "knn_cayley"]) == 2


def test_verify_figure_one(tmp_path, capsys):
    path = tmp_path / "f1.json"
    assert main(["build", "example1", "--r", "2", "--delta", "2", "--out", str(path)]) == 0
    assert main(["verify", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "verified"
    frm = next(c for c in report["checks"] if c["name"] == "frm_free")
    assert frm["status"] == "pass" and frm["seconds"] < 1


def _drop_edge(doc, eid):
    g, c = doc.graph, doc.coloring
    keep = [e for e in range(g.num_edges) if e != eid]
    remap = {e: k for k, e in enumerate(keep)}
    doc.graph = MultiHypergraph(g.num_vertices, tuple(g.edges[e] for e in keep))
    doc.coloring = EdgeColoring(tuple(tuple(remap[e] for e in cls if e != eid) for cls in c.classes), c.labels)
    return doc


def test_verify_names_a_failed_claim(tmp_path, capsys):
    doc = _drop_edge(build_document("example1", {"r": 2, "delta": 2}), 0)
    path = tmp_path / "broken.json"
    path.write_text(doc.dumps())
    assert main(["verify", str(path)]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["failed"] == ["min_class_size"]
    check = next(c for c in report["checks"] if c["name"] == "min_class_size")
    assert check["short_classes"] == [0]


def test_verify_reports_frm_witness_for_odd_cayley(tmp_path, capsys):
    path = tmp_path / "k3.json"
    main(["build", "knn_cayley", "--n", "3", "--out", str(path)])
    assert main(["verify", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    frm = next(c for c in report["checks"] if c["name"] == "frm")
    assert frm["status"] == "info" and frm["solver_status"] == "found" and frm["witness"]


def test_verify_false_claim_fails(tmp_path, capsys):
    doc = build_document("knn_cayley", {"n": 3})
    doc.manifest.frm_free = True
    path = tmp_path / "k3.json"
    path.write_text(doc.dumps())
    assert main(["verify", str(path)]) == 1
    assert "frm_free" in json.loads(capsys.readouterr().out)["failed"]


def test_verify_partition_error(tmp_path, capsys):
    doc = build_document("knn_cayley", {"n": 2})
    data = doc.to_dict()
    data["coloring"]["classes"][0] = data["coloring"]["classes"][0][:1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["verify", str(path)]) == 1
    assert json.loads(capsys.readouterr().out)["failed"] == ["partition"]


def test_inconclusive_exit_code(tmp_path):
    path = tmp_path / "big.json"
    assert run_cli("build", "example1", "--r", "3", "--delta", "3", "--out", str(path)).returncode == 0
    res = run_cli("verify", str(path), env={"RAINBOW_FORGE_BUDGET": "5"})
    assert res.returncode == 3
    assert json.loads(res.stdout)["verdict"] == "inconclusive"
    res = run_cli("solve", str(path), "--method", "backtracking", "--budget", "5")
    assert res.returncode == 3


def test_parse_errors(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert main(["verify", str(path)]) == 2
    path.write_text(json.dumps({"schema_version": "99"}))
    assert main(["verify", str(path)]) == 2
    path.write_text(json.dumps({"schema_version": "1"}))
    assert main(["solve", str(path)]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_solve_methods(tmp_path, capsys):
    path = tmp_path / "k5.json"
    main(["build", "knn_cayley", "--n", "5", "--out", str(path)])
    capsys.readouterr()
    for method in ("decomposition", "backtracking", "enumeration"):
        assert main(["solve", str(path), "--method", method]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["status"] == "found" and len(out["witness"]) == 5
    assert main(["solve", str(path), "--max"]) == 0
    assert json.loads(capsys.readouterr().out)["max_rainbow_size"] == 5


def test_threads_flag_gives_same_verdict(tmp_path, capsys):
    path = tmp_path / "fig2.json"
    main(["build", "example1", "--r", "3", "--delta", "2", "--out", str(path)])
    assert main(["verify", str(path), "--threads", "2"]) == 0
    assert main(["solve", str(path), "--method", "backtracking", "--threads", "2"]) == 0


def test_list_families(capsys):
    assert main(["list-families"]) == 0
    out = capsys.readouterr().out
    for name in ("example1", "sunflower", "thm15_3", "galvin_g0", "galvin"):
        assert name in out


def test_help_mentions_every_subcommand():
    res = run_cli("--help")
    for cmd in ("build", "verify", "solve", "export", "list-families"):
        assert cmd in res.stdout


def test_cli_output_is_byte_identical():
    first = run_cli("build", "thm15_1", "--delta", "2")
    second = run_cli("build", "thm15_1", "--delta", "2")
    assert first.returncode == 0 and first.stdout == second.stdout


@pytest.mark.parametrize("name", golden_names())
def test_golden_round_trip(name):
    text = (GOLDEN / f"{name}.json").read_text()
    doc = InstanceDocument.loads(text)
    assert doc.dumps() == text
    again = InstanceDocument.from_dict(json.loads(doc.dumps()))
    assert (again.graph, again.coloring, again.manifest) == (doc.graph, doc.coloring, doc.manifest)


@pytest.mark.parametrize("name", [n for n in golden_names() if not n.startswith("three_cycles")])
def test_builders_reproduce_golden_documents(name):
    doc = load_golden(name)
    fresh = build_document(doc.provenance["builder"], doc.provenance["params"])
    fresh.provenance["version"] = doc.provenance["version"]
    assert fresh.dumps() == (GOLDEN / f"{name}.json").read_text()


def test_golden_solver_counts(solver_counts):
    assert set(solver_counts) == set(golden_names())
    for name, expected in solver_counts.items():
        doc = load_golden(name)
        back = find_frm(doc.graph, doc.coloring, None)
        dec = decompose_and_solve(doc.graph, doc.coloring, None)
        assert back.status == dec.status == expected["status"]
        assert back.nodes_explored == expected["backtracking_nodes"]
        assert dec.nodes_explored == expected["decomposition_nodes"]


@pytest.mark.parametrize("name", ["three_cycles_4_4_7", "three_cycles_4_7_7"])
def test_three_cycles_fixture(name):
    doc = load_golden(name)
    assert set(doc.coloring.sizes()) == {3}
    assert set(doc.graph.degrees()) == {2}
    lengths = doc.provenance["params"]["lengths"]
    assert all(n % 3 == 1 for n in lengths)
    assert decompose_and_solve(doc.graph, doc.coloring).exhaustive


@pytest.mark.parametrize("name", ["figure1", "figure2", "galvin_g0_2"])
def test_dot_golden(name):
    assert export_dot(load_golden(name)) == (GOLDEN / f"{name}.dot").read_text()


def test_dot_shapes(tmp_path, capsys):
    doc = load_golden("figure1")
    dot = export_dot(doc)
    colors = {line.split('color="')[1][:7] for line in dot.splitlines() if "--" in line}
    assert len(colors) == 4
    grid = export_dot(load_golden("figure2"))
    assert grid.count("shape=point") == load_golden("figure2").graph.num_edges
    path = tmp_path / "g0.json"
    main(["build", "galvin_g0", "--delta", "4", "--out", str(path)])
    assert main(["export", str(path)]) == 0
    assert capsys.readouterr().out.count(" -- ") == 1 + 16 * 4
