import json
from itertools import combinations

from sqroot import Graph, complete_graph, cycle_graph, path_graph
from sqroot.cli import main
from sqroot.formats import dump_json, format_edge_list, read_graph


def write_graph_file(path, g):
    path.write_text(format_edge_list(g))
    return str(path)


def k5_file(tmp_path):
    return write_graph_file(tmp_path / "k5.graph", complete_graph([f"v{i}" for i in range(5)]))


def no_instance_file(tmp_path):
    elems = ["1", "2", "3", "4"]
    data = {"ground_set": elems, "collection": [list(c) for c in combinations(elems, 3)]}
    path = tmp_path / "no.json"
    dump_json(path, data)
    return str(path)


# -- square ------------------------------------------------------------------------

def test_square_c5_gives_k5(tmp_path):
    labels = [f"v{i}" for i in range(5)]
    src = write_graph_file(tmp_path / "c5.graph", cycle_graph(labels))
    out = tmp_path / "sq.graph"
    assert main(["square", src, str(out)]) == 0
    assert read_graph(out) == complete_graph(labels)


def test_square_edgeless_is_identity(tmp_path):
    g = Graph(["a", "b", "c"])
    src = write_graph_file(tmp_path / "e.graph", g)
    out = tmp_path / "sq.graph"
    assert main(["square", src, str(out)]) == 0
    assert out.read_text() == format_edge_list(g)


def test_square_reports_parse_error_with_line(tmp_path, capsys):
    src = tmp_path / "bad.graph"
    src.write_text("p 2 1\nv a\nv b\ne a\n")
    assert main(["square", str(src), str(tmp_path / "out.graph")]) == 2
    assert "line 4" in capsys.readouterr().out


# -- reduce ------------------------------------------------------------------------

def test_reduce_full_k3(tmp_path):
    src = write_graph_file(tmp_path / "k3.graph", complete_graph(["x", "y", "w"]))
    out = tmp_path / "gadget.graph"
    report = tmp_path / "report.json"
    assert main(["reduce", "full", src, str(out), "--report", str(report)]) == 0
    gadget = read_graph(out)
    assert gadget.n == 33
    roles = json.loads((tmp_path / "gadget.graph.roles.json").read_text())
    assert set(roles) == set(gadget.vertices)
    assert roles["a:1"] == {"role": "A", "args": [1]}
    rep = json.loads(report.read_text())
    assert rep["schema_version"] == 1
    assert rep["exit_code"] == 0
    assert any(s["name"] == "gadget-size" and s["data"]["n"] == 33 for s in rep["stages"])


def test_reduce_setsplit_graph_no_instance(tmp_path):
    src = no_instance_file(tmp_path)
    out = tmp_path / "gadget.graph"
    assert main(["reduce", "setsplit-graph", src, str(out)]) == 0
    assert read_graph(out).n == 35


def test_reduce_coloring_setsplit_writes_instance(tmp_path):
    src = write_graph_file(tmp_path / "k3.graph", complete_graph(["x", "y", "w"]))
    out = tmp_path / "inst.json"
    assert main(["reduce", "coloring-setsplit", src, str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["ground_set"]) == 6
    assert len(data["collection"]) == 3
    roles = json.loads((tmp_path / "inst.json.roles.json").read_text())
    assert roles["x"]["role"] == "Original"


def test_reduce_rejects_nonplanar_input(tmp_path):
    src = k5_file(tmp_path)
    assert main(["reduce", "coloring-setsplit", src, str(tmp_path / "o.json")]) == 2


# -- solve -------------------------------------------------------------------------

def test_solve_sqroot_k5_yes(tmp_path):
    src = k5_file(tmp_path)
    out = tmp_path / "root.graph"
    assert main(["solve", "sqroot", src, "-o", str(out)]) == 0
    root = read_graph(out)
    assert main(["verify", "square-root", str(out), src]) == 0
    assert root.n == 5


def test_solve_sqroot_p3_no(tmp_path):
    src = write_graph_file(tmp_path / "p3.graph", path_graph(["a", "b", "c"]))
    assert main(["solve", "sqroot", src]) == 10


def test_solve_sqroot_budget_inconclusive(tmp_path):
    src = k5_file(tmp_path)
    assert main(["solve", "sqroot", src, "--budget-nodes", "1"]) == 20


def test_solve_sqroot_writes_transcript(tmp_path):
    src = write_graph_file(tmp_path / "p3.graph", path_graph(["a", "b", "c"]))
    transcript = tmp_path / "search.log"
    assert main(["solve", "sqroot", src, "--transcript", str(transcript)]) == 10
    lines = transcript.read_text().splitlines()
    assert lines[-1] == "exhausted"
    assert any(line.startswith("propagate") for line in lines)


def test_solve_setsplit_yes_and_witness_verifies(tmp_path):
    inst = tmp_path / "inst.json"
    dump_json(inst, {"ground_set": ["a", "b", "c"], "collection": [["a", "b", "c"]]})
    witness = tmp_path / "w.json"
    assert main(["solve", "setsplit", str(inst), "-o", str(witness)]) == 0
    assert main(["verify", "partition", str(inst), str(witness)]) == 0


def test_solve_setsplit_no(tmp_path):
    assert main(["solve", "setsplit", no_instance_file(tmp_path)]) == 10


def test_solve_setsplit_budget_gate_is_inconclusive_not_no(tmp_path):
    inst = tmp_path / "big.json"
    dump_json(
        inst,
        {"ground_set": [f"e{i}" for i in range(6)], "collection": [["e0", "e1", "e2"]]},
    )
    assert main(["solve", "setsplit", str(inst), "--max-ground-set", "5"]) == 20


# -- verify -------------------------------------------------------------------------

def test_verify_square_root_pass(tmp_path):
    labels = [f"v{i}" for i in range(5)]
    root = write_graph_file(tmp_path / "c5.graph", cycle_graph(labels))
    sq = k5_file(tmp_path)
    assert main(["verify", "square-root", root, sq]) == 0


def test_verify_square_root_tampered_names_missing_edge(tmp_path, capsys):
    labels = [f"v{i}" for i in range(5)]
    c5 = cycle_graph(labels)
    tampered = Graph(labels, sorted(c5.edges)[1:])  # drop one root edge
    root = write_graph_file(tmp_path / "t.graph", tampered)
    sq = k5_file(tmp_path)
    assert main(["verify", "square-root", root, sq]) == 1
    out = capsys.readouterr().out
    assert "uncovered" in out


def test_verify_square_root_vertex_mismatch_is_error(tmp_path):
    root = write_graph_file(tmp_path / "a.graph", Graph(["a", "b"], [("a", "b")]))
    sq = write_graph_file(tmp_path / "b.graph", Graph(["a", "c"], [("a", "c")]))
    assert main(["verify", "square-root", root, sq]) == 2


def test_verify_partition_fail(tmp_path):
    inst = tmp_path / "inst.json"
    dump_json(inst, {"ground_set": ["a", "b", "c"], "collection": [["a", "b", "c"]]})
    witness = tmp_path / "w.json"
    dump_json(witness, {"parts": [["a", "b"], ["c"], []]})
    assert main(["verify", "partition", str(inst), str(witness)]) == 1


def test_verify_apex(tmp_path):
    src = k5_file(tmp_path)
    assert main(["verify", "apex", src, "--apex", "v0"]) == 0
    k7 = write_graph_file(tmp_path / "k7.graph", complete_graph([f"v{i}" for i in range(7)]))
    assert main(["verify", "apex", k7, "--apex", "v0"]) == 1
    assert main(["verify", "apex", src, "--apex", "zz"]) == 2


# -- roundtrip ----------------------------------------------------------------------

def test_roundtrip_k3_yes(tmp_path):
    src = write_graph_file(tmp_path / "k3.graph", complete_graph(["x", "y", "w"]))
    report = tmp_path / "report.json"
    root_out = tmp_path / "root.graph"
    code = main(["roundtrip", src, "--report", str(report), "--root-out", str(root_out)])
    assert code == 0
    rep = json.loads(report.read_text())
    names = [s["name"] for s in rep["stages"]]
    assert "apex-check" in names and "partition-agreement" in names
    assert all(s["status"] == "ok" for s in rep["stages"])
    assert read_graph(root_out).n == 33


def test_roundtrip_single_edge_yes(tmp_path):
    src = write_graph_file(tmp_path / "e.graph", Graph(["x", "y"], [("x", "y")]))
    assert main(["roundtrip", src]) == 0


def test_roundtrip_k4_hits_no_branch(tmp_path):
    src = write_graph_file(tmp_path / "k4.graph", complete_graph(["p", "q", "r", "s"]))
    report = tmp_path / "report.json"
    assert main(["roundtrip", src, "--report", str(report)]) == 0
    rep = json.loads(report.read_text())
    stages = {s["name"]: s for s in rep["stages"]}
    assert stages["color-bruteforce"]["data"]["colorable"] is False
    assert stages["solve-root"]["data"]["verdict"] == "no-root"
    assert stages["certify-no-root"]["status"] == "ok"


def test_roundtrip_rejects_nonplanar(tmp_path):
    assert main(["roundtrip", k5_file(tmp_path)]) == 2


# -- export-dot ------------------------------------------------------------------------

def test_export_dot_with_roles(tmp_path):
    src = write_graph_file(tmp_path / "k3.graph", complete_graph(["x", "y", "w"]))
    gadget = tmp_path / "gadget.graph"
    assert main(["reduce", "full", src, str(gadget)]) == 0
    dot = tmp_path / "gadget.dot"
    assert main([
        "export-dot", str(gadget), str(dot),
        "--roles", str(tmp_path / "gadget.graph.roles.json"),
    ]) == 0
    text = dot.read_text()
    assert "shape=diamond" in text  # selectors stand out
    assert "--" in text


def test_export_dot_missing_role_warns(tmp_path, capsys):
    src = write_graph_file(tmp_path / "g.graph", Graph(["a", "b"], [("a", "b")]))
    roles = tmp_path / "roles.json"
    dump_json(roles, {"a": {"role": "Element", "args": ["a"]}})
    dot = tmp_path / "g.dot"
    assert main(["export-dot", str(src), str(dot), "--roles", str(roles)]) == 0
    assert "no role for 'b'" in capsys.readouterr().err
    assert '"b";' in dot.read_text()


def test_export_dot_plain(tmp_path):
    src = write_graph_file(tmp_path / "g.graph", path_graph(["a", "b", "c"]))
    dot = tmp_path / "g.dot"
    assert main(["export-dot", str(src), str(dot)]) == 0
    assert '"a" -- "b";' in dot.read_text()


# -- process-level entry point -----------------------------------------------------

def test_module_entry_point_runs_in_subprocess(tmp_path):
    import subprocess
    import sys

    src = write_graph_file(tmp_path / "c5.graph", cycle_graph([f"v{i}" for i in range(5)]))
    out = tmp_path / "sq.graph"
    done = subprocess.run(
        [sys.executable, "-m", "sqroot.cli", "square", src, str(out)],
        capture_output=True, text=True,
    )
    assert done.returncode == 0, done.stderr
    assert "output_m=10" in done.stdout
    assert read_graph(out) == complete_graph([f"v{i}" for i in range(5)])

    bad = subprocess.run(
        [sys.executable, "-m", "sqroot.cli", "solve", "sqroot",
         str(write_graph_file(tmp_path / "p3.graph", path_graph(["a", "b", "c"])))],
        capture_output=True, text=True,
    )
    assert bad.returncode == 10


def test_reduce_full_optional_instance_out(tmp_path):
    src = write_graph_file(tmp_path / "k3.graph", complete_graph(["x", "y", "w"]))
    inst_out = tmp_path / "inst.json"
    assert main([
        "reduce", "full", src, str(tmp_path / "g.graph"),
        "--instance-out", str(inst_out),
    ]) == 0
    data = json.loads(inst_out.read_text())
    assert len(data["ground_set"]) == 6
