from __future__ import annotations

import json

import pytest

from arclink.cli import main
from conftest import E8_TEXT, SIGMA_237_TEXT

CUSP_TEXT = """
graph cusp333
vertex v0 euler=-3 genus=0
vertex v1 euler=-3 genus=0
vertex v2 euler=-3 genus=0
edge v0 v1
edge v1 v2
edge v2 v0
"""

FIELD_TEXT = "d=5\nbasis=1 1/2+1/2*sqrt\nu=3/2+1/2*sqrt\n"
GROUP_2I_TEXT = "d=5\n1/2 1/2 1/2 1/2\n1/4+1/4*sqrt 1/2 -1/4+1/4*sqrt 0\n"


@pytest.fixture
def graph_file(tmp_path):
    def write(text, name="input.graph"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_analyze_e8(graph_file, capsys):
    code, out = run(capsys, "analyze", graph_file(E8_TEXT), "--bound", "1")
    assert code == 0
    assert "noncyclic quotient (2,3,5)" in out


def test_analyze_sigma237_json(graph_file, capsys):
    path = graph_file(SIGMA_237_TEXT)
    code, out = run(capsys, "analyze", path, "--bound", "6", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["singularity_class"]["kind"] == "general"
    assert len(report["components"]) == 19
    # determinism: byte-identical on a second run
    code2, out2 = run(capsys, "analyze", path, "--bound", "6", "--json")
    assert out2 == out


def test_analyze_cusp_reports_duality(graph_file, capsys):
    code, out = run(capsys, "analyze", graph_file(CUSP_TEXT), "--bound", "2", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["singularity_class"]["b_sequence"] == [3, 3, 3]
    assert report["duality"]["auto_dual"] is True
    assert report["duality"]["mt_equals_tm_star"] is True


def test_analyze_chain_emits_cyclic_labels(graph_file, capsys):
    text = "\n".join(
        ["graph a4"]
        + [f"vertex v{i} euler=-2 genus=0" for i in range(4)]
        + [f"edge v{i} v{i+1}" for i in range(3)]
    )
    code, out = run(capsys, "analyze", graph_file(text), "--bound", "2", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["singularity_class"]["m"] == 5
    labels = report["components"]
    assert len(labels) == 10
    on_curve = [l for l in labels if l["center"] == "on_curve"]
    assert [l["intersection_number"] for l in on_curve] == ["1", "2"]


def test_components_subcommand(graph_file, capsys):
    code, out = run(capsys, "components", graph_file(SIGMA_237_TEXT), "--bound", "6", "--json")
    assert code == 0
    assert len(json.loads(out)["components"]) == 19


def test_cusp_subcommand(capsys):
    code, out = run(capsys, "cusp", "--seq", "3,3,3", "--bound", "2")
    assert code == 0
    assert "((21,8),(-8,-3))" in out
    assert "auto-dual: True" in out


def test_dual_subcommand(capsys):
    code, out = run(capsys, "dual", "--seq", "2,3", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["dual_sequence"] == [4]
    assert report["mt_equals_tm_star"] and report["traces_equal"]


def test_quotient_subcommand_builtin(capsys):
    code, out = run(capsys, "quotient", "--builtin", "2I")
    assert code == 0
    assert "order=120 classes=9" in out and "8 = 8 OK" in out


def test_quotient_subcommand_file(graph_file, capsys):
    path = graph_file(GROUP_2I_TEXT, "2I.grp")
    code, out = run(capsys, "quotient", "--group", path, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["order"] == 120 and report["classes"] == 9
    assert report["mckay"]["family"] == "E8" and report["mckay"]["matches"]


def test_inoue_subcommand(graph_file, capsys):
    path = graph_file(FIELD_TEXT, "golden.field")
    code, out = run(capsys, "inoue", "--field", path, "--bound", "3")
    assert code == 0
    assert "recovered cusp sequence: 3" in out
    assert "FALSIFIED" not in out


def test_dot_export(graph_file, capsys, tmp_path):
    dot = tmp_path / "out.dot"
    code, _ = run(capsys, "analyze", graph_file(E8_TEXT), "--dot", str(dot), "--quiet")
    assert code == 0
    text = dot.read_text()
    assert "e=-2, g=0" in text and "--" in text


def test_input_errors_exit_1(graph_file, capsys):
    assert main(["analyze", "/nonexistent/file.graph"]) == 1
    bad = graph_file("vertex a euler=-2 genus=0\nedge a b\n")
    assert main(["analyze", bad]) == 1
    plus = graph_file("vertex a euler=1 genus=0\n")
    assert main(["analyze", plus]) == 1
    assert main(["cusp", "--seq", "2,2"]) == 1
    assert main(["quotient", "--builtin", "nonsense"]) == 1


def test_quotient_requires_source(capsys):
    assert main(["quotient"]) == 1


def test_arrow_graph_roundtrip(graph_file, capsys):
    text = "graph g\nvertex a euler=-2 genus=1\narrow a\n"
    code, out = run(capsys, "analyze", graph_file(text), "--json")
    # arrows mark cut-open pieces; analyze works on closed graphs only
    assert code == 1 or json.loads(out)["schema"] == 1


def test_check_subcommand_green(capsys):
    code, out = run(capsys, "check")
    assert code == 0
    assert "FALSIFIED" not in out


def test_check_goes_red_under_seeded_mutation(capsys, monkeypatch):
    # Corrupting the duality bridge matrix must falsify the sweep.
    import arclink.cusp as cusp_mod

    monkeypatch.setattr(cusp_mod, "T_MATRIX", cusp_mod.Mat2(-1, -1, 1, 3))
    assert main(["check", "--quiet"]) == 2


def test_vertex_declaration_order_does_not_matter(graph_file, capsys):
    lines = [ln for ln in SIGMA_237_TEXT.strip().splitlines()]
    head, vertices, edges = lines[0], lines[1:5], lines[5:]
    reordered = "\n".join([head] + vertices[::-1] + edges[::-1])
    _, out1 = run(capsys, "analyze", graph_file(SIGMA_237_TEXT, "a.graph"), "--bound", "4", "--json")
    _, out2 = run(capsys, "analyze", graph_file(reordered, "b.graph"), "--bound", "4", "--json")
    assert out1 == out2


GENERAL_TEXT = """
graph twonodes
vertex n1 euler=-2 genus=1
vertex m1 euler=-2 genus=0
vertex n2 euler=-3 genus=0
vertex a euler=-2 genus=0
vertex b euler=-3 genus=0
vertex t euler=-4 genus=0
edge n1 m1
edge m1 n2
edge n2 a
edge n2 b
edge n1 t
"""


def test_analyze_general_graph_with_nodes(graph_file, capsys):
    code, out = run(capsys, "analyze", graph_file(GENERAL_TEXT), "--bound", "2", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["singularity_class"]["kind"] == "general"
    comps = report["components"]
    kinds = {c["kind"] for c in comps}
    assert kinds == {"curve_interior", "node_point", "orbifold_point"}
    node_windings = [c["winding"] for c in comps if c["kind"] == "node_point"]
    assert all(w["type"] == "edge_torus" for w in node_windings)
    orb = [c for c in comps if c["kind"] == "orbifold_point"]
    assert all("intersection_number" in c for c in orb)
