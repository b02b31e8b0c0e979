import io as stdio
import json

import pytest

from systolic_kit import io
from systolic_kit.cli import run
from systolic_kit.errors import InvalidInput
from systolic_kit.gen import hex_hexagon, hex_triangle, random_disc


def call(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def hex3(tmp_path):
    path = tmp_path / "hex3.json"
    io.save_instance(hex_triangle(3), path)
    return str(path)


def test_check_example(hex3):
    code, out, _ = call("check", "--instance", hex3, "--k", "6")
    assert code == 0
    assert "6-systolic: true" in out.splitlines()


def test_check_violation(hex3):
    code, out, _ = call("check", "--instance", hex3, "--k", "7")
    assert code == 1
    assert "7-systolic: false" in out


def test_helly_verify_example(hex3):
    code, out, _ = call("helly", "verify", "--instance", hex3, "--family", "s1,s2,s3", "--max-dim", "2")
    assert code == 1
    assert "witness: none" in out.splitlines()
    assert '"outcome": "embedded-circle"' in out


def test_helly_verify_unknown_member(hex3):
    code, _, err = call("helly", "verify", "--instance", hex3, "--family", "s1,s9")
    assert code == 2 and "s9" in err


def test_gen_example(tmp_path):
    code, out, _ = call("gen", "simplex_with_facets", "--n", "2")
    assert code == 0
    start = out.index("{")
    inst = io.instance_from_json(json.loads(out[start:]))
    assert inst.complex.maximal_simplices == ((0, 1, 2),)
    target = tmp_path / "s2.json"
    code, _, _ = call("gen", "simplex_with_facets", "--n", "2", "-o", str(target))
    assert code == 0 and io.load_instance(target).subcomplexes["f0"] == [1, 2]


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SYSTOLIC_KIT_SEED", "42")
    code, out, _ = call("--json", "gen", "random_disc", "--triangles", "20", "--defect-lo", "-2",
                        "--defect-hi", "0", "--k", "6", "-o", str(tmp_path / "r.json"))
    assert code == 0
    rec = json.loads(out)
    assert rec["command"][-2:] == ["--seed", "42"]
    expected = random_disc(20, interior_defect=(-2, 0), k=6, seed=42)
    assert io.instance_hash(io.load_instance(tmp_path / "r.json")) == io.instance_hash(expected)
    # replaying the echoed command without the environment gives the same instance
    monkeypatch.delenv("SYSTOLIC_KIT_SEED")
    code, out2, _ = call(*rec["command"])
    assert json.loads(out2)["instance_hash"] == rec["instance_hash"]


def test_json_record_shape(hex3):
    code, out, _ = call("--json", "dist", "--instance", hex3, "--u", "0", "--v", "9")
    rec = json.loads(out)
    assert set(rec) == {"command", "instance_hash", "results", "timing"}
    assert rec["results"]["distance"] == 3
    assert rec["instance_hash"] == io.instance_hash(hex_triangle(3))


def test_malformed_instance(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 3, "maximal_simplices": [[0, 1, 7]]}')
    code, _, err = call("check", "--instance", str(bad))
    assert code == 2
    assert "$.maximal_simplices[0][2]" in err
    bad.write_text('{"vertices": 3,\n "maximal_simplices": [[0, 1,]]}')
    code, _, err = call("check", "--instance", str(bad))
    assert code == 2 and "bad.json:2:" in err


def test_unknown_subcommand():
    code, _, _ = call("frobnicate")
    assert code == 2


def test_fill_emits_surface_and_defects(hex3):
    code, out, _ = call("--json", "fill", "--instance", hex3)
    res = json.loads(out)["results"]
    assert code == 0 and res["area"] == 9 and res["flat"]
    assert set(res["surface"]) == {"domain", "assignment"}
    assert sum(res["defects"]) == 6


def test_triangle_digon_sphere_commands(tmp_path):
    path = tmp_path / "h2.json"
    io.save_instance(hex_hexagon(2), path)
    code, out, _ = call("triangle", "--instance", str(path), "--vertices", "0,11,16")
    assert code == 0 and "kind: tripod" in out and "horn_lengths: 2 2 2" in out
    tri = tmp_path / "t3.json"
    io.save_instance(hex_triangle(3), tri)
    code, out, _ = call("triangle", "--instance", str(tri), "--vertices", "0,3,9")
    assert code == 0 and "kind: horned-triangle" in out and "core_area: 9" in out
    code, out, _ = call("digon", "--instance", str(path), "--g0", "0,1,5,6,11", "--g1", "0,4,5,10,11")
    assert code == 0 and "kind: chain" in out
    code, out, _ = call("sphere", "--instance", str(path), "--vertices", "0,2,11,16")
    assert code == 0 and "status: sphere" in out
    code, out, _ = call("sphere", "--instance", str(path), "--vertices", "0,4,14,18")
    assert code == 1 and "status: degenerate" in out


def test_search_counterexample_command(tmp_path):
    code, out, _ = call("helly", "search-counterexample", "--max-side", "2")
    assert code == 1 and "result: none" in out
    target = tmp_path / "ce.json"
    code, out, _ = call("helly", "search-counterexample", "--max-side", "3", "-o", str(target))
    assert code == 0
    inst = io.load_instance(target)
    assert sorted(inst.subcomplexes) == ["s1", "s2", "s3"]


def test_sweep_command_is_deterministic():
    args = ("--json", "helly", "sweep", "--theorem", "A", "--per-instance", "3", "--scale", "small", "--seed", "3")
    a = json.loads(call(*args)[1])["results"]
    b = json.loads(call(*args, "--jobs", "2")[1])["results"]
    assert a == b and a["witness_rate"] == 1.0


@pytest.mark.parametrize("inst", [hex_triangle(3), hex_hexagon(2)])
def test_diagram_coordinates_round_trip(tmp_path, inst):
    src = tmp_path / "in.json"
    plain = type(inst)(inst.complex, inst.subcomplexes, inst.boundary_cycle, None, {})
    io.save_instance(plain, src)
    coords = tmp_path / "c.json"
    assert call("diagram", "--instance", str(src), "--style", "coords", "-o", str(coords))[0] == 0
    back = tmp_path / "back.json"
    assert call("diagram", "--import-coords", str(coords), "-o", str(back))[0] == 0
    again = io.load_instance(back)
    assert again.complex.maximal_simplices == inst.complex.maximal_simplices


def test_diagram_dot_round_trip(hex3):
    code, out, _ = call("diagram", "--instance", hex3, "--style", "dot")
    assert code == 0
    n, edges = io.edges_from_dot(out)
    X = hex_triangle(3).complex
    assert n == X.vertex_count and edges == sorted(X.edges)


def test_diagram_coords_refused_for_curved_disc(tmp_path):
    from systolic_kit.gen import seven_systolic_disc

    path = tmp_path / "w.json"
    io.save_instance(seven_systolic_disc(7, 1), path)
    code, out, _ = call("diagram", "--instance", str(path), "--style", "coords")
    assert code == 1 and "coordinates: none" in out


def test_instance_json_round_trip():
    inst = hex_triangle(3)
    again = io.instance_from_json(json.loads(json.dumps(io.instance_to_json(inst))))
    assert io.instance_to_json(again) == io.instance_to_json(inst)


@pytest.mark.parametrize(
    "obj,where",
    [
        ([], "$"),
        ({"maximal_simplices": []}, "vertices"),
        ({"vertices": "3", "maximal_simplices": []}, "$.vertices"),
        ({"vertices": 3, "maximal_simplices": [[0, 0]]}, "$.maximal_simplices[0]"),
        ({"vertices": 3, "maximal_simplices": [[0, 1]], "certificates": {"simply_connected": "torus"}},
         "$.certificates"),
        ({"vertices": 2, "maximal_simplices": [[0, 1]], "subcomplexes": {"a": [5]}}, "$.subcomplexes.a[0]"),
        ({"vertices": 2, "maximal_simplices": [[0, 1]], "coordinates": [[0, 0]]}, "$.coordinates"),
    ],
)
def test_instance_diagnostics(obj, where):
    with pytest.raises(InvalidInput, match=__import__("re").escape(where)):
        io.instance_from_json(obj)
