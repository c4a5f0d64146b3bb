import json
import subprocess
import sys
from fractions import Fraction

import pytest

from moebius.cli import main
from moebius.complexes import build_complex
from moebius.cli import emit_complex, emit_metric, emit_space, parse_complex

from conftest import square_exact, star_exact, star_float, tripod_metric


def write_json(path, doc):
    path.write_text(json.dumps(doc) + "\n")
    return str(path)


@pytest.fixture
def star_file(tmp_path):
    return write_json(tmp_path / "star.json", emit_space(star_exact()))


@pytest.fixture
def square_file(tmp_path):
    return write_json(tmp_path / "square.json", emit_space(square_exact()))


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate_ok(capsys, star_file):
    code, doc = run_json(capsys, ["validate", "--input", star_file])
    assert code == 0
    assert doc == {
        "ok": True, "n": 4, "mode": "exact", "domain": "log",
        "polyhedral_exact": True, "labels": ["0", "1", "2", "3"],
    }


def test_validate_bad_space_exits_2(capsys, tmp_path):
    bad = write_json(tmp_path / "bad.json", {
        "schema": "antipodal-space/v1", "mode": "exact", "domain": "rho",
        "matrix": [[None, "2", "1", "1"], ["2", None, "1", "1"],
                   ["1", "1", None, "1"], ["1", "1", "1", None]],
    })
    code = main(["validate", "--input", bad])
    err = capsys.readouterr().err
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "OutOfRange"


def test_schema_mismatch_exits_2(capsys, tmp_path):
    metric = write_json(tmp_path / "m.json", emit_metric(tripod_metric()))
    assert main(["complex", "--input", metric]) == 2
    assert json.loads(capsys.readouterr().err)["error"] == "SchemaMismatch"


def test_validate_reads_stdin(capsys, monkeypatch):
    class FakeIn:
        def read(self):
            return json.dumps(emit_space(star_exact()))
    monkeypatch.setattr(sys, "stdin", FakeIn())
    code, doc = run_json(capsys, ["validate"])
    assert code == 0 and doc["ok"]


def test_complex_round_trip_is_bit_identical(tmp_path, star_file, capsys):
    out1 = tmp_path / "cx1.json"
    out2 = tmp_path / "cx2.json"
    assert main(["complex", "--input", star_file,
                 "--output", str(out1)]) == 0
    assert main(["complex", "--input", star_file,
                 "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert doc["schema"] == "moebius-complex/v1"
    cx = parse_complex(doc)
    assert cx == build_complex(star_exact())
    assert emit_complex(cx) == doc


def test_complex_round_trip_float_mode(tmp_path, capsys):
    sf = write_json(tmp_path / "sf.json", emit_space(star_float()))
    code, doc = run_json(capsys, ["complex", "--input", sf])
    assert code == 0
    cx = parse_complex(doc)
    assert cx == build_complex(star_float())
    assert emit_complex(cx) == doc


def test_rays_listing(capsys, star_file):
    code, doc = run_json(capsys, ["rays", "--input", star_file])
    assert code == 0
    assert doc["n"] == 4
    assert sorted(r["center"] for r in doc["rays"]) == [0, 1, 2, 3]
    tmin = {r["center"]: r["t_min"] for r in doc["rays"]}
    assert tmin[0] == "-1" and tmin[1] == "1"


def test_membership_both_ways(capsys, star_file):
    code, doc = run_json(capsys, ["membership", "--input", star_file,
                                  "--tau=-1,1,1,1"])
    assert code == 0
    assert doc["member"] is True
    assert doc["relation"] == [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
    code, doc = run_json(capsys, ["membership", "--input", star_file,
                                  "--tau", "1,1,1,1"])
    assert code == 0
    assert doc["member"] is False
    assert "relation" not in doc
    assert any(Fraction(x) > 0 for x in doc["discrepancy"])


def test_sphere_and_radius_guard(capsys, star_file):
    code, doc = run_json(capsys, ["sphere", "--input", star_file, "--r", "3"])
    assert code == 0
    assert doc["r"] == "3" and doc["r_tilde"] == "1"
    assert doc["points"][0] == ["3", "-3", "-3", "-3"]
    assert main(["sphere", "--input", star_file, "--r", "1/2"]) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "RadiusTooSmall"


def test_enumeration_guard_exits_4(capsys, star_file, monkeypatch):
    assert main(["complex", "--input", star_file, "--max-n", "3"]) == 4
    capsys.readouterr()
    monkeypatch.setenv("MOEBIUS_MAX_N", "3")
    # the environment guard wins over a generous flag
    assert main(["complex", "--input", star_file, "--max-n", "10"]) == 4
    assert json.loads(capsys.readouterr().err)["error"] == "LimitExceeded"


def test_dot_outputs(capsys, star_file, tmp_path):
    code = main(["complex", "--input", star_file, "--format", "dot"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("digraph complex {")
    assert "rankdir=BT;" in out
    assert '0 [label="0/bounded/(0,1)(0,2)(0,3)(1,2)(1,3)(2,3)"]' in out
    assert "1 -> 0;" in out
    metric = write_json(tmp_path / "m.json", emit_metric(tripod_metric()))
    code = main(["hull", "--input", metric, "--format", "dot"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("digraph span {")
    assert "z0" in out


def test_hull_subcommand(capsys, tmp_path):
    metric = write_json(tmp_path / "m.json", emit_metric(tripod_metric()))
    code, doc = run_json(capsys, ["hull", "--input", metric])
    assert code == 0
    assert doc["schema"] == "tight-span/v1"
    assert doc["f_vector"] == [4, 3]
    assert len(doc["cells"]) == 7


def test_ball_hull_check_subcommand(capsys, star_file):
    code, doc = run_json(capsys, ["ball-hull-check", "--input", star_file,
                                  "--r", "2", "--samples", "10",
                                  "--seed", "3"])
    assert code == 0
    assert doc["ok"] is True
    assert doc["members_checked"] == 10
    assert doc["extremal_failures"] == 0


def test_hyperconvex_subcommand(capsys, tmp_path, star_file):
    balls = write_json(tmp_path / "balls.json", {
        "schema": "balls/v1",
        "centers": [["-1", "1", "1", "1"], ["3", "-3", "-3", "-3"]],
        "radii": ["4/3", "8/3"],
    })
    code, doc = run_json(capsys, ["hyperconvex", "--input", star_file,
                                  "--balls", balls])
    assert code == 0
    dists = [Fraction(v) for v in doc["distances"]]
    assert dists[0] <= Fraction(4, 3) and dists[1] <= Fraction(8, 3)
    tight = write_json(tmp_path / "tight.json", {
        "schema": "balls/v1",
        "centers": [["-1", "1", "1", "1"], ["3", "-3", "-3", "-3"]],
        "radii": ["1", "1"],
    })
    assert main(["hyperconvex", "--input", star_file, "--balls", tight]) == 3
    capsys.readouterr()


def test_delta_subcommand(capsys, square_file, star_file):
    code, doc = run_json(capsys, ["delta", "--input", square_file,
                                  "--samples", "200", "--seed", "0"])
    assert code == 0
    assert doc["delta"] == "1"
    assert doc["delta_float"] == 1.0
    code, doc = run_json(capsys, ["delta", "--input", star_file,
                                  "--samples", "50", "--seed", "0"])
    assert code == 0
    assert doc["delta"] == "0"


def test_visual_check_subcommand(capsys, square_file):
    code, doc = run_json(capsys, ["visual-check", "--input", square_file,
                                  "--r", "5"])
    assert code == 0
    assert doc["exact"] is True
    assert doc["max_deviation"] == 0.0
    assert [p[:2] for p in doc["products"]] == [
        [0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]


def simplex_doc(coords):
    return {"schema": "simplex-point/v1", "mode": "exact",
            "coordinates": coords}


def test_teich_normalize_and_phi(capsys, tmp_path, star_file):
    code, doc = run_json(capsys, ["teich", "normalize",
                                  "--input", star_file])
    assert code == 0
    assert doc["schema"] == "antipodal-space/v1"
    assert doc["domain"] == "rho" and doc["mode"] == "float"
    sp = write_json(tmp_path / "p.json",
                    simplex_doc(["1/4", "1/4", "1/2"]))
    code, doc = run_json(capsys, ["teich", "phi", "--input", sp])
    assert code == 0
    assert doc == simplex_doc(["1/4", "1/4", "1/2"])


def test_teich_dist_and_geodesic(capsys, tmp_path):
    a = write_json(tmp_path / "a.json", simplex_doc(["1/3", "1/3", "1/3"]))
    b = write_json(tmp_path / "b.json", simplex_doc(["1/4", "1/4", "1/2"]))
    code, doc = run_json(capsys, ["teich", "dist", "--input", a,
                                  "--other", b])
    assert code == 0
    assert doc["ratio"] == "2"
    d = doc["d_moeb"]
    assert d == pytest.approx(0.6931471805599453, abs=1e-12)
    mid = tmp_path / "mid.json"
    assert main(["teich", "geodesic", "--input", a, "--other", b,
                 "--t", str(d / 2), "--output", str(mid)]) == 0
    code, doc = run_json(capsys, ["teich", "dist", "--input", a,
                                  "--other", str(mid)])
    assert code == 0
    assert doc["d_moeb"] == pytest.approx(d / 2, abs=1e-9)
    assert main(["teich", "dist", "--input", a, "--other", a]) == 0
    capsys.readouterr()
    assert main(["teich", "geodesic", "--input", a, "--other", a,
                 "--t", "0.5"]) == 3
    capsys.readouterr()


def test_teich_classify_and_symmetries(capsys, tmp_path, star_file):
    p = write_json(tmp_path / "p.json", simplex_doc(["1/6", "2/6", "3/6"]))
    code, doc = run_json(capsys, ["teich", "classify4", "--input", p])
    assert code == 0
    assert doc["region"] == "B1"
    assert len(doc["sides"]) == 2 and doc["sides"][0] >= doc["sides"][1]
    assert doc["triple"] == ["1/6", "1/3", "1/2"]
    code, doc = run_json(capsys, ["teich", "symmetries",
                                  "--input", star_file])
    assert code == 0
    assert doc["order"] == 24
    assert [0, 1, 2, 3] in doc["permutations"]


def test_teich_fingerprint_accepts_both_inputs(capsys, tmp_path, star_file):
    cxfile = tmp_path / "cx.json"
    assert main(["complex", "--input", star_file,
                 "--output", str(cxfile)]) == 0
    code, via_complex = run_json(capsys, ["teich", "fingerprint",
                                          "--input", str(cxfile)])
    assert code == 0
    code, via_space = run_json(capsys, ["teich", "fingerprint",
                                        "--input", star_file])
    assert code == 0
    assert via_complex == via_space


def test_selfcheck_subset(capsys, star_file):
    code, doc = run_json(capsys, ["selfcheck", "--criteria",
                                  "exact-star,symmetry-groups"])
    assert code == 0
    assert doc["ok"] is True
    assert [c["name"] for c in doc["criteria"]] == [
        "exact-star", "symmetry-groups"]
    assert all(c["ok"] for c in doc["criteria"])


def test_console_script_smoke(tmp_path):
    doc = emit_space(star_exact())
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    proc = subprocess.run(
        [sys.executable, "-m", "moebius.cli", "validate",
         "--input", str(path)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
