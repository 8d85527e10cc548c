import io
import json
import subprocess
import sys

import numpy as np
import pytest

import mapforge.cli as cli
from mapforge import (
    cells,
    i_double,
    is_isomorphic,
    parse_flag_text,
    platonic,
    polygon_gluing,
    surface_signature,
    tri_torus,
    write_flag_file,
    write_flag_text,
)
from mapforge.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def cube_file(tmp_path):
    path = tmp_path / "cube.flags"
    write_flag_file(platonic("cube"), str(path))
    return str(path)


@pytest.fixture
def tetra_file(tmp_path):
    path = tmp_path / "tetra.flags"
    write_flag_file(platonic("tetrahedron"), str(path))
    return str(path)


def test_validate_ok(run, cube_file):
    code, out, _ = run("validate", cube_file)
    assert code == 0
    assert out == "ok=true\nrank=2\nflags=48\n"


def test_validate_json(run, cube_file):
    code, out, _ = run("validate", cube_file, "--json")
    assert code == 0
    assert json.loads(out) == {"ok": True, "rank": 2, "flags": 48}


def test_validate_rejects_broken_file(run, tmp_path):
    bad = tmp_path / "bad.flags"
    bad.write_text("rank 2\nflags 4\nr0: 1 0 3 2\nr1: 3 2 1 0\nr2: 0 1 2 3\n")
    code, out, err = run("validate", str(bad))
    assert code == 2
    assert err.startswith("error:")

    ungrammatical = tmp_path / "junk.flags"
    ungrammatical.write_text("not a flag file\n")
    code, _, err = run("validate", str(ungrammatical))
    assert code == 2
    assert "line 1" in err


def test_validate_missing_file(run):
    code, _, err = run("validate", "/no/such/file.flags")
    assert code == 2
    assert "cannot read" in err


def test_info_cube(run, cube_file):
    code, out, _ = run("info", cube_file)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "rank=2"
    assert lines[1] == "flags=48"
    assert lines[2] == "V=8 E=12 F=6 chi=2 surface=o0 T=e,0,12,012"
    assert lines[3] == "vertex_degrees=3:8"
    assert lines[4] == "face_degrees=4:6"


def test_info_genus_two(run, tmp_path):
    path = tmp_path / "g2.flags"
    write_flag_file(polygon_gluing("abABcdCD"), str(path))
    code, out, _ = run("info", str(path))
    assert code == 0
    assert "V=1 E=4 F=1 chi=-2 surface=o2 T=e,1,02,012" in out.splitlines()


def test_info_json(run, cube_file):
    code, out, _ = run("info", cube_file, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["V"] == 8 and data["chi"] == 2
    assert data["surface"] == "o0"
    assert data["T"] == "e,0,12,012"


def test_info_higher_rank(run, tmp_path):
    path = tmp_path / "c4.flags"
    code = main(["gen", "cube-maniplex", "4", "-o", str(path)])
    assert code == 0
    code, out, _ = run("info", str(path))
    assert code == 0
    lines = out.splitlines()
    assert "rank=3" in lines
    assert "flags=384" in lines
    assert "cells0=16" in lines
    assert "T=e,0,123,0123" in lines


def test_info_reads_stdin(run, monkeypatch):
    monkeypatch.setattr(sys, "stdin",
                        io.StringIO(write_flag_text(platonic("cube"))))
    code, out, _ = run("info", "-")
    assert code == 0
    assert "V=8 E=12 F=6" in out


def test_color_found(run, cube_file):
    code, out, _ = run("color", cube_file, "-I", "0")
    assert code == 0
    line = out.strip()
    assert len(line) == 48 and set(line) <= {"0", "1"}


def test_color_absent(run, tetra_file):
    code, out, _ = run("color", tetra_file, "-I", "1")
    assert code == 1
    assert out == "colorable=false\n"


def test_color_json(run, cube_file):
    code, out, _ = run("color", cube_file, "-I", "12", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["colorable"] is True
    assert len(data["assignment"]) == 48


def test_tgroup(run, cube_file):
    code, out, _ = run("tgroup", cube_file)
    assert code == 0
    assert out == "T=e,0,12,012\nsize=4\n"


def test_pso(run, cube_file):
    code, out, _ = run("pso", cube_file, "--kind", "full")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "pseudo_orientable=true"
    arrows = lines[3].removeprefix("arrows=")
    assert len(arrows) == 6 and set(arrows) <= {"+", "-"}

    code, out, _ = run("pso", cube_file, "--kind", "face")
    assert code == 1
    assert "pseudo_orientable=false" in out


def test_dual_pipeline(run, cube_file, tmp_path):
    out_path = tmp_path / "dual.flags"
    assert main(["dual", cube_file, "-o", str(out_path)]) == 0
    octa = tmp_path / "octa.flags"
    assert main(["gen", "octahedron", "-o", str(octa)]) == 0
    code, out, _ = run("iso", str(out_path), str(octa))
    assert code == 0
    assert out.splitlines()[0] == "isomorphic=true"


def test_medial_of_tetrahedron(run, tetra_file, tmp_path):
    med = tmp_path / "med.flags"
    assert main(["medial", tetra_file, "-o", str(med)]) == 0
    octa = tmp_path / "octa.flags"
    assert main(["gen", "octahedron", "-o", str(octa)]) == 0
    assert main(["iso", str(med), str(octa)]) == 0


def test_petrie(run, tetra_file):
    code, out, _ = run("petrie", tetra_file)
    assert code == 0
    system = parse_flag_text(out)
    assert len(cells(system, 2)) == 3
    assert all(f.degree == 4 for f in cells(system, 2))
    assert str(surface_signature(system)) == "n1"


def test_iso_negative(run, cube_file, tetra_file):
    code, out, _ = run("iso", cube_file, tetra_file)
    assert code == 1
    assert out == "isomorphic=false\n"


def test_double_sidecar_stderr(run, cube_file):
    code, out, err = run("double", cube_file, "-I", "1")
    assert code == 0
    assert parse_flag_text(out).flag_count == 96
    lines = err.splitlines()
    assert lines[0] == "split: false"
    assert lines[1].startswith("projection: ")
    assert len(lines[1].split()) == 97


def test_double_split_case(run, cube_file, tmp_path):
    sidecar = tmp_path / "side.txt"
    code, out, _ = run("double", cube_file, "-I", "0",
                       "--sidecar", str(sidecar))
    assert code == 0
    assert parse_flag_text(out).flag_count == 48
    assert sidecar.read_text().splitlines()[0] == "split: true"


def test_sherk(run, tmp_path):
    base = tmp_path / "tri.flags"
    write_flag_file(tri_torus(2, 2), str(base))
    code, out, err = run("sherk", str(base))
    assert code == 0
    assert parse_flag_text(out).flag_count == 96
    assert "split: false" in err


def test_sherk_rejects_bipartite(run, cube_file):
    code, _, err = run("sherk", cube_file)
    assert code == 1
    assert err.startswith("error:")


def test_recognize_double_round_trip(run, tetra_file, tmp_path):
    cover_path = tmp_path / "cover.flags"
    assert main(["double", tetra_file, "-I", "1", "-o", str(cover_path),
                 "--sidecar", str(tmp_path / "s.txt")]) == 0
    code, out, err = run("recognize-double", str(cover_path), "-I", "1")
    assert code == 0
    base = parse_flag_text(out)
    assert is_isomorphic(base, platonic("tetrahedron")) is not None
    assert err.splitlines()[0] == "found: true"
    assert err.splitlines()[1].startswith("deck: ")
    assert err.splitlines()[2].startswith("projection: ")


def test_recognize_double_negative(run, tetra_file):
    code, _, err = run("recognize-double", tetra_file, "-I", "1")
    assert code == 1
    assert "found: false" in err


def test_quotient_round_trip(run, tetra_file, tmp_path):
    cover = i_double(platonic("tetrahedron"), (1,))
    cover_path = tmp_path / "cover.flags"
    write_flag_file(cover.system, str(cover_path))
    swap = np.arange(48) ^ 1
    code, out, err = run("quotient", str(cover_path),
                         "--u", " ".join(str(x) for x in swap))
    assert code == 0
    assert is_isomorphic(parse_flag_text(out),
                         platonic("tetrahedron")) is not None
    assert err.startswith("projection: ")


def test_quotient_u_file(run, tmp_path, tetra_file):
    cover = i_double(platonic("tetrahedron"), (1,))
    cover_path = tmp_path / "cover.flags"
    write_flag_file(cover.system, str(cover_path))
    u_path = tmp_path / "u.txt"
    u_path.write_text(" ".join(str(x ^ 1) for x in range(48)))
    code, out, _ = run("quotient", str(cover_path), "--u-file", str(u_path))
    assert code == 0


def test_quotient_needs_deck(run, cube_file):
    code, _, err = run("quotient", cube_file)
    assert code == 1
    assert "error:" in err

    code, _, err = run("quotient", cube_file, "--u", "0 1 2")
    assert code == 1

    code, _, err = run("quotient", cube_file, "--u", "zero one")
    assert code == 1


def test_sum(run, tetra_file):
    code, out, _ = run("sum", tetra_file, tetra_file, "--flags", "0,0")
    assert code == 0
    joined = parse_flag_text(out)
    assert joined.flag_count == 36

    code, _, err = run("sum", tetra_file, tetra_file, "--flags", "0")
    assert code == 1


def test_sum_degree_mismatch(run, tetra_file, cube_file):
    code, _, err = run("sum", tetra_file, cube_file, "--flags", "0,0")
    assert code == 1
    assert "face degrees differ" in err


def test_surgeries(run, cube_file):
    for verb, flags in (("subdivide", 52), ("double-edge", 52),
                        ("triple-edge", 56)):
        code, out, _ = run(verb, cube_file, "--edge", "0")
        assert code == 0
        assert parse_flag_text(out).flag_count == flags
    code, _, err = run("subdivide", cube_file, "--edge", "99")
    assert code == 1


def test_gen_unknown_name(run):
    code, _, err = run("gen", "moebius")
    assert code == 1
    assert "error:" in err


def test_build_group(run, tmp_path):
    out_path = tmp_path / "built.flags"
    assert main(["build-group", "--group", "e,1", "--surface", "n5",
                 "-o", str(out_path)]) == 0
    code, out, _ = run("info", str(out_path))
    assert code == 0
    assert "surface=n5 T=e,1" in out


def test_build_group_exceptional(run):
    code, _, err = run("build-group", "--group", "e,02", "--surface", "n1")
    assert code == 1
    assert "error:" in err


VERIFY_SPEC = {"generators": ["tetrahedron", "crosscap 2"],
               "surgery_depth": 1, "operations": ["axioms", "tgroup"]}


def test_verify_small_corpus(run, tmp_path):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(VERIFY_SPEC))
    code, out, _ = run("verify", "--corpus", str(spec_path))
    assert code == 0
    lines = out.splitlines()
    assert "axioms pass=4 fail=0" in lines
    assert "tgroup pass=4 fail=0" in lines
    assert lines[-1] == "maps=4 cells=8 failures=0"


def test_verify_operations_flag(run, tmp_path):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({"generators": ["tetrahedron"],
                                     "surgery_depth": 0}))
    code, out, _ = run("verify", "--corpus", str(spec_path),
                       "--operations", "axioms")
    assert code == 0
    assert out.splitlines()[-1] == "maps=1 cells=1 failures=0"

    code, _, err = run("verify", "--corpus", str(spec_path),
                       "--operations", "nonsense")
    assert code == 1


def test_verify_corrupted_corpus_map(run, tmp_path):
    broken = tmp_path / "broken.flags"
    broken.write_text("rank 2\nflags 4\nr0: 1 0 3 2\nr1: 3 2 1 0\nr2: 0 1 2 3\n")
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({"generators": [f"file {broken}"],
                                     "surgery_depth": 0}))
    code, out, _ = run("verify", "--corpus", str(spec_path))
    assert code == 1
    assert out.startswith("FAIL corpus generation")


def test_verify_malformed_corpus_json(run, tmp_path):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text("{oops")
    code, _, err = run("verify", "--corpus", str(spec_path))
    assert code == 2
    assert "error:" in err


def test_verify_seed_precedence(run, tmp_path, monkeypatch):
    captured = []

    def fake_run_verify(spec, workers=None, dump_dir=None):
        captured.append(spec.seed)
        return True

    monkeypatch.setattr(cli, "run_verify", fake_run_verify)
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({"seed": 11, "generators": ["cube"]}))

    assert main(["verify", "--corpus", str(spec_path)]) == 0
    monkeypatch.setenv("MAPFORGE_SEED", "22")
    assert main(["verify", "--corpus", str(spec_path)]) == 0
    assert main(["verify", "--corpus", str(spec_path), "--seed", "33"]) == 0
    assert captured == [11, 22, 33]


def test_script_pipeline():
    gen = subprocess.run(["mapforge", "gen", "cube"],
                         capture_output=True, text=True, check=True)
    dualed = subprocess.run(["mapforge", "dual", "-"], input=gen.stdout,
                            capture_output=True, text=True, check=True)
    info = subprocess.run(["mapforge", "info", "-"], input=dualed.stdout,
                          capture_output=True, text=True, check=True)
    assert "V=6 E=12 F=8 chi=2 surface=o0 T=e,2,01,012" in info.stdout
