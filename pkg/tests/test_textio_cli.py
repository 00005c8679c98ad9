import os
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import numpy as np
import pytest

from momentcut import textio
from momentcut.cli import main
from momentcut.cones import SliceRepData, local_moment_cone
from momentcut.cuts import CutSpec, LabeledPolytope, symplectic_cut
from momentcut.errors import FormatError
from momentcut.lie import build_root_system
from momentcut.oracle import Spectrum, kostant_polytope, schur_horn_sample
from momentcut.pipeline import certify_moment_set
from momentcut.polyhedra import Polyhedron
from momentcut.svg import render_svg

FIX = Path(__file__).parent / "fixtures"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# -- round trips ---------------------------------------------------------------

POLYS = [
    Polyhedron.from_v([(0, 0), (1, 0), (0, 1)]),
    Polyhedron.from_v([(F(1, 3), 0)], [(1, 1)], [(0, 1)], dim=2),
    Polyhedron.from_h(3, [((1, 0, 0), F(-5, 7))], [((0, 1, 1), 2)]),
    Polyhedron.empty(2),
    Polyhedron.universe(1),
]


@pytest.mark.parametrize("p", POLYS)
def test_polyhedron_round_trip(p):
    text = textio.dump_polyhedron(p)
    assert textio.load_polyhedron(text) == p
    assert textio.dump_polyhedron(textio.load_polyhedron(text)) == text


def test_polyhedron_from_h_only_text():
    text = "type: polyhedron\ndim: 1\nhalfspaces: 2\n1 0\n-1 -1\n"
    assert textio.load_polyhedron(text) == Polyhedron.from_v([(0,), (1,)])


def test_labeled_and_cutspec_round_trip():
    m = LabeledPolytope(Polyhedron.from_v([(0, 0), (2, 0), (0, 2), (2, 2)]), {1: 4})
    assert textio.load_labeled(textio.dump_labeled(m)) == m
    c = CutSpec.from_rows(2, [((1, -1), F(1, 2))])
    assert textio.load_cutspec(textio.dump_cutspec(c)) == c


def test_cut_result_round_trip():
    m = LabeledPolytope(Polyhedron.from_v([(0, 0), (1, 0), (0, 1), (1, 1)]))
    r = symplectic_cut(m, CutSpec.from_rows(2, [((-1, 0), F(-1, 2))]))
    back = textio.load_cut_result(textio.dump_cut_result(r))
    assert back.cut == r.cut and back.compact == r.compact
    assert [(f.active_set, f.dim, lat) for f, lat in back.strata] == [(f.active_set, f.dim, lat) for f, lat in r.strata]


def test_slice_and_local_cone_round_trip():
    d = SliceRepData(2, ((1, 0),), ((1,), (F(-2, 3),)), ((1,), (3,)), 2, (1, 1))
    assert textio.load_slice_data(textio.dump_slice_data(d)) == d
    c = local_moment_cone((1, 1), d)
    assert textio.load_local_cone(textio.dump_local_cone(c)) == c


def test_matrix_and_cloud_round_trip():
    m = [(F(1), F(-1, 2)), (F(0), F(3))]
    assert textio.load_matrix(textio.dump_matrix(m)) == m
    cloud = schur_horn_sample(Spectrum((2, 1, 0)), 50, seed=3)
    assert textio.load_cloud(textio.dump_cloud(cloud)) == cloud


def test_certificate_round_trip():
    rs = build_root_system("A2")
    win = Polyhedron.from_v([(-1, -1), (4, -1), (-1, 4), (4, 4)])
    cert = certify_moment_set(rs, Polyhedron.from_v([(0, 0), (3, 0), (0, 1)]), win)
    back = textio.load_certificate(textio.dump_certificate(cert, "A2"))
    assert back == cert
    assert back.witnesses == cert.witnesses and back.chamber_wall.name == "interior"


@pytest.mark.parametrize(
    "text",
    [
        "type: polyhedron\ndim: x\n",
        "type: polyhedron\ndim: 2\nhalfspaces: 2\n1 0 0\n",
        "type: polyhedron\ndim: 2\nvertices: 1\n1/0 2\n",
        "type: matrix\ncols: 2\n",
    ],
)
def test_malformed_documents(text):
    with pytest.raises(FormatError):
        textio.load_polyhedron(text)


# -- CLI -------------------------------------------------------------------------

def test_cli_half_line_cut_matches_fixture(capsys):
    code, out, _ = run(["cut", FIX / "halfline.poly", FIX / "ray.cutspec"], capsys)
    assert code == 0
    assert out == (FIX / "halfline_cut.expected").read_text()


def test_cli_output_file_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert run(["cut", FIX / "halfline.poly", FIX / "ray.cutspec", "-o", path], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes() == (FIX / "halfline_cut.expected").read_bytes()
    r = textio.load_cut_result(a.read_text())
    assert r.cut.polytope == Polyhedron.from_v([(-1,), (0,)])


def test_cli_orbit_hull(capsys):
    code, out, _ = run(["orbit-hull", "A1", "1"], capsys)
    assert code == 0
    assert textio.load_polyhedron(out) == Polyhedron.from_v([(-1,), (1,)])
    code, out, _ = run(["orbit-hull", "A2", "1", "1"], capsys)
    assert textio.load_polyhedron(out) == kostant_polytope(build_root_system("A2"), (1, 1))


def test_cli_rootsys(capsys):
    code, out, _ = run(["rootsys", "G2"], capsys)
    assert code == 0
    assert "positive-roots: 6" in out and "weyl-order: 12" in out


def test_cli_schur_horn_report(capsys, tmp_path):
    cloud_file = tmp_path / "c.cloud"
    code, out, _ = run(["schur-horn", "2", "1", "0", "--count", "10000", "--seed", "7", "-o", cloud_file], capsys)
    assert code == 0
    assert "contained: 10000/10000" in out.splitlines()
    cloud = textio.load_cloud(cloud_file.read_text())
    assert cloud.count == 10000 and cloud.seed == 7
    assert cloud == schur_horn_sample(Spectrum((2, 1, 0)), 10000, seed=7)


def test_cli_schur_horn_bad_count(capsys):
    assert run(["schur-horn", "2", "1", "0", "--count", "0"], capsys)[0] == 2


def test_cli_project_local_cone_principal_wall(capsys):
    code, out, _ = run(["project", FIX / "square.poly", FIX / "first_coord.matrix"], capsys)
    assert code == 0 and textio.load_polyhedron(out) == Polyhedron.from_v([(0,), (1,)])
    code, out, _ = run(["local-cone", FIX / "quadrant.slice"], capsys)
    c = textio.load_local_cone(out)
    assert code == 0 and c.polyhedron == Polyhedron.from_v([(0, 0)], [(1, 0), (0, 1)])
    code, out, _ = run(["principal-wall", "A2", FIX / "square.poly"], capsys)
    assert (code, out) == (0, "interior\n")


def test_cli_certify(tmp_path, capsys):
    win = tmp_path / "w.poly"
    win.write_text(textio.dump_polyhedron(Polyhedron.from_v([(-1, -1), (3, -1), (-1, 3), (3, 3)])))
    code, out, _ = run(["certify", "A2", FIX / "square.poly", "--window", win], capsys)
    assert code == 0
    cert = textio.load_certificate(out)
    assert cert.assembled == textio.load_polyhedron((FIX / "square.poly").read_text())
    assert run(["certify", "A2", FIX / "square.poly"], capsys)[0] == 2


def test_cli_exit_codes(capsys):
    code, _, err = run(["cut", FIX / "square.poly", FIX / "vertex_cut.cutspec"], capsys)
    assert code == 3 and "NonGenericCutError" in err
    assert run(["orbit-hull", "A2", "-1", "1"], capsys)[0] == 3
    assert run(["rootsys", "E8"], capsys)[0] == 3
    assert run(["cut", FIX / "missing.poly", FIX / "ray.cutspec"], capsys)[0] == 2
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["rootsys", "A2", "--bogus"], capsys)[0] == 2
    assert run(["orbit-hull", "A2", "1"], capsys)[0] == 2
    assert run(["orbit-hull", "A2", "x", "1"], capsys)[0] == 2


def test_cli_render_svg(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for path in (a, b):
        assert run(["render-svg", FIX / "square.poly", FIX / "halfline.poly", "-o", path], capsys)[0] == 2
        assert run(["render-svg", FIX / "square.poly", "-o", path], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("<svg")
    assert run(["render-svg", FIX / "cube.poly", "-o", a], capsys)[0] == 2
    assert run(["render-svg", FIX / "square.poly"], capsys)[0] == 2


def test_render_svg_unbounded_is_clipped():
    svg = render_svg([Polyhedron.from_v([(0, 0)], [(1, 0), (0, 1)])])
    assert "<polygon" in svg and svg == render_svg([Polyhedron.from_v([(0, 0)], [(1, 0), (0, 1)])])


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "momentcut", "orbit-hull", "A1", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and "vertices: 2" in r.stdout
