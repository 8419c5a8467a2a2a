import json
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from triholo import connection as C
from triholo import fixtures, io, opalgebra
from triholo.lattice import Window, build_green


def test_mesh_roundtrip(octa):
    text = io.write_mesh(octa)
    back = io.parse_mesh(text)
    assert back.triangles == octa.triangles
    with pytest.raises(ValueError):
        io.parse_mesh("not a mesh\n")
    with pytest.raises(ValueError):
        io.parse_mesh("tri-surface v1\nv 5\nt 0 1 2\n")  # header count mismatch


def test_mesh_comments_and_blanks():
    text = "tri-surface v1\n# a comment\nv 3\n\nt 0 1 2  # inline\n"
    surf = io.parse_mesh(text)
    assert surf.num_triangles == 1


def test_domain_roundtrip(octa):
    from triholo.mesh import SubComplexDomain

    dom = SubComplexDomain(octa, frozenset({0, 2, 5}))
    assert io.parse_domain(io.write_domain(dom), octa).tris == dom.tris


def test_connection_roundtrip(octa):
    coeffs = {(0, octa.triangles[0][1]): Fraction(3, 4),
              (5, octa.triangles[5][2]): Fraction(-2, 7)}
    conn = C.DiscreteConnection(octa, coeffs)
    text = io.write_connection(conn)
    back = io.parse_connection(text, octa)
    assert back.coefficients == conn.coefficients
    # absent entries default to 1 (canonical)
    assert back.b(1, octa.triangles[1][0]) == 1


def test_representation_file():
    text = "R 0 1 0 1 1 0\nR 1 2 1 2 1 3\n"
    mats = io.parse_representation(text)
    assert mats[(0, 1)] == [[0, 1], [1, 0]]
    assert mats[(1, 2)] == [[1, 2], [1, 3]]


def test_boundary_and_lattice_files():
    bv = io.parse_boundary_values("psi 3 5/2\npsi 0 -1\n")
    assert bv == {3: Fraction(5, 2), 0: Fraction(-1)}
    f = io.parse_lattice_function("f 0 0 1\nf 1 0 -1/3\n")
    assert f[(1, 0)] == Fraction(-1, 3)
    g = build_green(Window(0, 3, 0, 3))
    h = io.parse_lattice_function(io.write_lattice_function(g), g.window)
    assert all(h[p] == g[p] for p in g.window.points())


def test_lattice_domain_file():
    dom = io.parse_lattice_domain_points("d b 2 3\nd w 1 2\n")
    assert ("b", (2, 3)) in dom.tris and ("w", (1, 2)) in dom.tris


def test_operator_file():
    text = "op 0 0\nop 1 0\nc 0 0 2\nc 1 0 3/2\n"
    op = io.parse_operator(text)
    assert op.coefficient((0, 0))((5, 5)) == 1
    assert op.coefficient((1, 0))((1, 0)) == Fraction(3, 2)


def test_lattice_csv():
    g = build_green(Window(0, 2, 0, 2))
    csv = io.lattice_csv(g)
    assert csv.splitlines()[0] == "n2\\n1,0,1,2"
    assert ",2," in csv or csv.rstrip().endswith(",2")


# --- CLI ---------------------------------------------------------------------

def run_cli(args, env=None):
    e = dict(os.environ)
    if env:
        e.update(env)
    r = subprocess.run([sys.executable, "-m", "triholo.cli"] + args,
                       capture_output=True, text=True, env=e)
    return r.returncode, r.stdout, r.stderr


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    (d / "octahedron.tri").write_text(io.write_mesh(fixtures.octahedron()))
    (d / "bad.tri").write_text("tri-surface v1\nv 5\nt 0 1 2\nt 0 1 3\nt 0 1 4\n")
    patch = fixtures.hex_patch(3)
    (d / "hex3.tri").write_text(io.write_mesh(patch.surface))
    (d / "c6.cplx").write_text("\n".join(f"s {i} {(i + 1) % 6}" for i in range(6)))
    rng = random.Random(1)
    lop = opalgebra.random_factorizable(rng, "black")
    lines = []
    w = Window(0, 11, 0, 11)
    for name, alpha in opalgebra.SCHRODINGER_SHIFTS.items():
        lines.append(f"op {alpha[0]} {alpha[1]}")
        fn = getattr(lop, name)
        for p in w.points():
            lines.append(f"c {p[0]} {p[1]} {fn(p)}")
    (d / "random.op").write_text("\n".join(lines))
    return d


def test_cli_green_values(fixture_dir):
    rc, out, _ = run_cli(["green", "--window", "-5", "25"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["values"]["1,1"] == "2"
    assert payload["values"]["2,1"] == "-3"


def test_cli_green_csv_and_svg(fixture_dir, tmp_path):
    csv_path = str(tmp_path / "g.csv")
    rc, _, _ = run_cli(["green", "--window", "-3", "8", "--out", csv_path])
    assert rc == 0 and ",2," in open(csv_path).read()
    svg_path = str(tmp_path / "g.svg")
    rc, _, _ = run_cli(["green", "--window", "-3", "8", "--out", svg_path])
    assert rc == 0 and open(svg_path).read().startswith("<svg")


def test_cli_holonomy(fixture_dir):
    rc, out, _ = run_cli(["holonomy", "--mesh", str(fixture_dir / "octahedron.tri")])
    assert rc == 0
    payload = json.loads(out)
    assert payload["group"] == "trivial"
    assert payload["dim"] == 2


def test_cli_fixture_dir_env(fixture_dir):
    rc, out, _ = run_cli(["holonomy", "--mesh", "octahedron.tri"],
                         env={"TRIHOLO_FIXTURES": str(fixture_dir)})
    assert rc == 0
    assert json.loads(out)["group"] == "trivial"


def test_cli_mesh_check_errors(fixture_dir):
    rc, out, _ = run_cli(["mesh-check", "--mesh", str(fixture_dir / "bad.tri")])
    assert rc == 1
    assert json.loads(out)["error"] == "NonManifoldEdge"
    rc, _, _ = run_cli(["mesh-check", "--mesh", "missing.tri"])
    assert rc == 1


def test_cli_usage_error_exit_2():
    rc, _, _ = run_cli(["holonomy"])  # missing required --mesh
    assert rc == 2
    rc, _, _ = run_cli(["frobnicate"])
    assert rc == 2


def test_cli_covariants(fixture_dir):
    rc, out, _ = run_cli(["covariants", "--mesh", str(fixture_dir / "octahedron.tri")])
    assert rc == 0
    payload = json.loads(out)
    assert payload["dimension"] == 2
    assert len(payload["basis"]) == 2


def test_cli_maxprinciple(fixture_dir, tmp_path):
    rc, out, _ = run_cli(["maxprinciple", "--mesh", str(fixture_dir / "hex3.tri"),
                          "--seed", "7"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["ok"] and not payload["containment_violations"]
    svg = str(tmp_path / "mp.svg")
    rc, _, _ = run_cli(["maxprinciple", "--mesh", str(fixture_dir / "hex3.tri"),
                        "--seed", "7", "--out", svg])
    assert rc == 0 and open(svg).read().startswith("<svg")


def test_cli_taylor_cauchy(fixture_dir):
    rc, out, _ = run_cli(["taylor", "--seed", "3", "--order", "4"])
    assert rc == 0 and json.loads(out)["ok"]
    rc, out, _ = run_cli(["cauchy", "--seed", "5"])
    assert rc == 0 and json.loads(out)["exact"]


def test_cli_factorize(fixture_dir, tmp_path):
    rc, out, _ = run_cli(["factorize", "--op", str(fixture_dir / "random.op"),
                          "--window", "0", "11", "0", "11"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["ok"] and len(payload["colors"]["black"]) == 100
    csv = str(tmp_path / "f.csv")
    rc, _, _ = run_cli(["factorize", "--op", str(fixture_dir / "random.op"),
                        "--window", "0", "11", "0", "11", "--mode", "float",
                        "--tol", "1e-12", "--out", csv])
    assert rc == 0
    assert open(csv).read().startswith("n1,n2,color")


def test_cli_qcd(fixture_dir):
    rc, out, _ = run_cli(["qcd-identity", "--q", "2", "--s", "3"])
    assert rc == 0 and json.loads(out)["holds"]
    rc, out, _ = run_cli(["qcd-identity", "--mode", "float", "--c", "1.0",
                          "--d", "1.5", "--tol", "1e-12",
                          "--l", "0.25,0.1,0.4,0.25"])
    assert rc == 0 and json.loads(out)["holds"]
    rc, out, _ = run_cli(["qcd-identity", "--mode", "float", "--c", "1.0",
                          "--d", "1.5", "--tol", "1e-12",
                          "--l", "0.25,0.1,0.1,0.25"])
    assert rc == 1 and json.loads(out)["error"] == "ConditionViolated"
    # the RunConfig invariant: float tolerance required iff float mode
    rc, _, _ = run_cli(["qcd-identity", "--mode", "float", "--c", "1.0",
                        "--d", "1.5", "--l", "0.25,0.1,0.4,0.25"])
    assert rc == 2


def test_cli_tol_requires_float_mode():
    rc, _, _ = run_cli(["green", "--window", "0", "5", "--tol", "1e-9"])
    assert rc == 2


def test_cli_ksimplicial(fixture_dir):
    rc, out, _ = run_cli(["ksimplicial", "--complex", str(fixture_dir / "c6.cplx")])
    assert rc == 0
    payload = json.loads(out)
    assert payload["covariant_dimension"] == 1
    assert payload["kernel_dimension"] == 1


def test_cli_byte_identical_reruns(fixture_dir):
    a = run_cli(["maxprinciple", "--mesh", str(fixture_dir / "hex3.tri"), "--seed", "9"])
    b = run_cli(["maxprinciple", "--mesh", str(fixture_dir / "hex3.tri"), "--seed", "9"])
    assert a == b
    c = run_cli(["taylor", "--seed", "11", "--order", "3"])
    d = run_cli(["taylor", "--seed", "11", "--order", "3"])
    assert c == d


def test_cli_format_flag_stdout():
    rc, out, _ = run_cli(["green", "--window", "-3", "6", "--format", "csv"])
    assert rc == 0 and out.startswith("n2\\n1,")
    rc, out, _ = run_cli(["green", "--window", "-3", "6", "--format", "svg"])
    assert rc == 0 and out.startswith("<svg")


def test_cli_cauchy_domain_file(tmp_path):
    dom_file = tmp_path / "dom.ld"
    lines = []
    for x in range(4, 8):
        for y in range(4, 8):
            lines.append(f"d b {x} {y}")
            lines.append(f"d w {x} {y}")
    dom_file.write_text("\n".join(lines))
    rc, out, _ = run_cli(["cauchy", "--seed", "3", "--window", "0", "12", "0", "12",
                          "--domain", str(dom_file)])
    assert rc == 0 and json.loads(out)["exact"]


def test_cli_holonomy_noncanonical_connection(fixture_dir, tmp_path):
    # a vertex-gauged canonical connection: still flat, not canonical
    octa = fixtures.octahedron()
    lines = []
    for t, tri in enumerate(octa.triangles):
        for local, v in enumerate(tri):
            if v == 0:
                lines.append(f"b {t} {local} 3")
    conn_file = tmp_path / "gauged.conn"
    conn_file.write_text("\n".join(lines) + "\n")
    rc, out, _ = run_cli(["holonomy", "--mesh", str(fixture_dir / "octahedron.tri"),
                          "--conn", str(conn_file)])
    assert rc == 0
    payload = json.loads(out)
    assert payload["zero_curvature"]
    for gen in payload["generators"]:
        assert gen["trace"] == "2" and gen["det"] == "1"  # identity holonomy


def test_cli_maxprinciple_with_psi_file(fixture_dir, tmp_path):
    from triholo import mesh, solver

    patch = fixtures.hex_patch(3)
    fc = mesh.bw_face_coloring(patch.surface)
    free = solver.determining_vertex_set(patch.domain(), fc)
    vc = fixtures.lattice_vertex_coloring(patch)
    cvals = ("2", "-5", "3")
    psi_file = tmp_path / "flat.bv"
    psi_file.write_text("\n".join(f"psi {v} {cvals[vc[v]]}" for v in free))
    rc, out, _ = run_cli(["maxprinciple", "--mesh", str(fixture_dir / "hex3.tri"),
                          "--psi", str(psi_file)])
    assert rc == 0
    payload = json.loads(out)
    assert payload["ok"] and payload["point_hull"]


def test_cli_covariants_with_connection(fixture_dir, tmp_path):
    octa = fixtures.octahedron()
    lines = []
    for t, tri in enumerate(octa.triangles):
        for local, v in enumerate(tri):
            if v in (0, 3):
                lines.append(f"b {t} {local} {5 if v == 0 else '1/2'}")
    conn_file = tmp_path / "gauged2.conn"
    conn_file.write_text("\n".join(lines) + "\n")
    rc, out, _ = run_cli(["covariants", "--mesh", str(fixture_dir / "octahedron.tri"),
                          "--conn", str(conn_file)])
    assert rc == 0
    assert json.loads(out)["dimension"] == 2


def test_cli_invariant_violation_exits_nonzero():
    # an absurd float tolerance makes the identity check report failure
    rc, out, _ = run_cli(["qcd-identity", "--mode", "float", "--c", "1.0",
                          "--d", "1.5", "--tol", "1e-30",
                          "--l", "0.25,0.1,0.4,0.25"])
    assert rc == 1
    assert json.loads(out)["holds"] is False
