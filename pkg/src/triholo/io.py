"""Line-oriented file formats for meshes, domains, connections,
representations, boundary values, lattice functions, operators and
k-complexes.  `#` starts a comment anywhere; blank lines are skipped."""

from __future__ import annotations

from fractions import Fraction

from .lattice import LatticeFunction, Window
from .mesh import SubComplexDomain, TriangulatedSurface, build_surface
from .opalgebra import DifferenceOperator
from .ratmat import frac

MESH_HEADER = "tri-surface v1"


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_mesh(text: str) -> TriangulatedSurface:
    """Mesh file: header line, `v <count>`, then `t i j k` per triangle."""
    lines = list(_lines(text))
    if not lines or lines[0] != MESH_HEADER:
        raise ValueError(f"mesh file must start with {MESH_HEADER!r}")
    vcount = None
    triples = []
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "v":
            vcount = int(parts[1])
        elif parts[0] == "t":
            if len(parts) != 4:
                raise ValueError(f"bad triangle line: {line!r}")
            triples.append(tuple(int(p) for p in parts[1:]))
        else:
            raise ValueError(f"unknown mesh line: {line!r}")
    surf = build_surface(triples)
    if vcount is not None and vcount != surf.num_vertices:
        raise ValueError(f"header says {vcount} vertices, file uses {surf.num_vertices}")
    return surf


def write_mesh(surf: TriangulatedSurface) -> str:
    out = [MESH_HEADER, f"v {surf.num_vertices}"]
    out += [f"t {a} {b} {c}" for a, b, c in surf.triangles]
    return "\n".join(out) + "\n"


def parse_domain(text: str, surface: TriangulatedSurface) -> SubComplexDomain:
    """Domain file: `d <triangle-index>` lines referencing a mesh file."""
    tris = set()
    for line in _lines(text):
        parts = line.split()
        if parts[0] != "d" or len(parts) != 2:
            raise ValueError(f"bad domain line: {line!r}")
        tris.add(int(parts[1]))
    return SubComplexDomain(surface, frozenset(tris))


def write_domain(domain: SubComplexDomain) -> str:
    return "\n".join(f"d {t}" for t in sorted(domain.tris)) + "\n"


def parse_connection(text: str, surface: TriangulatedSurface):
    """Connection file: `b <triangle> <local-vertex 0|1|2> <p/q>`; entries
    absent from the file default to 1 (the canonical connection)."""
    from .connection import DiscreteConnection

    coeffs = {}
    for line in _lines(text):
        parts = line.split()
        if parts[0] != "b" or len(parts) != 4:
            raise ValueError(f"bad connection line: {line!r}")
        t, local = int(parts[1]), int(parts[2])
        if local not in (0, 1, 2):
            raise ValueError(f"local vertex must be 0|1|2: {line!r}")
        v = surface.triangles[t][local]
        coeffs[(t, v)] = frac(parts[3])
    return DiscreteConnection(surface, coeffs)


def write_connection(conn) -> str:
    lines = []
    for (t, v), val in sorted(conn.coefficients.items()):
        local = conn.surface.triangles[t].index(v)
        lines.append(f"b {t} {local} {val}")
    return "\n".join(lines) + "\n" if lines else ""


def parse_representation(text: str) -> dict:
    """Representation file: `R <v1> <v2> <4 rationals row-major>`."""
    out = {}
    for line in _lines(text):
        parts = line.split()
        if parts[0] != "R" or len(parts) != 7:
            raise ValueError(f"bad representation line: {line!r}")
        u, v = int(parts[1]), int(parts[2])
        vals = [frac(p) for p in parts[3:]]
        out[(u, v)] = [[vals[0], vals[1]], [vals[2], vals[3]]]
    return out


def parse_boundary_values(text: str) -> dict:
    """Boundary-value file: `psi <vertex> <rational>`."""
    out = {}
    for line in _lines(text):
        parts = line.split()
        if parts[0] != "psi" or len(parts) != 3:
            raise ValueError(f"bad boundary line: {line!r}")
        out[int(parts[1])] = frac(parts[2])
    return out


def parse_lattice_function(text: str, window: Window | None = None) -> LatticeFunction:
    """Lattice function file: `f <n1> <n2> <rational>`."""
    vals = {}
    for line in _lines(text):
        parts = line.split()
        if parts[0] != "f" or len(parts) != 4:
            raise ValueError(f"bad lattice line: {line!r}")
        vals[(int(parts[1]), int(parts[2]))] = frac(parts[3])
    if window is None:
        if not vals:
            raise ValueError("empty lattice function needs a window")
        xs = [p[0] for p in vals]
        ys = [p[1] for p in vals]
        window = Window(min(xs), max(xs), min(ys), max(ys))
    return LatticeFunction(vals, window)


def write_lattice_function(f: LatticeFunction) -> str:
    pts = f.window.points() if f.window else sorted(f.values)
    return "\n".join(f"f {p[0]} {p[1]} {f[p]}" for p in pts) + "\n"


def parse_lattice_domain_points(text: str):
    """Lattice domain file: `d b|w <n1> <n2>` per triangle."""
    from .lattice import LatticeDomain

    tris = set()
    for line in _lines(text):
        parts = line.split()
        if parts[0] != "d" or len(parts) != 4 or parts[1] not in ("b", "w"):
            raise ValueError(f"bad lattice domain line: {line!r}")
        tris.add((parts[1], (int(parts[2]), int(parts[3]))))
    return LatticeDomain(frozenset(tris))


def parse_operator(text: str) -> DifferenceOperator:
    """Operator file: `op <a1> <a2>` term headers, each followed by
    coefficient grid lines `c <n1> <n2> <value>`; a term with no grid lines
    is the constant 1."""
    terms: dict = {}
    current: dict | None = None
    alpha = None
    for line in _lines(text):
        parts = line.split()
        if parts[0] == "op":
            if alpha is not None:
                terms[alpha] = _grid_coeff(current)
            alpha = (int(parts[1]), int(parts[2]))
            current = {}
        elif parts[0] == "c":
            if current is None:
                raise ValueError("coefficient line before any `op` header")
            current[(int(parts[1]), int(parts[2]))] = frac(parts[3])
        else:
            raise ValueError(f"unknown operator line: {line!r}")
    if alpha is not None:
        terms[alpha] = _grid_coeff(current)
    return DifferenceOperator(terms)


def _grid_coeff(grid: dict):
    if not grid:
        return Fraction(1)
    table = dict(grid)

    def f(n):
        if n not in table:
            raise KeyError(f"operator coefficient missing at {n}")
        return table[n]

    return f


def lattice_csv(f: LatticeFunction) -> str:
    """CSV grid, one row per n2 from high to low (plot orientation)."""
    w = f.window
    rows = ["n2\\n1," + ",".join(str(x) for x in range(w.x0, w.x1 + 1))]
    for y in range(w.y1, w.y0 - 1, -1):
        rows.append(str(y) + "," + ",".join(str(f[(x, y)]) for x in range(w.x0, w.x1 + 1)))
    return "\n".join(rows) + "\n"
