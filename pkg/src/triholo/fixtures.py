"""Reference surfaces used across tests, demos and the CLI.

The lattice-backed fixtures (torus quotients, hexagonal patches) carry a
vertex <-> lattice-point dictionary so results can be moved between the
surface machinery and the Z^2 calculus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mesh import SubComplexDomain, TriangulatedSurface, build_surface

Point = tuple[int, int]


def octahedron() -> TriangulatedSurface:
    """Closed surface with 6 vertices (0:+x, 1:-x, 2:+y, 3:-y, 4:+z, 5:-z),
    8 faces, every valence 4."""
    faces = [
        (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
        (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
    ]
    return build_surface(faces)


def single_triangle() -> TriangulatedSurface:
    return build_surface([(0, 1, 2)])


def icosahedron() -> TriangulatedSurface:
    """Closed surface with 12 vertices, every valence 5 (odd)."""
    faces = []
    up = [1 + i for i in range(5)]
    lo = [6 + i for i in range(5)]
    for i in range(5):
        j = (i + 1) % 5
        faces.append((0, up[i], up[j]))
        faces.append((up[i], up[j], lo[i]))
        faces.append((up[j], lo[i], lo[j]))
        faces.append((11, lo[i], lo[j]))
    return build_surface(faces)


@dataclass(frozen=True)
class LatticeSurface:
    """A surface whose vertices are labelled by lattice points."""

    surface: TriangulatedSurface
    point_of: tuple[Point, ...]          # vertex index -> lattice point
    vertex_of: dict                      # lattice point -> vertex index
    black: frozenset[int]                # triangle indices of lattice color b
    white: frozenset[int]
    apex_of: dict                        # triangle index -> ('b'|'w', point)

    def domain(self) -> SubComplexDomain:
        return SubComplexDomain(self.surface, frozenset(range(self.surface.num_triangles)))


def torus_lattice(n: int, shear: int = 0) -> LatticeSurface:
    """Equilateral-lattice torus quotient Z^2 / <(n,0), (shear,n)>.

    Every vertex has valence 6.  n <= 2 is rejected by surface validation
    (duplicate edges).  The optional shear twists the second identification.
    """

    def wrap(p: Point) -> Point:
        x, y = p
        q, y = divmod(y, n)
        x = (x - q * shear) % n
        return (x, y)

    points = [(i, j) for j in range(n) for i in range(n)]
    vertex_of = {p: k for k, p in enumerate(points)}

    def vid(p: Point) -> int:
        return vertex_of[wrap(p)]

    triples = []
    apex_of = {}
    black, white = set(), set()
    for j in range(n):
        for i in range(n):
            t = len(triples)
            triples.append((vid((i, j)), vid((i + 1, j)), vid((i, j + 1))))
            apex_of[t] = ("w", (i, j))
            white.add(t)
            t = len(triples)
            triples.append((vid((i, j)), vid((i - 1, j)), vid((i, j - 1))))
            apex_of[t] = ("b", (i, j))
            black.add(t)
    surface = build_surface(triples)
    return LatticeSurface(surface, tuple(points), vertex_of,
                          frozenset(black), frozenset(white), apex_of)


def hex_distance(p: Point) -> int:
    """Graph distance from the origin on the triangular lattice."""
    a, b = p
    return abs(a) + abs(b) if a * b >= 0 else max(abs(a), abs(b))


def hex_patch(radius: int, center: Point = (0, 0)) -> LatticeSurface:
    """All lattice triangles whose vertices lie within `radius` of `center`.

    The result is a disc; interior vertices have valence 6.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    cx, cy = center

    def inside(p: Point) -> bool:
        return hex_distance((p[0] - cx, p[1] - cy)) <= radius

    tris: list[tuple[str, Point]] = []
    for y in range(cy - radius, cy + radius + 1):
        for x in range(cx - radius, cx + radius + 1):
            w = [(x, y), (x + 1, y), (x, y + 1)]
            if all(inside(p) for p in w):
                tris.append(("w", (x, y)))
            b = [(x, y), (x - 1, y), (x, y - 1)]
            if all(inside(p) for p in b):
                tris.append(("b", (x, y)))
    points = sorted({p for kind, apex in tris for p in _lattice_tri_points(kind, apex)})
    vertex_of = {p: k for k, p in enumerate(points)}
    triples = []
    apex_of = {}
    black, white = set(), set()
    for kind, apex in tris:
        t = len(triples)
        triples.append(tuple(vertex_of[p] for p in _lattice_tri_points(kind, apex)))
        apex_of[t] = (kind, apex)
        (black if kind == "b" else white).add(t)
    surface = build_surface(triples)
    return LatticeSurface(surface, tuple(points), vertex_of,
                          frozenset(black), frozenset(white), apex_of)


def _lattice_tri_points(kind: str, apex: Point) -> tuple[Point, Point, Point]:
    x, y = apex
    if kind == "w":
        return ((x, y), (x + 1, y), (x, y + 1))
    return ((x, y), (x - 1, y), (x, y - 1))


def lattice_vertex_coloring(ls: LatticeSurface) -> dict:
    """The global tri-coloring (x - y) mod 3 transferred to vertex indices."""
    return {v: (p[0] - p[1]) % 3 for v, p in enumerate(ls.point_of)}
