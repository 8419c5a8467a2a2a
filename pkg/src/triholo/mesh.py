"""Triangulated surfaces: stars, thick paths, colorings and loop characters.

A surface is stored purely combinatorially: a dense list of vertex indices
and a list of vertex triples.  Construction validates the manifold
property (every edge in one or two triangles) and builds, for every
vertex, the cyclically ordered star

    T_1, ..., T_n   with rim  P_1, ..., P_n,   T_i = <P, P_i, P_{i+1}>,

which is the indexing contract the holonomy formulas rely on.  Interior
vertices have a closed star cycle; boundary vertices an open path (with
n + 1 rim vertices for n triangles).

All structures are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BrokenStar, DegenerateTriangle, NonManifoldEdge, NotALoop

BLACK, WHITE = 0, 1
COLOR_A, COLOR_B, COLOR_C = 0, 1, 2

Edge = tuple[int, int]
Triple = tuple[int, int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Star:
    """Cyclic (or open) fan of triangles around a vertex.

    For a closed star, ``triangles[i]`` is the triangle spanned by the
    center, ``rim[i]`` and ``rim[(i + 1) % n]``.  For an open star the rim
    has one more entry than the triangle list.
    """

    center: int
    triangles: tuple[int, ...]
    rim: tuple[int, ...]
    closed: bool

    @property
    def valence(self) -> int:
        return len(self.triangles)

    def rim_after(self, i: int) -> int:
        return self.rim[(i + 1) % len(self.rim)] if self.closed else self.rim[i + 1]


class TriangulatedSurface:
    """Immutable triangulated 2-manifold, possibly with boundary."""

    def __init__(self, triples: Sequence[Sequence[int]]):
        if not triples:
            raise DegenerateTriangle("surface needs at least one triangle")
        self.triangles: tuple[Triple, ...] = tuple(tuple(t) for t in triples)
        seen: set[frozenset[int]] = set()
        for idx, t in enumerate(self.triangles):
            if len(t) != 3 or any(v < 0 for v in t):
                raise DegenerateTriangle(f"triangle {idx} is not a vertex triple: {t}")
            if len(set(t)) != 3:
                raise DegenerateTriangle(f"triangle {idx} has repeated vertices: {t}")
            key = frozenset(t)
            if key in seen:
                raise DegenerateTriangle(f"duplicate triangle {tuple(sorted(t))}")
            seen.add(key)
        used = sorted({v for t in self.triangles for v in t})
        if used != list(range(len(used))):
            raise DegenerateTriangle("vertex indices must be dense 0..V-1")
        self.num_vertices = len(used)

        self.edge_triangles: dict[Edge, tuple[int, ...]] = {}
        acc: dict[Edge, list[int]] = {}
        for idx, (a, b, c) in enumerate(self.triangles):
            for e in (_edge(a, b), _edge(b, c), _edge(a, c)):
                acc.setdefault(e, []).append(idx)
        for e, tris in acc.items():
            if len(tris) > 2:
                raise NonManifoldEdge(f"edge {e} lies in {len(tris)} triangles")
            self.edge_triangles[e] = tuple(tris)
        self.boundary_edges = frozenset(e for e, ts in self.edge_triangles.items() if len(ts) == 1)

        self.vertex_triangles: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(i for i, t in enumerate(self.triangles) if v in t))
            for v in range(self.num_vertices)
        )
        self.stars: tuple[Star, ...] = tuple(self._build_star(v) for v in range(self.num_vertices))

    # -- construction helpers ------------------------------------------

    def _rim_pair(self, tri: int, center: int) -> tuple[int, int]:
        """Rim vertices of `tri` seen from `center`, in stored orientation."""
        t = self.triangles[tri]
        i = t.index(center)
        return t[(i + 1) % 3], t[(i + 2) % 3]

    def _build_star(self, v: int) -> Star:
        incident = self.vertex_triangles[v]
        if not incident:
            raise BrokenStar(f"vertex {v} has no incident triangle")
        # Adjacency of incident triangles through edges that contain v.
        spoke_tris: dict[int, list[int]] = {}
        for ti in incident:
            for r in self._rim_pair(ti, v):
                spoke_tris.setdefault(r, []).append(ti)
        boundary_spokes = [r for r, ts in spoke_tris.items() if len(ts) == 1]
        closed = not boundary_spokes
        if closed:
            start = incident[0]
            first_rim = self._rim_pair(start, v)[0]
        else:
            if len(boundary_spokes) != 2:
                raise BrokenStar(f"star of vertex {v} is not a single fan")
            ends = sorted(spoke_tris[r][0] for r in boundary_spokes)
            start = ends[0]
            pair = self._rim_pair(start, v)
            first_rim = pair[0] if len(spoke_tris[pair[0]]) == 1 else pair[1]
        order = [start]
        rim = [first_rim]
        cur, prev_rim = start, first_rim
        while True:
            pair = self._rim_pair(cur, v)
            nxt_rim = pair[1] if pair[0] == prev_rim else pair[0]
            rim.append(nxt_rim)
            candidates = [t for t in spoke_tris[nxt_rim] if t != cur]
            if not candidates:
                break
            cur = candidates[0]
            if cur == start:
                break
            order.append(cur)
            prev_rim = nxt_rim
        if len(order) != len(incident):
            raise BrokenStar(f"star of vertex {v} is not a single fan")
        if closed:
            if rim[-1] != rim[0]:
                raise BrokenStar(f"star of vertex {v} does not close up")
            rim.pop()
        return Star(v, tuple(order), tuple(rim), closed)

    # -- basic queries ---------------------------------------------------

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)

    @property
    def num_edges(self) -> int:
        return len(self.edge_triangles)

    @property
    def is_closed(self) -> bool:
        return not self.boundary_edges

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_triangles

    def valence(self, v: int) -> int:
        return len(self.vertex_triangles[v])

    def is_interior_vertex(self, v: int) -> bool:
        return self.stars[v].closed

    def shared_edge(self, t1: int, t2: int) -> Edge | None:
        common = set(self.triangles[t1]) & set(self.triangles[t2])
        if len(common) != 2:
            return None
        e = _edge(*common)
        return e if t2 in self.edge_triangles[e] else None

    def other_triangle(self, edge: Edge, tri: int) -> int | None:
        ts = self.edge_triangles[edge]
        if len(ts) == 1:
            return None
        return ts[0] if ts[1] == tri else ts[1]

    def opposite_vertex(self, tri: int, edge: Edge) -> int:
        (v,) = set(self.triangles[tri]) - set(edge)
        return v

    def orientation_sign(self, t1: int, t2: int) -> int:
        """+1 if the stored orientations of two edge-adjacent triangles are
        coherent (the shared edge is traversed in opposite directions), -1
        otherwise.  Products over loops are independent of the stored
        per-triangle orientations."""
        e = self.shared_edge(t1, t2)
        if e is None:
            raise ValueError(f"triangles {t1},{t2} are not edge-adjacent")

        def direction(tri: int) -> int:
            t = self.triangles[tri]
            i = t.index(e[0])
            return 1 if t[(i + 1) % 3] == e[1] else -1

        return -direction(t1) * direction(t2)


def build_surface(triples: Iterable[Sequence[int]]) -> TriangulatedSurface:
    """Build and validate a surface from vertex triples.

    Raises NonManifoldEdge, BrokenStar or DegenerateTriangle when the
    input is not a valid (possibly bounded) triangulated 2-manifold.
    """
    return TriangulatedSurface(list(triples))


@dataclass(frozen=True)
class ThickPath:
    """Sequence of triangles, consecutive ones sharing exactly one edge.

    A closed path implicitly steps back from the last triangle to the
    first one; the shared edge list then has as many entries as
    triangles.
    """

    surface: TriangulatedSurface
    triangles: tuple[int, ...]
    closed: bool = False
    shared_edges: tuple[Edge, ...] = field(init=False)

    def __post_init__(self):
        tris = self.triangles
        if not tris:
            raise ValueError("empty thick path")
        pairs = list(zip(tris, tris[1:]))
        if self.closed:
            if len(tris) < 2:
                raise NotALoop("a thick loop needs at least two triangles")
            pairs.append((tris[-1], tris[0]))
        edges = []
        for a, b in pairs:
            e = self.surface.shared_edge(a, b)
            if e is None:
                raise ValueError(f"triangles {a},{b} do not share exactly one edge")
            edges.append(e)
        object.__setattr__(self, "shared_edges", tuple(edges))

    def __len__(self) -> int:
        return len(self.triangles)

    def reversed(self) -> "ThickPath":
        if self.closed:
            tris = (self.triangles[0],) + tuple(reversed(self.triangles[1:]))
        else:
            tris = tuple(reversed(self.triangles))
        return ThickPath(self.surface, tris, self.closed)


def star_loop(surface: TriangulatedSurface, v: int) -> ThickPath:
    """The closed thick path walking once around an interior vertex."""
    star = surface.stars[v]
    if not star.closed:
        raise NotALoop(f"vertex {v} lies on the boundary")
    return ThickPath(surface, star.triangles, closed=True)


def concat_loops(a: ThickPath, b: ThickPath) -> ThickPath:
    """Concatenate two loops based at the same triangle."""
    if not (a.closed and b.closed and a.triangles[0] == b.triangles[0]):
        raise NotALoop("loops must be closed and share the base triangle")
    return ThickPath(a.surface, a.triangles + b.triangles, closed=True)


def backtrack_move(path: ThickPath, i: int, neighbor: int) -> ThickPath:
    """Insert the fragment (neighbor, T_i) after position i.

    The elementary homotopy ..., T, T', T, ... <-> ..., T, ...; the result
    is homotopic to `path`.
    """
    t = path.triangles[i]
    if path.surface.shared_edge(t, neighbor) is None:
        raise ValueError(f"triangle {neighbor} is not edge-adjacent to {t}")
    tris = path.triangles[: i + 1] + (neighbor, t) + path.triangles[i + 1:]
    return ThickPath(path.surface, tris, path.closed)


def star_rotation_move(path: ThickPath, i: int, vertex: int) -> ThickPath:
    """Replace the step T_i -> T_{i+1} by the walk the other way around
    `vertex` (which must lie on the shared edge and have a closed star).

    The second elementary homotopy: both walks around a vertex star are
    homotopic when the star is a full cycle.
    """
    surf = path.surface
    m = len(path.triangles)
    j = (i + 1) % m
    if j == 0 and not path.closed:
        raise ValueError("no step after the last triangle of an open path")
    a, b = path.triangles[i], path.triangles[j]
    e = surf.shared_edge(a, b)
    if e is None or vertex not in e:
        raise ValueError(f"vertex {vertex} is not on the shared edge of step {i}")
    star = surf.stars[vertex]
    if not star.closed:
        raise NotALoop(f"vertex {vertex} lies on the boundary")
    cycle = star.triangles
    n = len(cycle)
    pa, pb = cycle.index(a), cycle.index(b)
    if (pa + 1) % n == pb:
        insert = [cycle[(pa - k) % n] for k in range(1, n - 1)]
    elif (pb + 1) % n == pa:
        insert = [cycle[(pa + k) % n] for k in range(1, n - 1)]
    else:
        raise ValueError("triangles are not star-adjacent at this vertex")
    tris = path.triangles[: i + 1] + tuple(insert) + path.triangles[i + 1:]
    return ThickPath(path.surface, tris, path.closed)


@dataclass(frozen=True)
class SubComplexDomain:
    """A finite simplicial subcomplex M' given by a triangle subset."""

    surface: TriangulatedSurface
    tris: frozenset[int]

    def __post_init__(self):
        bad = [t for t in self.tris if not 0 <= t < self.surface.num_triangles]
        if bad:
            raise ValueError(f"triangle indices out of range: {bad}")

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for t in self.tris for v in self.surface.triangles[t])

    def boundary_edges(self) -> frozenset[Edge]:
        """Edges of M' lying in exactly one triangle of M'."""
        count: dict[Edge, int] = {}
        for t in self.tris:
            a, b, c = self.surface.triangles[t]
            for e in (_edge(a, b), _edge(b, c), _edge(a, c)):
                count[e] = count.get(e, 0) + 1
        return frozenset(e for e, k in count.items() if k == 1)

    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.boundary_edges() for v in e)

    def lower_boundary(self) -> frozenset[int]:
        """Triangles of M' touching the boundary of M'."""
        bv = self.boundary_vertices()
        return frozenset(t for t in self.tris if bv & set(self.surface.triangles[t]))

    def upper_boundary(self) -> frozenset[int]:
        """Triangles outside M' touching M'."""
        verts = self.vertices
        return frozenset(
            t for t in range(self.surface.num_triangles)
            if t not in self.tris and verts & set(self.surface.triangles[t])
        )


def whole_domain(surface: TriangulatedSurface) -> SubComplexDomain:
    return SubComplexDomain(surface, frozenset(range(surface.num_triangles)))


@dataclass(frozen=True)
class Coloring:
    """Optional face 2-coloring and/or vertex 3-coloring of a triangle set."""

    face_colors: dict | None = None
    vertex_colors: dict | None = None

    def black_triangles(self) -> frozenset[int]:
        assert self.face_colors is not None
        return frozenset(t for t, c in self.face_colors.items() if c == BLACK)

    def white_triangles(self) -> frozenset[int]:
        assert self.face_colors is not None
        return frozenset(t for t, c in self.face_colors.items() if c == WHITE)


def as_domain(arg) -> SubComplexDomain:
    """Accept a surface (meaning: all of it) or a SubComplexDomain."""
    if isinstance(arg, TriangulatedSurface):
        return whole_domain(arg)
    return arg


def bw_face_coloring(surface_or_domain) -> Coloring | None:
    """2-color triangles so edge-adjacent ones differ; None when impossible.

    Exists iff every thick loop in the domain has even length (iff the
    dual graph is bipartite).  The lowest-index triangle is colored black.
    """
    dom = as_domain(surface_or_domain)
    surf = dom.surface
    tris = sorted(dom.tris)
    colors: dict[int, int] = {}
    for seed in tris:
        if seed in colors:
            continue
        colors[seed] = BLACK
        queue = [seed]
        while queue:
            t = queue.pop()
            for e in _tri_edges(surf, t):
                o = surf.other_triangle(e, t)
                if o is None or o not in dom.tris:
                    continue
                if o not in colors:
                    colors[o] = 1 - colors[t]
                    queue.append(o)
                elif colors[o] == colors[t]:
                    return None
    return Coloring(face_colors=colors)


def _tri_edges(surf: TriangulatedSurface, t: int) -> tuple[Edge, Edge, Edge]:
    a, b, c = surf.triangles[t]
    return (_edge(a, b), _edge(b, c), _edge(a, c))


def three_vertex_coloring(surface_or_domain) -> Coloring | None:
    """3-color vertices so every triangle is tri-chromatic; None when the
    propagation meets a contradiction.

    The lowest-index triangle receives colors (a, b, c) in vertex-index
    order; colors then propagate across shared edges, the third vertex of
    each new triangle taking the remaining color.
    """
    dom = as_domain(surface_or_domain)
    surf = dom.surface
    tris = sorted(dom.tris)
    if not tris:
        return Coloring(vertex_colors={})
    colors: dict[int, int] = {}
    seed = tris[0]
    for color, v in enumerate(sorted(surf.triangles[seed])):
        colors[v] = color
    queue = [seed]
    visited = {seed}
    while queue:
        t = queue.pop()
        tv = set(surf.triangles[t])
        got = {colors[v] for v in tv if v in colors}
        missing = [v for v in tv if v not in colors]
        if len(got) != 3 - len(missing):
            return None  # two vertices of one triangle forced to equal colors
        if len(missing) == 1:
            colors[missing[0]] = ({0, 1, 2} - got).pop()
        elif missing:
            # can only happen for disconnected domains; seed deterministically
            for color, v in zip(sorted({0, 1, 2} - got), sorted(missing)):
                colors[v] = color
        for e in _tri_edges(surf, t):
            o = surf.other_triangle(e, t)
            if o is not None and o in dom.tris and o not in visited:
                visited.add(o)
                queue.append(o)
    for t in tris:
        if len({colors[v] for v in surf.triangles[t]}) != 3:
            return None
    return Coloring(vertex_colors=colors)


def homomorphism_signs(surface: TriangulatedSurface, loop: ThickPath) -> tuple[int, int]:
    """(rho2, rho3) for a closed thick path.

    rho2 is the orientation character (product of coherence signs across
    the shared edges); rho3 = (-1)^m for a loop of m triangles.
    """
    if not loop.closed:
        raise NotALoop("homomorphism signs are defined for closed thick paths")
    tris = loop.triangles
    rho2 = 1
    for a, b in zip(tris, tris[1:] + tris[:1]):
        rho2 *= surface.orientation_sign(a, b)
    rho3 = -1 if len(tris) % 2 else 1
    return rho2, rho3
