"""Global triangle-equation solvers, the operator L = Q+Q and the maximum
principle checker.

The operator assembly works with dense rational matrices indexed by
vertex; fixtures are desk-sized so exact Gaussian elimination is cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import ratmat
from .connection import (
    DiscreteConnection,
    canonical_connection,
    holonomy_generators,
)
from .errors import (
    InconsistentBoundary,
    NonTrivialHolonomy,
    NonzeroCurvature,
    NotASolution,
    OddValence,
)
from .mesh import (
    BLACK,
    Coloring,
    TriangulatedSurface,
    as_domain,
    bw_face_coloring,
    three_vertex_coloring,
)
from .ratmat import frac


# --- covariant constants ----------------------------------------------------

@dataclass
class CovariantConstantSpace:
    basis: list            # list of dicts vertex -> Fraction
    dimension: int


def q_matrix(conn: DiscreteConnection, tris=None) -> list:
    """Rows = triangle equations, columns = vertices."""
    surf = conn.surface
    tris = sorted(conn.family) if tris is None else sorted(tris)
    out = []
    for t in tris:
        row = [Fraction(0)] * surf.num_vertices
        for v in surf.triangles[t]:
            row[v] = conn.b(t, v)
        out.append(row)
    return out


def covariant_constants(conn: DiscreteConnection) -> CovariantConstantSpace:
    """Solutions of Q psi = 0 on a closed connected zero-curvature surface.

    Seeds are the row vectors invariant under every holonomy generator,
    propagated from the base triangle through the dual spanning tree.
    """
    surf = conn.surface
    if not surf.is_closed:
        raise ValueError("covariant constants are defined on closed surfaces here")
    gens = holonomy_generators(conn)  # raises NonzeroCurvature when curved
    rows = []
    for g in gens:
        rows.append([g[0][0] - 1, g[1][0]])
        rows.append([g[0][1], g[1][1] - 1])
    invariant = ratmat.nullspace(rows) if rows else [[Fraction(1), Fraction(0)],
                                                     [Fraction(0), Fraction(1)]]
    basis = [_propagate_seed(conn, vec) for vec in invariant]
    for psi in basis:
        _assert_solves(conn, psi)
    return CovariantConstantSpace(basis, len(basis))


def _propagate_seed(conn: DiscreteConnection, seedpair) -> dict:
    from .connection import _solve_third, dual_spanning_tree

    surf = conn.surface
    parent, _, _ = dual_spanning_tree(surf)
    t0 = 0
    v0, v1, _ = sorted(surf.triangles[t0])
    values = dict(_solve_third(conn, t0, {v0: frac(seedpair[0]), v1: frac(seedpair[1])}))
    order = sorted(parent, key=lambda t: len_tree_path(parent, t))
    for t in order:
        tv = surf.triangles[t]
        known = {u: values[u] for u in tv if u in values}
        if len(known) == 3:
            continue
        if len(known) != 2:
            raise NonzeroCurvature("propagation lost contact; curvature nonzero?")
        values.update(_solve_third(conn, t, known))
    return values


def len_tree_path(parent, t) -> int:
    k = 0
    while parent[t] is not None:
        t = parent[t]
        k += 1
    return k


def _assert_solves(conn, psi):
    surf = conn.surface
    for t in conn.family:
        if sum(conn.b(t, v) * psi[v] for v in surf.triangles[t]) != 0:
            raise NonzeroCurvature("propagated seed fails a triangle equation")


# --- L = Q+Q and identities --------------------------------------------------

def assemble_L(conn: DiscreteConnection) -> list:
    """Dense matrix of L = Q+Q over the connection's family."""
    q = q_matrix(conn)
    qt = [list(col) for col in zip(*q)]
    return ratmat.mat_mul(qt, q)


def graph_laplacian(surface: TriangulatedSurface) -> list:
    """Positive combinatorial Laplacian Delta = delta d = deg - adjacency of
    the 1-skeleton (the sign convention that makes L = -2 Delta + 3 n_P)."""
    n = surface.num_vertices
    out = ratmat.zeros(n, n)
    for (u, v) in surface.edge_triangles:
        out[u][v] -= 1
        out[v][u] -= 1
        out[u][u] += 1
        out[v][v] += 1
    return out


def valence_potential(surface: TriangulatedSurface, scale=3) -> list:
    n = surface.num_vertices
    out = ratmat.zeros(n, n)
    for v in range(n):
        out[v][v] = frac(scale) * surface.valence(v)
    return out


@dataclass
class LIdentityReport:
    """Outcome of the entrywise operator-identity checks.

    sign_convention records the choice Delta = delta d = deg - adj under
    which L = -2 Delta + 3 n_P holds entrywise.
    """

    l_identity: bool
    bw_exists: bool
    qb_identity: bool | None
    qw_identity: bool | None
    dual_block_identity: bool | None
    sign_convention: str = "Delta = delta d = deg - adjacency (positive)"


def check_L_identity(surface: TriangulatedSurface) -> LIdentityReport:
    """Verify L = -2 Delta + 3 n_P and, when a b/w coloring exists,
    Qb+Qb = -Delta + (3/2) n_P = Qw+Qw plus the dual-graph block identity."""
    if not surface.is_closed:
        raise ValueError("identity checks run on closed surfaces")
    for v in range(surface.num_vertices):
        if surface.valence(v) % 2:
            raise OddValence(f"vertex {v} has odd valence")
    conn = canonical_connection(surface)
    lmat = assemble_L(conn)
    delta = graph_laplacian(surface)
    pot3 = valence_potential(surface)
    nv = surface.num_vertices
    rhs = [[-2 * delta[i][j] + pot3[i][j] for j in range(nv)] for i in range(nv)]
    l_ok = ratmat.mat_eq(lmat, rhs)

    coloring = bw_face_coloring(surface)
    if coloring is None:
        return LIdentityReport(l_ok, False, None, None, None)
    pot32 = valence_potential(surface, Fraction(3, 2))
    half = [[-delta[i][j] + pot32[i][j] for j in range(nv)] for i in range(nv)]
    qb = q_matrix(conn, coloring.black_triangles())
    qw = q_matrix(conn, coloring.white_triangles())
    qb_ok = ratmat.mat_eq(_gram(qb), half)
    qw_ok = ratmat.mat_eq(_gram(qw), half)
    dual_ok = _dual_block_identity(surface, coloring)
    return LIdentityReport(l_ok, True, qb_ok, qw_ok, dual_ok)


def _gram(q):
    qt = [list(col) for col in zip(*q)]
    return ratmat.mat_mul(qt, q)


def _dual_block_identity(surface, coloring) -> bool:
    """Delta_Gamma^2 = L (+) L' for the dual-graph adjacency in the
    (white | black) block ordering."""
    whites = sorted(coloring.white_triangles())
    blacks = sorted(coloring.black_triangles())
    windex = {t: i for i, t in enumerate(whites)}
    bindex = {t: i for i, t in enumerate(blacks)}
    qwb = ratmat.zeros(len(blacks), len(whites))  # white functions -> black
    for e, ts in surface.edge_triangles.items():
        if len(ts) != 2:
            return False
        a, b = ts
        if coloring.face_colors[a] == BLACK:
            a, b = b, a
        qwb[bindex[b]][windex[a]] += 1
    nw, nb = len(whites), len(blacks)
    size = nw + nb
    adj = ratmat.zeros(size, size)
    for bi in range(nb):
        for wi in range(nw):
            adj[wi][nw + bi] = qwb[bi][wi]
            adj[nw + bi][wi] = qwb[bi][wi]
    sq = ratmat.mat_mul(adj, adj)
    qwb_t = [list(col) for col in zip(*qwb)]
    top = ratmat.mat_mul(qwb_t, qwb)      # acts on white functions
    bot = ratmat.mat_mul(qwb, qwb_t)      # acts on black functions
    for i in range(size):
        for j in range(size):
            if i < nw and j < nw:
                want = top[i][j]
            elif i >= nw and j >= nw:
                want = bot[i - nw][j - nw]
            else:
                want = Fraction(0)
            if sq[i][j] != want:
                return False
    return True


def zero_modes(conn: DiscreteConnection) -> list:
    """Exact null space of L = Q+Q as vertex functions."""
    lmat = assemble_L(conn)
    return [dict(enumerate(vec)) for vec in ratmat.nullspace(lmat)]


# --- black-triangle boundary value solver ------------------------------------

@dataclass
class BWSolveResult:
    values: dict                 # particular solution (free unknowns at 0)
    nullspace: list = field(default_factory=list)  # list of dicts on free directions
    unique: bool = True
    free_vertices: tuple = ()


def solve_bw(domain, coloring: Coloring, boundary_values: dict,
             check_holonomy: bool = True) -> BWSolveResult:
    """Solve the black triangle equations on M' with prescribed values.

    Unknowns are the unprescribed vertices of the domain; equations are
    the black triangles of M'.  Underdetermined systems are returned as a
    particular solution plus an exact null-space description.
    """
    dom = as_domain(domain)
    surf = dom.surface
    if check_holonomy and three_vertex_coloring(dom) is None:
        raise NonTrivialHolonomy("domain has no global tri-coloring")
    blacks = sorted(t for t in dom.tris if coloring.face_colors[t] == BLACK)
    verts = sorted(dom.vertices)
    fixed = {v: frac(x) for v, x in boundary_values.items() if v in set(verts)}
    unknowns = [v for v in verts if v not in fixed]
    col = {v: i for i, v in enumerate(unknowns)}
    rows, rhs = [], []
    for t in blacks:
        row = [Fraction(0)] * len(unknowns)
        b = Fraction(0)
        for v in surf.triangles[t]:
            if v in fixed:
                b -= fixed[v]
            else:
                row[col[v]] += 1
        rows.append(row)
        rhs.append(b)
    if not unknowns:
        if any(b != 0 for b in rhs):
            raise InconsistentBoundary("prescribed values violate a black triangle")
        particular, null = [], []
    elif not rows:
        particular = [Fraction(0)] * len(unknowns)
        null = [[Fraction(int(i == j)) for j in range(len(unknowns))]
                for i in range(len(unknowns))]
    else:
        particular, null = ratmat.solve_affine(rows, rhs)
    if particular is None:
        raise InconsistentBoundary("boundary values admit no black-triangle solution")
    values = dict(fixed)
    for v, i in col.items():
        values[v] = particular[i]
    null_dicts = [{v: vec[i] for v, i in col.items()} for vec in null]
    return BWSolveResult(values, null_dicts, not null_dicts, tuple(unknowns))


def determining_vertex_set(domain, coloring: Coloring) -> tuple:
    """Greedy determining set: the non-pivot columns of the black system.

    Prescribing values there makes the solution unique.
    """
    dom = as_domain(domain)
    surf = dom.surface
    blacks = sorted(t for t in dom.tris if coloring.face_colors[t] == BLACK)
    verts = sorted(dom.vertices)
    col = {v: i for i, v in enumerate(verts)}
    rows = []
    for t in blacks:
        row = [Fraction(0)] * len(verts)
        for v in surf.triangles[t]:
            row[col[v]] += 1
        rows.append(row)
    _, pivots = ratmat.rref(rows)
    return tuple(v for v in verts if col[v] not in pivots)


# --- maximum principle --------------------------------------------------------

@dataclass
class MaxPrincipleReport:
    point_hull: bool
    hull_corners: list                    # corners of the hull of all images
    corner_violations: list               # corners not realized on the boundary
    containment_violations: list          # black triangles mapped outside hull(boundary)
    betweenness_failures: list            # internal triangles with no flat pair
    checked_internal: int

    @property
    def ok(self) -> bool:
        return not (self.corner_violations or self.containment_violations
                    or self.betweenness_failures)


def hat_map(domain, psi: dict, face_coloring: Coloring, vertex_coloring: Coloring) -> dict:
    """psi-hat: black triangle -> (psi_a, psi_b) in the covariant plane."""
    dom = as_domain(domain)
    surf = dom.surface
    vc = vertex_coloring.vertex_colors
    out = {}
    for t in sorted(dom.tris):
        if face_coloring.face_colors[t] != BLACK:
            continue
        by_color = {vc[v]: psi[v] for v in surf.triangles[t]}
        out[t] = (by_color[0], by_color[1])
    return out


def max_principle_check(domain, psi: dict,
                        face_coloring: Coloring | None = None,
                        vertex_coloring: Coloring | None = None) -> MaxPrincipleReport:
    """Check that psi-hat lands in the convex hull of the boundary images.

    psi must solve every black triangle equation of the domain
    (NotASolution otherwise).  Reports hull corners not realized by
    boundary triangles, containment failures, and internal triangles whose
    image is not between a neighbor pair on one of the three coordinate
    lines.
    """
    dom = as_domain(domain)
    surf = dom.surface
    if face_coloring is None:
        face_coloring = bw_face_coloring(dom)
        if face_coloring is None:
            raise NonTrivialHolonomy("domain admits no b/w coloring")
    if vertex_coloring is None:
        vertex_coloring = three_vertex_coloring(dom)
        if vertex_coloring is None:
            raise NonTrivialHolonomy("domain admits no tri-coloring")
    psi = {v: frac(x) for v, x in psi.items()}
    blacks = sorted(t for t in dom.tris if face_coloring.face_colors[t] == BLACK)
    for t in blacks:
        if sum(psi[v] for v in surf.triangles[t]) != 0:
            raise NotASolution(f"black triangle {t} sum is nonzero")

    images = hat_map(dom, psi, face_coloring, vertex_coloring)
    pts = list(images.values())
    point_hull = len(set(pts)) == 1

    lower = dom.lower_boundary()
    boundary_pts = {images[t] for t in blacks if t in lower}
    hull_all = convex_hull(pts)
    corners = extreme_points(hull_all)
    if dom.tris == frozenset(range(surf.num_triangles)) and surf.is_closed:
        # closed surface: no boundary; only covariant constants may pass
        corner_violations = [] if point_hull else [c for c in corners]
        return MaxPrincipleReport(point_hull, corners, corner_violations, [], [], 0)

    corner_violations = [c for c in corners if c not in boundary_pts]
    hull_b = convex_hull(sorted(boundary_pts))
    containment_violations = [t for t in blacks if not point_in_hull(images[t], hull_b)]

    betweenness_failures = []
    checked = 0
    vc = vertex_coloring.vertex_colors
    for t in blacks:
        if t in lower:
            continue
        pairs = []
        degenerate = False
        for v in surf.triangles[t]:
            mates = [o for o in surf.vertex_triangles[v]
                     if o != t and o in dom.tris and face_coloring.face_colors[o] == BLACK]
            if len(mates) != 2:
                degenerate = True
                break
            pairs.append((vc[v], mates))
        if degenerate:
            continue
        checked += 1
        if not any(_between_on_line(images, t, mates, color)
                   for color, mates in pairs):
            betweenness_failures.append(t)
    return MaxPrincipleReport(point_hull, corners, corner_violations,
                              containment_violations, betweenness_failures, checked)


def _between_on_line(images, t, mates, color) -> bool:
    """Image of t between the two mate images along the psi_color = const line."""
    p = images[t]
    q1, q2 = images[mates[0]], images[mates[1]]

    def coord(pt, c):
        if c == 0:
            return pt[0]
        if c == 1:
            return pt[1]
        return -pt[0] - pt[1]

    if coord(q1, color) != coord(p, color) or coord(q2, color) != coord(p, color):
        return False
    free = 1 if color == 0 else 0
    a, b, x = coord(q1, free), coord(q2, free), coord(p, free)
    return min(a, b) <= x <= max(a, b)


# --- exact 2D hull helpers -----------------------------------------------------

def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list:
    """Andrew monotone chain over exact rational points; collinear hull
    points are dropped so the result lists the polygon's corners in CCW
    order (degenerate inputs give 1 or 2 points)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points collinear: keep the two extremes
        return [pts[0], pts[-1]]
    return hull


def extreme_points(hull) -> list:
    return list(hull)


def point_in_hull(p, hull) -> bool:
    """Closed containment test against a CCW hull (exact)."""
    if not hull:
        return False
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        if _cross(a, b, p) != 0:
            return False
        return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        if _cross(a, b, p) < 0:
            return False
    return True
