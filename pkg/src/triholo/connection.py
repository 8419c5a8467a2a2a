"""Discrete connections: curvature, parallel transport, holonomy groups.

A connection assigns a nonzero rational coefficient b[T, P] to every
triangle-vertex incidence of a family of triangles.  Solutions of the
triangle equation  sum_P b[T, P] psi_P = 0  extend uniquely along thick
paths; going around a loop yields a 2x2 holonomy matrix acting on row
vectors from the right.

Conventions
-----------
* All arithmetic is exact (`fractions.Fraction`); curvature checks are
  exact equalities.
* The solution space at a triangle T = {v0 < v1 < v2} is coordinatized by
  (psi_{v0}, psi_{v1}), the two lowest vertices.  Holonomy matrices of
  loops based at T are written in this basis, which makes loop
  composition strictly multiplicative.
* Local holonomy at a vertex uses the star's own (psi_P, psi_{P_1})
  coordinates and is returned as the pair (k', k'') with step matrix
  [[1, k'], [0, k'']].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import ratmat
from .errors import (
    BoundaryVertex,
    FlatnessViolation,
    NonzeroCurvature,
    NotALoop,
    SeedViolation,
    UnremovableZeroCoefficient,
    ZeroDivisor,
)
from .mesh import ThickPath, TriangulatedSurface
from .ratmat import frac

Mat2 = list


class DiscreteConnection:
    """Coefficients b[T, P] over a triangle family (default: all)."""

    def __init__(self, surface: TriangulatedSurface, coefficients=None, family=None):
        self.surface = surface
        self.family = frozenset(range(surface.num_triangles)) if family is None else frozenset(family)
        self.coefficients: dict[tuple[int, int], Fraction] = {}
        if coefficients:
            for (t, v), val in coefficients.items():
                val = frac(val)
                if val == 0:
                    raise ZeroDivisor(f"coefficient b[{t},{v}] must be nonzero")
                if v not in surface.triangles[t]:
                    raise ValueError(f"vertex {v} is not in triangle {t}")
                self.coefficients[(t, v)] = val
        covered = {v for t in self.family for v in surface.triangles[t]}
        if covered != set(range(surface.num_vertices)):
            raise ValueError("every vertex must meet at least one family triangle")

    def b(self, t: int, v: int) -> Fraction:
        if t not in self.family:
            raise ZeroDivisor(f"triangle {t} is not in the connection family")
        if v not in self.surface.triangles[t]:
            raise ValueError(f"vertex {v} is not in triangle {t}")
        return self.coefficients.get((t, v), Fraction(1))

    @property
    def is_canonical(self) -> bool:
        return all(v == 1 for v in self.coefficients.values())


def canonical_connection(surface: TriangulatedSurface) -> DiscreteConnection:
    """b[T, P] = 1 on all triangles."""
    return DiscreteConnection(surface)


# --- local holonomy -------------------------------------------------------

def local_holonomy(conn: DiscreteConnection, v: int) -> tuple[Fraction, Fraction]:
    """Closed-form curvature pair (k', k'') at an interior vertex.

    With the star T_1..T_n, rim P_1..P_n and P_{n+1} = P_1:

        k'  = sum_{m=0}^{n-1} (-1)^{m+1}
              b[T_{n-m}, P] * prod_{j>n-m} b[T_j, P_j]
              / prod_{j>=n-m} b[T_j, P_{j+1}]
        k'' = (-1)^n prod_j b[T_j, P_j] / prod_j b[T_j, P_{j+1}]

    Equals the step-by-step propagation exactly (`local_holonomy_by_steps`).
    """
    star = conn.surface.stars[v]
    if not star.closed:
        raise BoundaryVertex(f"vertex {v} lies on the boundary")
    n = star.valence
    tris, rim = star.triangles, star.rim

    def b_center(j):  # b[T_j, P], 1-based j
        return conn.b(tris[j - 1], v)

    def b_rim(j):  # b[T_j, P_j]
        return conn.b(tris[j - 1], rim[j - 1])

    def b_next(j):  # b[T_j, P_{j+1}]
        return conn.b(tris[j - 1], rim[j % n])

    kpp = Fraction(1)
    for j in range(1, n + 1):
        kpp *= b_rim(j) / b_next(j)
    if n % 2:
        kpp = -kpp

    kp = Fraction(0)
    for m in range(n):
        num = b_center(n - m)
        den = Fraction(1)
        for j in range(n - m, n + 1):
            den *= b_next(j)
        for j in range(n - m + 1, n + 1):
            num *= b_rim(j)
        term = num / den
        kp += term if (m + 1) % 2 == 0 else -term
    return kp, kpp


def local_holonomy_by_steps(conn: DiscreteConnection, v: int) -> Mat2:
    """Curvature matrix K_P as the ordered product of per-triangle steps."""
    star = conn.surface.stars[v]
    if not star.closed:
        raise BoundaryVertex(f"vertex {v} lies on the boundary")
    n = star.valence
    out = ratmat.identity(2)
    for j in range(n):
        t = star.triangles[j]
        p_j, p_next = star.rim[j], star.rim[(j + 1) % n]
        step = [
            [Fraction(1), -conn.b(t, v) / conn.b(t, p_next)],
            [Fraction(0), -conn.b(t, p_j) / conn.b(t, p_next)],
        ]
        out = ratmat.mat_mul(out, step)
    return out


def has_zero_curvature(conn: DiscreteConnection) -> bool:
    """Exact check k' = 0, k'' = 1 at every interior vertex."""
    for v in range(conn.surface.num_vertices):
        if not conn.surface.stars[v].closed:
            continue
        kp, kpp = local_holonomy(conn, v)
        if kp != 0 or kpp != 1:
            return False
    return True


# --- transport ------------------------------------------------------------

@dataclass
class TransportResult:
    """Values carried along a thick path, one vertex dict per triangle."""

    path: ThickPath
    values: list   # values[i]: dict vertex -> Fraction on triangle i
    final: dict    # solution on the base triangle after a full loop


def _solve_third(conn, t, known: dict) -> dict:
    tv = conn.surface.triangles[t]
    missing = [u for u in tv if u not in known]
    if len(missing) != 1:
        raise ValueError("exactly one unknown vertex expected")
    w = missing[0]
    s = sum(conn.b(t, u) * known[u] for u in tv if u != w)
    out = {u: known[u] for u in tv if u != w}
    out[w] = -s / conn.b(t, w)
    return out


def transport(conn: DiscreteConnection, path: ThickPath, seed: dict) -> TransportResult:
    """Extend a triangle-equation solution along a thick path.

    `seed` maps the three vertices of the first triangle to values
    solving its equation (SeedViolation otherwise).  For closed paths the
    result's `final` holds the transported values back on the base
    triangle.
    """
    surf = conn.surface
    t0 = path.triangles[0]
    tv0 = surf.triangles[t0]
    if set(seed) != set(tv0):
        raise SeedViolation(f"seed must cover the vertices of triangle {t0}")
    seed = {u: frac(x) for u, x in seed.items()}
    if sum(conn.b(t0, u) * seed[u] for u in tv0) != 0:
        raise SeedViolation("seed does not solve the first triangle's equation")
    values = [seed]
    cur = seed
    steps = list(zip(path.triangles, path.triangles[1:]))
    if path.closed:
        steps.append((path.triangles[-1], t0))
    for i, (_, b) in enumerate(steps):
        e = path.shared_edges[i]
        cur = _solve_third(conn, b, {u: cur[u] for u in e})
        if not (path.closed and i == len(steps) - 1):
            values.append(cur)
    return TransportResult(path, values, cur)


def holonomy_matrix(conn: DiscreteConnection, loop: ThickPath) -> Mat2:
    """R_gamma in the canonical (two lowest vertices) basis of the base
    triangle; row vectors act from the left: v -> v . R."""
    if not loop.closed:
        raise NotALoop("holonomy is defined for closed thick paths")
    t0 = loop.triangles[0]
    v0, v1, v2 = sorted(conn.surface.triangles[t0])
    rows = []
    for seedpair in ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))):
        seed = _solve_third(conn, t0, {v0: seedpair[0], v1: seedpair[1]})
        res = transport(conn, loop, seed)
        rows.append([res.final[v0], res.final[v1]])
    return rows


# --- pi_1 generators and classification ------------------------------------

def dual_spanning_tree(surface: TriangulatedSurface):
    """BFS tree of the dual graph from triangle 0.

    Returns (parent, tree_edges, cotree_edges) where edges are unordered
    triangle pairs; each cotree edge induces one pi_1 generator.
    """
    parent: dict[int, int | None] = {0: None}
    order = [0]
    queue = [0]
    tree, cotree = set(), set()
    while queue:
        t = queue.pop(0)
        a, b, c = surface.triangles[t]
        for e in ((a, b), (b, c), (a, c)):
            e = (min(e), max(e))
            o = surface.other_triangle(e, t)
            if o is None:
                continue
            key = frozenset((t, o))
            if o not in parent:
                parent[o] = t
                tree.add(key)
                order.append(o)
                queue.append(o)
            elif key not in tree:
                cotree.add(key)
    if len(parent) != surface.num_triangles:
        raise ValueError("surface is not connected")
    return parent, tree, sorted(tuple(sorted(e)) for e in cotree)


def tree_path(parent: dict, t: int) -> list[int]:
    out = [t]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return list(reversed(out))


def generator_loops(surface: TriangulatedSurface) -> list[ThickPath]:
    """One thick loop per cotree edge of the dual spanning tree, based at
    triangle 0."""
    parent, _, cotree = dual_spanning_tree(surface)
    loops = []
    for a, b in cotree:
        to_a = tree_path(parent, a)
        back = list(reversed(tree_path(parent, b)))[:-1]  # drop the base triangle
        tris = to_a + back
        loops.append(ThickPath(surface, tuple(_dedup(tris)), closed=True))
    return loops


def _dedup(tris: list[int]) -> list[int]:
    out = [tris[0]]
    for t in tris[1:]:
        if t != out[-1]:
            out.append(t)
    return out


S3_IDENTITY = (0, 1, 2)


def permutation_matrix(sigma: tuple[int, int, int]) -> Mat2:
    """Matrix of a color permutation on (psi_a, psi_b), psi_c = -psi_a-psi_b.

    After a loop whose color tracking yields sigma, the transported
    solution satisfies new psi_x = old psi_{sigma(x)}.
    """
    cols = []
    rep = {0: (Fraction(1), Fraction(0)),
           1: (Fraction(0), Fraction(1)),
           2: (Fraction(-1), Fraction(-1))}
    for x in (0, 1):
        cols.append(rep[sigma[x]])
    return [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]


def perm_sign(sigma) -> int:
    s = 1
    for i in range(3):
        for j in range(i + 1, 3):
            if sigma[i] > sigma[j]:
                s = -s
    return s


def color_permutation(surface: TriangulatedSurface, loop: ThickPath) -> tuple[int, int, int]:
    """Track the tri-coloring of the base triangle around a loop.

    The base triangle's sorted vertices get colors (a, b, c); the
    coloring propagates so every triangle stays tri-chromatic.  Returns
    sigma with final_color_value(x) = initial psi_{sigma(x)} semantics.
    """
    if not loop.closed:
        raise NotALoop("color permutation is defined for loops")
    t0 = loop.triangles[0]
    base = sorted(surface.triangles[t0])
    colors = {v: i for i, v in enumerate(base)}
    cur = colors
    steps = list(zip(loop.triangles, loop.triangles[1:]))
    steps.append((loop.triangles[-1], t0))
    for i, (a, b) in enumerate(steps):
        e = loop.shared_edges[i]
        w = surface.opposite_vertex(b, e)
        nxt = {u: cur[u] for u in e}
        nxt[w] = ({0, 1, 2} - set(nxt.values())).pop()
        cur = nxt
    # cur now colors the base triangle again.  The transported solution has
    # value psi_{cur(v)} at vertex v whose seed color was colors[v]:
    # new psi at color colors[v] equals old psi at color cur[v].
    sigma = [0, 0, 0]
    for v in base:
        sigma[colors[v]] = cur[v]
    return tuple(sigma)


GROUP_TAGS = {1: "trivial", 2: "Z2", 3: "Z3", 6: "S3"}


def _close_group(perms: set) -> set:
    group = {S3_IDENTITY} | set(perms)
    changed = True
    while changed:
        changed = False
        for p in list(group):
            for q in list(group):
                comp = tuple(p[q[i]] for i in range(3))
                if comp not in group:
                    group.add(comp)
                    changed = True
    return group


@dataclass(frozen=True)
class HolonomyClassification:
    group: str                      # trivial | Z2 | Z3 | S3
    generators: tuple               # color permutations of the pi_1 generators
    rho1: tuple                     # parity character per generator
    covariant_dimension: int


def classify_holonomy(conn: DiscreteConnection) -> HolonomyClassification:
    """Holonomy group of a zero-curvature canonical connection on a closed
    connected surface, computed as color permutations of pi_1 generators."""
    surf = conn.surface
    if not surf.is_closed:
        raise ValueError("classification requires a closed surface")
    if not conn.is_canonical:
        raise ValueError("classification tracks colors: canonical connection only")
    if not has_zero_curvature(conn):
        raise NonzeroCurvature("connection has nonzero curvature")
    perms = tuple(color_permutation(surf, loop) for loop in generator_loops(surf))
    group = _close_group(set(perms))
    tag = GROUP_TAGS[len(group)]
    dim = {"trivial": 2, "Z2": 1, "Z3": 0, "S3": 0}[tag]
    return HolonomyClassification(tag, perms, tuple(perm_sign(p) for p in perms), dim)


def holonomy_generators(conn: DiscreteConnection) -> list[Mat2]:
    """R_gamma for the pi_1 generators of any zero-curvature connection."""
    if not has_zero_curvature(conn):
        raise NonzeroCurvature("connection has nonzero curvature")
    return [holonomy_matrix(conn, loop) for loop in generator_loops(conn.surface)]


def rho1_of_loop(conn: DiscreteConnection, loop: ThickPath) -> int:
    """Parity of the global holonomy along a loop (canonical connection)."""
    return perm_sign(color_permutation(conn.surface, loop))


# --- Appendix 1: connection from an edge representation --------------------

SWAP = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]


def _complete_edge_matrices(surface, edge_matrices) -> dict:
    out = {}
    for (u, v), m in edge_matrices.items():
        m = [[frac(x) for x in row] for row in m]
        out[(u, v)] = m
    for (u, v), m in list(out.items()):
        if (v, u) in out:
            if not ratmat.mat_eq(ratmat.mat_mul(out[(v, u)], m), ratmat.identity(2)):
                raise FlatnessViolation(f"R[{v},{u}] is not the inverse of R[{u},{v}]")
        else:
            out[(v, u)] = ratmat.inv2(m)
    for e in surface.edge_triangles:
        if e not in out:
            raise FlatnessViolation(f"no matrix given for edge {e}")
    return out


def _check_cocycle(surface, rmat):
    for t in surface.triangles:
        for p, q, r in ((t[0], t[1], t[2]), (t[1], t[2], t[0]), (t[2], t[0], t[1])):
            lhs = rmat[(p, r)]
            rhs = ratmat.mat_mul(rmat[(p, q)], rmat[(q, r)])
            if not ratmat.mat_eq(lhs, rhs):
                raise FlatnessViolation(f"cocycle fails on triangle {t}")


def connection_from_representation(
    surface: TriangulatedSurface,
    edge_matrices: dict,
    seed: int = 0,
    max_retries: int = 32,
) -> DiscreteConnection:
    """Build a zero-curvature connection whose thick-path holonomy realizes
    the flat GL(2) connection given on oriented edges.

    The input must satisfy R[P,P''] = R[P,P'] R[P',P''] on every triangle
    and R[P,P'] = R[P',P]^{-1} (missing reverse edges are completed).  The
    base edge (vertex 0, its lowest neighbor) is gauge-normalized to
    [[0,1],[1,0]]; a seeded pseudorandom gauge at the remaining vertices
    makes all coefficients nonzero, retrying up to `max_retries` times.

    Per triangle with sorted vertices P1 < P2 < P3 the coefficients are
    b[T,P1] = c23, b[T,P2] = c31*d23, b[T,P3] = c12*d21, where c_ij is the
    (2,1) entry and d_ij the determinant of the gauged R[Pi,Pj].
    """
    rmat = _complete_edge_matrices(surface, edge_matrices)
    _check_cocycle(surface, rmat)

    p0 = 0
    p0p = min(v for e in surface.edge_triangles if p0 in e for v in e if v != p0)
    # First gauge: force R[p0, p0p] = SWAP keeping C[p0] = id.
    c_norm = {v: ratmat.identity(2) for v in range(surface.num_vertices)}
    c_norm[p0p] = ratmat.mat_mul(ratmat.inv2(SWAP), rmat[(p0, p0p)])
    rmat = _apply_gauge(surface, rmat, c_norm)

    rng = random.Random(seed)
    for _ in range(max_retries):
        cmat = {}
        for v in range(surface.num_vertices):
            if v in (p0, p0p):
                cmat[v] = ratmat.identity(2)
                continue
            while True:
                m = [[Fraction(rng.randint(-9, 9)) for _ in range(2)] for _ in range(2)]
                if ratmat.det2(m) != 0:
                    break
            cmat[v] = m
        gauged = _apply_gauge(surface, rmat, cmat)
        coeffs = _coefficients_from_matrices(surface, gauged)
        if all(val != 0 for val in coeffs.values()):
            return DiscreteConnection(surface, coeffs)
    raise UnremovableZeroCoefficient(f"no nonzero gauge found in {max_retries} tries")


def _apply_gauge(surface, rmat, cmat) -> dict:
    out = {}
    for (u, v), m in rmat.items():
        out[(u, v)] = ratmat.mat_mul(ratmat.mat_mul(cmat[u], m), ratmat.inv2(cmat[v]))
    return out


def _coefficients_from_matrices(surface, rmat) -> dict:
    coeffs = {}
    for t, tri in enumerate(surface.triangles):
        p1, p2, p3 = sorted(tri)
        c23 = rmat[(p2, p3)][1][0]
        c31 = rmat[(p3, p1)][1][0]
        c12 = rmat[(p1, p2)][1][0]
        d23 = ratmat.det2(rmat[(p2, p3)])
        d21 = ratmat.det2(rmat[(p2, p1)])
        coeffs[(t, p1)] = c23
        coeffs[(t, p2)] = c31 * d23
        coeffs[(t, p3)] = c12 * d21
    # zero coefficients are reported by the caller (retry with another gauge)
    return coeffs


def edge_path_holonomy(rmat: dict, loop_vertices: list[int]) -> Mat2:
    """Product R[v0,v1] ... R[vm,v0] along a closed vertex path."""
    out = ratmat.identity(2)
    m = len(loop_vertices)
    for i in range(m):
        u, v = loop_vertices[i], loop_vertices[(i + 1) % m]
        out = ratmat.mat_mul(out, rmat[(u, v)])
    return out
