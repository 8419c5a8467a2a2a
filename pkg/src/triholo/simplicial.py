"""Connections on the k-simplices of a simplicial complex.

The canonical connection (all coefficients 1) transports solutions of
sum_{P in sigma} psi_P = 0 along k-thick paths: crossing a (k-1)-facet
moves the dropped vertex's value onto the new vertex, so holonomy is a
permutation of the k+1 value slots of the base simplex.  With trivial
local holonomy the group embeds in S_{k+1}; its orbit count q on the
slots gives covariant constants of dimension q - 1, which coincide with
the zero modes of L = Q+ Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import ratmat
from .errors import LocalHolonomyNontrivial, NotAManifold


class SimplicialComplexK:
    """Pure k-dimensional complex given by its top simplices."""

    def __init__(self, simplices):
        tops = [tuple(sorted(s)) for s in simplices]
        if not tops:
            raise ValueError("need at least one simplex")
        arity = len(tops[0])
        if arity < 2:
            raise ValueError("k must be >= 1")
        for s in tops:
            if len(s) != arity:
                raise ValueError("all simplices must have the same dimension")
            if len(set(s)) != arity:
                raise ValueError(f"repeated vertex in simplex {s}")
        if len(set(tops)) != len(tops):
            raise ValueError("duplicate simplices")
        self.simplices: tuple = tuple(tops)
        self.k = arity - 1
        used = sorted({v for s in tops for v in s})
        if used != list(range(len(used))):
            raise ValueError("vertex indices must be dense 0..V-1")
        self.num_vertices = len(used)
        self.facet_simplices: dict = {}
        for i, s in enumerate(tops):
            for facet in combinations(s, self.k):
                self.facet_simplices.setdefault(facet, []).append(i)

    @property
    def num_simplices(self) -> int:
        return len(self.simplices)

    def vertex_valence(self, v: int) -> int:
        return sum(1 for s in self.simplices if v in s)

    def edge_multiplicity(self, u: int, v: int) -> int:
        return sum(1 for s in self.simplices if u in s and v in s)

    def corner_valences(self):
        """Valences of all (k-2)-simplices (number of k-simplices containing
        each); for k = 1 there are none."""
        if self.k < 2:
            return {}
        out: dict = {}
        for s in self.simplices:
            for c in combinations(s, self.k - 1):
                out[c] = out.get(c, 0) + 1
        return out

    def is_closed_manifold(self) -> bool:
        return all(len(v) == 2 for v in self.facet_simplices.values())

    def adjacency(self):
        """Dual adjacency via shared (k-1)-facets."""
        nbrs: dict = {i: set() for i in range(self.num_simplices)}
        for members in self.facet_simplices.values():
            for a in members:
                for b in members:
                    if a != b:
                        nbrs[a].add(b)
        return nbrs


def canonical_local_holonomy_ok(x: SimplicialComplexK, manifold_mode: bool = True) -> bool:
    """Trivial local holonomy of the canonical connection: always for k = 1;
    for k >= 2, a triangulated k-manifold with every (k-2)-simplex of even
    valence."""
    if x.k == 1:
        return True
    if manifold_mode:
        for facet, members in x.facet_simplices.items():
            if len(members) > 2:
                raise NotAManifold(f"facet {facet} lies in {len(members)} simplices")
        if not x.is_closed_manifold():
            raise NotAManifold("complex has boundary facets")
    return all(v % 2 == 0 for v in x.corner_valences().values())


def _dual_tree(x: SimplicialComplexK, base: int):
    nbrs = x.adjacency()
    parent = {base: None}
    queue = [base]
    cotree = set()
    while queue:
        s = queue.pop(0)
        for o in sorted(nbrs[s]):
            if o not in parent:
                parent[o] = s
                queue.append(o)
            elif parent.get(s) != o and parent.get(o) != s:
                cotree.add((min(s, o), max(s, o)))
    if len(parent) != x.num_simplices:
        raise ValueError("complex is not facet-connected")
    return parent, sorted(cotree)


def _walk_labels(x: SimplicialComplexK, path) -> dict:
    """Carry slot labels along a k-thick path; returns final vertex -> slot."""
    s0 = x.simplices[path[0]]
    labels = {v: i for i, v in enumerate(s0)}
    for a, b in zip(path, path[1:]):
        sa, sb = set(x.simplices[a]), set(x.simplices[b])
        dropped = sa - sb
        new = sb - sa
        if len(dropped) != 1 or len(new) != 1:
            raise ValueError(f"simplices {a},{b} do not share a (k-1)-facet")
        (d,), (w,) = dropped, new
        nxt = {v: labels[v] for v in sa & sb}
        nxt[w] = labels[d]
        labels = nxt
    return labels


def _tree_walk(parent, t) -> list:
    out = [t]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return list(reversed(out))


@dataclass(frozen=True)
class KHolonomy:
    group: tuple          # sorted element tuples of the subgroup of S_{k+1}
    generators: tuple
    orbit_count: int
    covariant_dimension: int
    orbits: tuple         # tuple of sorted slot tuples


def classify_holonomy_k(x: SimplicialComplexK, base: int = 0) -> KHolonomy:
    """Holonomy subgroup of S_{k+1} of the canonical connection, its orbit
    count q on the value slots, and the covariant dimension q - 1."""
    if not canonical_local_holonomy_ok(x):
        raise LocalHolonomyNontrivial("a (k-2)-simplex has odd valence")
    parent, cotree = _dual_tree(x, base)
    k1 = x.k + 1
    gens = []
    for a, b in cotree:
        walk = _tree_walk(parent, a) + list(reversed(_tree_walk(parent, b)))
        labels = _walk_labels(x, _dedup(walk))
        s0 = x.simplices[base]
        init = {v: i for i, v in enumerate(s0)}
        sigma = [0] * k1
        for v in s0:
            sigma[init[v]] = labels[v]
        gens.append(tuple(sigma))
    group = _generated_group(gens, k1)
    orbits = _orbits(group, k1)
    q = len(orbits)
    return KHolonomy(tuple(sorted(group)), tuple(gens), q, q - 1, orbits)


def _dedup(seq):
    out = [seq[0]]
    for t in seq[1:]:
        if t != out[-1]:
            out.append(t)
    return out


def _generated_group(gens, k1) -> set:
    ident = tuple(range(k1))
    group = {ident} | set(gens)
    changed = True
    while changed:
        changed = False
        for p in list(group):
            for q in list(group):
                comp = tuple(p[q[i]] for i in range(k1))
                if comp not in group:
                    group.add(comp)
                    changed = True
    return group


def _orbits(group, k1):
    seen = set()
    orbits = []
    for s in range(k1):
        if s in seen:
            continue
        orbit = {s}
        frontier = [s]
        while frontier:
            t = frontier.pop()
            for g in group:
                if g[t] not in orbit:
                    orbit.add(g[t])
                    frontier.append(g[t])
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return tuple(orbits)


def vertex_orbit_classes(x: SimplicialComplexK, base: int = 0) -> tuple[dict, KHolonomy]:
    """Assign every vertex the orbit index of its slot under tree transport."""
    hol = classify_holonomy_k(x, base)
    parent, _ = _dual_tree(x, base)
    orbit_of_slot = {}
    for i, orbit in enumerate(hol.orbits):
        for s in orbit:
            orbit_of_slot[s] = i
    order = sorted(parent, key=lambda t: len(_tree_walk(parent, t)))
    s0 = x.simplices[base]
    slot = {v: i for i, v in enumerate(s0)}
    labels_of = {base: {v: slot[v] for v in s0}}
    for t in order:
        if t == base:
            continue
        p = parent[t]
        la = labels_of[p]
        sa, sb = set(x.simplices[p]), set(x.simplices[t])
        (d,), (w,) = sa - sb, sb - sa
        lb = {v: la[v] for v in sa & sb}
        lb[w] = la[d]
        labels_of[t] = lb
    classes = {}
    for t, lab in labels_of.items():
        for v, s in lab.items():
            c = orbit_of_slot[s]
            if classes.setdefault(v, c) != c:
                raise LocalHolonomyNontrivial("inconsistent orbit classes")
    return classes, hol


def covariant_constants_k(x: SimplicialComplexK, base: int = 0) -> list:
    """Basis of solutions of Q psi = 0: one vector per orbit beyond the
    weighted-sum relation sum_orbits |orbit| c_orbit = 0."""
    classes, hol = vertex_orbit_classes(x, base)
    q = hol.orbit_count
    sizes = [len(o) for o in hol.orbits]
    basis = []
    for i in range(q - 1):
        c = [Fraction(0)] * q
        c[i] = Fraction(1, sizes[i])
        c[q - 1] = Fraction(-1, sizes[q - 1])
        basis.append({v: c[classes[v]] for v in range(x.num_vertices)})
    for psi in basis:
        for s in x.simplices:
            assert sum(psi[v] for v in s) == 0
    return basis


def assemble_Lk(x: SimplicialComplexK) -> list:
    """(L psi)_P = n_P psi_P + sum m_{P,P'} psi_{P'} with m the number of
    k-simplices containing the edge <P P'>."""
    n = x.num_vertices
    out = ratmat.zeros(n, n)
    for s in x.simplices:
        for u in s:
            for v in s:
                out[u][v] += 1
    return out


def zero_modes_k(x: SimplicialComplexK) -> list:
    return [dict(enumerate(vec)) for vec in ratmat.nullspace(assemble_Lk(x))]


def bw_simplex_coloring(x: SimplicialComplexK) -> dict | None:
    """2-color k-simplices so facet-adjacent ones differ; None if odd dual
    cycles exist (rho3 nontrivial)."""
    nbrs = x.adjacency()
    colors: dict = {}
    for seed in range(x.num_simplices):
        if seed in colors:
            continue
        colors[seed] = 0
        queue = [seed]
        while queue:
            s = queue.pop()
            for o in nbrs[s]:
                if o not in colors:
                    colors[o] = 1 - colors[s]
                    queue.append(o)
                elif colors[o] == colors[s]:
                    return None
    return colors


@dataclass
class KFactorizationReport:
    bw_exists: bool
    kernel_dimension: int
    kernel_matches_covariants: bool | None
    factorization_holds: bool | None    # L = 2 Qb+ Qb = 2 Qw+ Qw (k >= 2)
    note: str = ""


def bw_factorization_check(x: SimplicialComplexK) -> KFactorizationReport:
    """Zero-mode/covariant comparison plus, for k >= 2 with a b/w coloring,
    the entrywise identity L = 2 Qb+ Qb = 2 Qw+ Qw.

    For k = 1 the black and white operators each see only their own edges,
    so only L = Qb+ Qb + Qw+ Qw holds; the doubled identity is reported as
    out of range (None) with a note.
    """
    lmat = assemble_Lk(x)
    kernel = ratmat.nullspace(lmat)
    try:
        cov = covariant_constants_k(x)
        cov_vecs = [[psi[v] for v in range(x.num_vertices)] for psi in cov]
        matches = ratmat.span_equal(kernel, cov_vecs)
    except (LocalHolonomyNontrivial, NotAManifold):
        matches = None
    colors = bw_simplex_coloring(x)
    if colors is None:
        return KFactorizationReport(False, len(kernel), matches, None)
    if x.k == 1:
        return KFactorizationReport(True, len(kernel), matches, None,
                                    note="k=1: only L = Qb+Qb + Qw+Qw holds")
    holds = True
    for want in (0, 1):
        q = _q_matrix_k(x, [i for i in range(x.num_simplices) if colors[i] == want])
        qt = [list(col) for col in zip(*q)]
        gram = ratmat.mat_mul(qt, q)
        doubled = [[2 * gram[i][j] for j in range(x.num_vertices)]
                   for i in range(x.num_vertices)]
        if not ratmat.mat_eq(doubled, lmat):
            holds = False
    return KFactorizationReport(True, len(kernel), matches, holds)


def _q_matrix_k(x: SimplicialComplexK, rows) -> list:
    out = []
    for i in rows:
        row = [Fraction(0)] * x.num_vertices
        for v in x.simplices[i]:
            row[v] = Fraction(1)
        out.append(row)
    return out


def rho_signs_k(x: SimplicialComplexK, path) -> tuple[int, int]:
    """(rho1, rho3) along a closed k-thick path: permutation parity of the
    label transport and the simplex-count parity."""
    walk = list(path) + [path[0]]
    labels = _walk_labels(x, _dedup(walk))
    s0 = x.simplices[path[0]]
    init = {v: i for i, v in enumerate(s0)}
    sigma = [0] * (x.k + 1)
    for v in s0:
        sigma[init[v]] = labels[v]
    sign = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sign = -sign
    rho3 = -1 if len(path) % 2 else 1
    return sign, rho3


def boundary_of_4_simplex() -> SimplicialComplexK:
    """The five tetrahedra of the 4-simplex boundary; every edge lies in
    three of them (odd), so the canonical connection is curved."""
    return SimplicialComplexK(list(combinations(range(5), 4)))


def cycle_graph(n: int) -> SimplicialComplexK:
    return SimplicialComplexK([(i, (i + 1) % n) for i in range(n)])
