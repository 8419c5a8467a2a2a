"""Discrete holomorphy on the equilateral triangular lattice Z^2.

Vertices are integer pairs n = (n1, n2).  The white triangle at n is
<n, n+e1, n+e2>, the black one <n, n-e1, n-e2>.  With the shift
convention (t_j f)(n) = f(n + e_j), the first-order operators are

    Q  = 1 + t1 + t2         (white triangle sum at n)
    Q+ = 1 + t1^-1 + t2^-1   (black triangle sum at n)

and H = ker Q+ plays the role of holomorphic functions.  Everything here
is windowed and exact: polynomials P_k = ker Q+ \\cap ker Q^{k+1}, the
trefoil parametrization of H, Taylor expansions along admissible
sequences of big black triangles, the Pascal-triangle Green's function
and the Cauchy reconstruction formula.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainUnbounded,
    InsufficientWindow,
    NotHolomorphic,
    OutOfWindow,
    SequenceTooShort,
    WindowExhausted,
    WindowNotSectorClosed,
)
from .ratmat import frac

Point = tuple[int, int]

E1: Point = (1, 0)
E2: Point = (0, 1)


def _add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class Window:
    """Inclusive rectangle [x0, x1] x [y0, y1] of lattice points."""

    x0: int
    x1: int
    y0: int
    y1: int

    def __post_init__(self):
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise InsufficientWindow(f"empty window {self}")

    def contains(self, p: Point) -> bool:
        return self.x0 <= p[0] <= self.x1 and self.y0 <= p[1] <= self.y1

    def points(self):
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                yield (x, y)

    def shrink(self, left=0, right=0, bottom=0, top=0) -> "Window":
        return Window(self.x0 + left, self.x1 - right, self.y0 + bottom, self.y1 - top)

    def center(self) -> Point:
        return ((self.x0 + self.x1) // 2, (self.y0 + self.y1) // 2)

    @property
    def size(self) -> tuple[int, int]:
        return (self.x1 - self.x0 + 1, self.y1 - self.y0 + 1)


class LatticeFunction:
    """Exact-valued function on a window, or of finite support.

    Lookups outside a declared window raise OutOfWindow; finite-support
    functions return 0 off their support instead.
    """

    def __init__(self, values: dict, window: Window | None = None,
                 finite_support: bool = False):
        if window is None and not finite_support:
            raise ValueError("either a window or the finite-support flag is required")
        self.values = {tuple(p): frac(v) for p, v in values.items()}
        self.window = window
        self.finite_support = finite_support
        if window is not None:
            for p in self.values:
                if not window.contains(p):
                    raise OutOfWindow(f"value stored outside window: {p}")

    def __getitem__(self, p: Point) -> Fraction:
        p = tuple(p)
        if self.finite_support:
            return self.values.get(p, Fraction(0))
        if not self.window.contains(p):
            raise OutOfWindow(f"{p} outside {self.window}")
        return self.values.get(p, Fraction(0))

    def restrict(self, window: Window) -> "LatticeFunction":
        vals = {p: self[p] for p in window.points()}
        return LatticeFunction(vals, window)

    def support(self):
        return {p for p, v in self.values.items() if v != 0}

    def __eq__(self, other):
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        if self.window != other.window or self.finite_support != other.finite_support:
            return NotImplemented
        pts = self.window.points() if self.window else set(self.values) | set(other.values)
        return all(self[p] == other[p] for p in pts)


def delta(at: Point = (0, 0)) -> LatticeFunction:
    return LatticeFunction({tuple(at): 1}, finite_support=True)


def apply_Q(f: LatticeFunction) -> LatticeFunction:
    """(Q f)(n) = f(n) + f(n + e1) + f(n + e2), the white sum at n."""
    return _apply_stencil(f, ((0, 0), E1, E2), shrink={"right": 1, "top": 1})


def apply_Qplus(f: LatticeFunction) -> LatticeFunction:
    """(Q+ f)(n) = f(n) + f(n - e1) + f(n - e2), the black sum at n."""
    return _apply_stencil(f, ((0, 0), (-1, 0), (0, -1)), shrink={"left": 1, "bottom": 1})


def _apply_stencil(f, offsets, shrink):
    if f.finite_support:
        out: dict[Point, Fraction] = {}
        for p, v in f.values.items():
            for off in offsets:
                q = _sub(p, off)
                out[q] = out.get(q, Fraction(0)) + v
        return LatticeFunction(out, finite_support=True)
    try:
        new_w = f.window.shrink(**shrink)
    except InsufficientWindow:
        raise OutOfWindow(f"window {f.window} too small for the stencil")
    vals = {}
    for p in new_w.points():
        vals[p] = sum((f[_add(p, off)] for off in offsets), Fraction(0))
    return LatticeFunction(vals, new_w)


def q_power(f: LatticeFunction, k: int) -> LatticeFunction:
    for _ in range(k):
        f = apply_Q(f)
    return f


def is_holomorphic(f: LatticeFunction, window: Window | None = None) -> bool:
    """Q+ f = 0 at every point of the (shrunk) window where the stencil fits."""
    g = apply_Qplus(f if window is None else f.restrict(window))
    return all(v == 0 for v in g.values.values())


# --- covariant constants on the lattice ------------------------------------

def covariant_constant(c: tuple, window: Window) -> LatticeFunction:
    """The function n -> c[(n1 - n2) mod 3]; requires c0 + c1 + c2 = 0."""
    c = tuple(frac(x) for x in c)
    if sum(c) != 0:
        raise ValueError("covariant constant values must sum to zero")
    return LatticeFunction({p: c[(p[0] - p[1]) % 3] for p in window.points()}, window)


def covariant_value(c: tuple, p: Point) -> Fraction:
    return frac(c[(p[0] - p[1]) % 3])


# --- trefoil parametrization of H -------------------------------------------

def trefoil_points(center: Point, count_a: int, count_b: int, count_c: int) -> list:
    """Y_n clipped to the given ray lengths: the center, (n1-j, n2),
    (n1, n2+j) and (n1+j, n2-j) for j = 1..count."""
    n1, n2 = center
    pts = [center]
    pts += [(n1 - j, n2) for j in range(1, count_a + 1)]
    pts += [(n1, n2 + j) for j in range(1, count_b + 1)]
    pts += [(n1 + j, n2 - j) for j in range(1, count_c + 1)]
    return pts


def _classify(center: Point, p: Point):
    """('ray', index) / ('center',) / (sector, j1, j2) relative to center."""
    d1, d2 = _sub(p, center)
    if d1 == 0 and d2 == 0:
        return ("center",)
    if d2 == 0 and d1 < 0:
        return ("rayA", -d1)
    if d1 == 0 and d2 > 0:
        return ("rayB", d2)
    if d1 > 0 and d1 + d2 == 0:
        return ("rayC", d1)
    if d1 <= -1 and d2 >= 1:
        return ("sector1",)
    if d2 <= -1 and d1 + d2 <= -1:
        return ("sector2",)
    if d1 >= 1 and d1 + d2 >= 1:
        return ("sector3",)
    raise AssertionError("unreachable")


_SECTOR_READS = {
    # each sector point is determined by one black triangle equation
    "sector1": ((1, 0), (1, -1)),    # psi(p) = -psi(p+e1) - psi(p+e1-e2)
    "sector2": ((0, 1), (-1, 1)),    # psi(p) = -psi(p+e2) - psi(p+e2-e1)
    "sector3": ((-1, 0), (0, -1)),   # psi(p) = -psi(p-e1) - psi(p-e2)
}


def extend_holomorphic(center: Point, y_values: dict, window: Window) -> LatticeFunction:
    """The unique element of H with the given trefoil values, on a window.

    `y_values` maps trefoil points of Y_center to values.  Each sector is
    filled by its black-triangle recursion; if the recursion needs a ray
    value that was not supplied, WindowNotSectorClosed is raised (this
    happens exactly when the dependency shadow of the window leaves it).
    """
    memo = {tuple(p): frac(v) for p, v in y_values.items()}
    for p in memo:
        kind = _classify(center, p)
        if kind[0] not in ("center", "rayA", "rayB", "rayC"):
            raise ValueError(f"{p} is not on the trefoil of {center}")

    def value(target: Point) -> Fraction:
        stack = [target]
        while stack:
            p = stack[-1]
            if p in memo:
                stack.pop()
                continue
            kind = _classify(center, p)
            if kind[0] in ("center", "rayA", "rayB", "rayC"):
                raise WindowNotSectorClosed(
                    f"trefoil value at {p} ({kind[0]}) is needed but was not given")
            reads = [_add(p, off) for off in _SECTOR_READS[kind[0]]]
            missing = [q for q in reads if q not in memo]
            if missing:
                stack.extend(missing)
                continue
            memo[p] = -memo[reads[0]] - memo[reads[1]]
            stack.pop()
        return memo[target]

    vals = {p: value(p) for p in window.points()}
    return LatticeFunction(vals, window)


def required_trefoil(center: Point, window: Window) -> list:
    """Trefoil points whose values determine the window (dependency closure)."""
    n1, n2 = center
    count_a = max(0, (n1 - window.x0) + max(0, n2 - window.y0))
    count_b = max(0, window.y1 - n2)
    count_c = max(0, window.x1 - n1)
    return trefoil_points(center, count_a, count_b, count_c)


def random_holomorphic(window: Window, rng: random.Random,
                       center: Point | None = None, lo: int = -9, hi: int = 9,
                       pad: int = 0) -> LatticeFunction:
    """Random element of H on a (padded) window via random trefoil data."""
    w = Window(window.x0 - pad, window.x1 + pad, window.y0 - pad, window.y1 + pad)
    c = center if center is not None else w.center()
    y = {p: Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for p in required_trefoil(c, w)}
    return extend_holomorphic(c, y, w)


# --- big black triangles and polynomials ------------------------------------

@dataclass(frozen=True)
class BigBlackTriangle:
    """T_n^(k): the homothetic black triangle with corners n,
    n - (2k+1) e1 and n - (2k+1) e2; 2k+2 lattice points per side."""

    apex: Point
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("order k must be >= 0")

    @property
    def side(self) -> int:
        return 2 * self.k + 2

    def contains(self, p: Point) -> bool:
        i, j = self.apex[0] - p[0], self.apex[1] - p[1]
        return i >= 0 and j >= 0 and i + j <= 2 * self.k + 1

    def points(self):
        n1, n2 = self.apex
        m = 2 * self.k + 1
        for i in range(m + 1):
            for j in range(m + 1 - i):
                yield (n1 - i, n2 - j)

    def side_points(self, which: int) -> list:
        """Side 1: row n2; side 2: column n1; side 3: the hypotenuse.
        Each lists 2k+2 points indexed j = 0..2k+1 as in the defining
        formulas of the side polynomials."""
        n1, n2 = self.apex
        m = 2 * self.k + 1
        if which == 1:
            return [(n1 - m + j, n2) for j in range(m + 1)]
        if which == 2:
            return [(n1, n2 - j) for j in range(m + 1)]
        if which == 3:
            return [(n1 - j, n2 - m + j) for j in range(m + 1)]
        raise ValueError("side must be 1, 2 or 3")

    def side_values(self, which: int) -> dict:
        """The defining +-1 pattern of p_{k, which} on its side."""
        pts = self.side_points(which)
        return {p: Fraction((-1) ** (j + self.k)) for j, p in enumerate(pts)}

    def black_subtriangle(self) -> "BigBlackTriangle":
        """T^b(k) = the ordinary black triangle at apex - (k, k)."""
        return BigBlackTriangle((self.apex[0] - self.k, self.apex[1] - self.k), 0)


def window_of(tri: BigBlackTriangle, pad: int = 0) -> Window:
    m = 2 * tri.k + 1
    return Window(tri.apex[0] - m - pad, tri.apex[0] + pad,
                  tri.apex[1] - m - pad, tri.apex[1] + pad)


# affine solver: Q psi = phi, Q+ psi = 0 ------------------------------------

def solve_q_affine(phi: LatticeFunction, window: Window,
                   seeds: tuple = None) -> LatticeFunction:
    """One exact solution of Q psi = phi, Q+ psi = 0 on the window.

    phi must be holomorphic (Q+ phi = 0) wherever the stencil fits, else
    NotHolomorphic.  The solution is unique up to adding a covariant
    constant; `seeds` optionally pins the two top-right values.
    """
    w = window
    if w.x1 - w.x0 < 1 or w.y1 - w.y0 < 1:
        raise InsufficientWindow("affine solve needs at least a 2x2 window")
    s1, s2 = (Fraction(0), Fraction(0)) if seeds is None else (frac(seeds[0]), frac(seeds[1]))
    psi: dict[Point, Fraction] = {(w.x1, w.y1): s1, (w.x1 - 1, w.y1): s2}
    # top two rows, zigzagging leftward
    psi[(w.x1, w.y1 - 1)] = -psi[(w.x1, w.y1)] - psi[(w.x1 - 1, w.y1)]
    for x in range(w.x1 - 1, w.x0 - 1, -1):
        psi[(x, w.y1 - 1)] = phi[(x, w.y1 - 1)] - psi[(x + 1, w.y1 - 1)] - psi[(x, w.y1)]
        if x > w.x0:
            psi[(x - 1, w.y1)] = -psi[(x, w.y1)] - psi[(x, w.y1 - 1)]
    # remaining rows downward
    for y in range(w.y1 - 2, w.y0 - 1, -1):
        for x in range(w.x1, w.x0, -1):
            psi[(x, y)] = -psi[(x, y + 1)] - psi[(x - 1, y + 1)]
        psi[(w.x0, y)] = phi[(w.x0, y)] - psi[(w.x0 + 1, y)] - psi[(w.x0, y + 1)]
    out = LatticeFunction(psi, w)
    _check_affine(out, phi, w)
    return out


def _check_affine(psi, phi, w):
    for p in Window(w.x0, w.x1 - 1, w.y0, w.y1 - 1).points():
        if psi[p] + psi[_add(p, E1)] + psi[_add(p, E2)] != phi[p]:
            raise NotHolomorphic("affine system inconsistent: Q+ phi != 0")
    for p in Window(w.x0 + 1, w.x1, w.y0 + 1, w.y1).points():
        if psi[p] + psi[_sub(p, E1)] + psi[_sub(p, E2)] != 0:
            raise NotHolomorphic("affine system inconsistent: Q+ phi != 0")


def holomorphic_antiderivative(phi: LatticeFunction, window: Window,
                               normalize_at: tuple = ((0, 0), (-1, 0))) -> LatticeFunction:
    """psi with Q psi = phi and Q+ psi = 0, pinned to vanish at two points.

    The two normalization points must have different (n1 - n2) mod 3
    residues and lie in the window; default ((0,0), (-1,0)).
    """
    psi = solve_q_affine(phi, window)
    p, q = normalize_at
    return pin_covariant(psi, p, q)


def pin_covariant(psi: LatticeFunction, p: Point, q: Point) -> LatticeFunction:
    """Add the covariant constant that zeroes psi at p and q."""
    rp, rq = (p[0] - p[1]) % 3, (q[0] - q[1]) % 3
    if rp == rq:
        raise ValueError("normalization points must have distinct residues")
    c = [Fraction(0)] * 3
    c[rp] = -psi[p]
    c[rq] = -psi[q]
    c[3 - rp - rq] = -c[rp] - c[rq]
    w = psi.window
    vals = {pt: psi[pt] + c[(pt[0] - pt[1]) % 3] for pt in w.points()}
    return LatticeFunction(vals, w)


def side_polynomial(tri: BigBlackTriangle, which: int, window: Window) -> LatticeFunction:
    """p_{k, which} on `window`: zero on T_n^(k) off side `which`, the
    (-1)^(j+k) pattern on the side, extended as the unique member of P_k.

    Built by the constructive route Q p_{k,i} = p_{k-1,i}: antidifferentiate
    the level below, then correct by the covariant constant matching the
    prescribed values near the apex.
    """
    if not all(window.contains(p) for p in tri.points()):
        raise InsufficientWindow("window must contain the big triangle")
    if tri.k == 0:
        return _p0(tri, which, window)
    lower = BigBlackTriangle((tri.apex[0] - 1, tri.apex[1] - 1), tri.k - 1)
    phi = side_polynomial(lower, which, window)
    psi = solve_q_affine(phi, window)
    target = _apex_values(tri, which)
    c = [None, None, None]
    for p, v in target.items():
        c[(p[0] - p[1]) % 3] = v - psi[p]
    vals = {pt: psi[pt] + c[(pt[0] - pt[1]) % 3] for pt in window.points()}
    return LatticeFunction(vals, window)


def _p0(tri: BigBlackTriangle, which: int, window: Window) -> LatticeFunction:
    vals3 = [None, None, None]
    for p, v in _apex_values(tri, which).items():
        vals3[(p[0] - p[1]) % 3] = v
    return covariant_constant(tuple(vals3), window)


def _apex_values(tri: BigBlackTriangle, which: int) -> dict:
    """Values of p_{k, which} on the apex black triangle T^(0)_n."""
    n1, n2 = tri.apex
    corner = {(n1, n2): Fraction(0), (n1 - 1, n2): Fraction(0), (n1, n2 - 1): Fraction(0)}
    for p, v in tri.side_values(which).items():
        if p in corner:
            corner[p] = v
    return corner


def prescribed_values(tri: BigBlackTriangle, which: int) -> dict:
    """The full defining pattern of p_{k, which} on T_n^(k)."""
    out = {p: Fraction(0) for p in tri.points()}
    out.update(tri.side_values(which))
    return out


# --- admissible sequences and the Taylor expansion ---------------------------

EXTENSION_SHIFTS = {"12": (1, 1), "23": (1, 0), "31": (0, 1)}


@dataclass(frozen=True)
class AdmissibleSequence:
    """Nested big black triangles T(0) c T(1) c ..., each a two-side
    extension of the previous one.  types[j] is the extension type
    producing T(j); the pair of side polynomials attached to level 0 is
    fixed to ("1", "2")."""

    start: Point
    types: tuple

    def __post_init__(self):
        for t in self.types:
            if t not in EXTENSION_SHIFTS:
                raise ValueError(f"unknown extension type {t!r}")

    def __len__(self) -> int:
        return len(self.types)

    def triangle(self, k: int) -> BigBlackTriangle:
        if k > len(self.types):
            raise SequenceTooShort(f"sequence holds {len(self.types)} extensions, asked {k}")
        apex = self.start
        for t in self.types[:k]:
            apex = _add(apex, EXTENSION_SHIFTS[t])
        return BigBlackTriangle(apex, k)

    def basis_pair(self, k: int) -> tuple[int, int]:
        if k == 0:
            return (1, 2)
        if k > len(self.types):
            raise SequenceTooShort(f"sequence holds {len(self.types)} extensions, asked {k}")
        t = self.types[k - 1]
        return (int(t[0]), int(t[1]))

    def covers_window(self, window: Window) -> bool:
        covered = set()
        for k in range(len(self.types) + 1):
            covered |= {p for p in self.triangle(k).points() if window.contains(p)}
        return covered >= set(window.points())


def default_admissible(center: Point, length: int) -> AdmissibleSequence:
    """Cycle the extension types (12), (23), (31) starting from T^b(center)."""
    cycle = ("12", "23", "31")
    return AdmissibleSequence(center, tuple(cycle[i % 3] for i in range(length)))


def poly_space_basis(seq: AdmissibleSequence, k: int, window: Window) -> list:
    """The 2k+2 basis functions psi^1_j, psi^2_j (j <= k) of P_k on a window."""
    out = []
    for j in range(k + 1):
        tri = seq.triangle(j)
        i1, i2 = seq.basis_pair(j)
        out.append(side_polynomial(tri, i1, window))
        out.append(side_polynomial(tri, i2, window))
    return out


def taylor_coefficients(psi: LatticeFunction, seq: AdmissibleSequence, order: int) -> list:
    """Coefficients (alpha^1_k, alpha^2_k) for k = 0..order.

    alpha_k is read off the k-th derivative Q^k psi on the ordinary black
    triangle T^b(k): it equals alpha^1 p_{0,i} + alpha^2 p_{0,j} there,
    where (i, j) is the extension pair of step k.
    """
    out = []
    fk = psi
    for k in range(order + 1):
        tri_k = seq.triangle(k)
        tb = tri_k.black_subtriangle()
        if k > 0:
            try:
                fk = apply_Q(fk)
            except OutOfWindow:
                raise WindowExhausted(f"window exhausted at derivative {k}")
        i1, i2 = seq.basis_pair(k)
        try:
            triple = [(p, fk[p]) for p in tb.points()]
        except OutOfWindow:
            raise WindowExhausted(f"window exhausted reading T^b({k})")
        b1 = _apex_values(tb, i1)
        b2 = _apex_values(tb, i2)
        out.append(_solve_pair(triple, b1, b2))
    return out


def _solve_pair(triple, b1, b2) -> tuple[Fraction, Fraction]:
    """Solve value = a1*b1 + a2*b2 on the three points of a black triangle."""
    pts = [p for p, _ in triple]
    rows = [(b1[p], b2[p]) for p in pts]
    vals = [v for _, v in triple]
    found = None
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            d = rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1]
            if d != 0:
                a1 = (vals[i] * rows[j][1] - vals[j] * rows[i][1]) / d
                a2 = (rows[i][0] * vals[j] - rows[j][0] * vals[i]) / d
                found = (a1, a2)
                break
        if found:
            break
    if found is None:
        raise ArithmeticError("side polynomials degenerate on T^b(k)")
    a1, a2 = found
    for (p, v), (r1, r2) in zip(triple, rows):
        if a1 * r1 + a2 * r2 != v:
            raise NotHolomorphic("derivative values not in the covariant plane")
    return (a1, a2)


def taylor_partial_sum(seq: AdmissibleSequence, coeffs: list, window: Window,
                       basis: list | None = None) -> LatticeFunction:
    """Sum alpha^1_k psi^1_k + alpha^2_k psi^2_k through the given coeffs.

    Pass a precomputed `poly_space_basis` result to reuse it across calls.
    """
    if basis is None:
        basis = poly_space_basis(seq, len(coeffs) - 1, window)
    vals = {p: Fraction(0) for p in window.points()}
    for k, (a1, a2) in enumerate(coeffs):
        f1, f2 = basis[2 * k], basis[2 * k + 1]
        for p in window.points():
            vals[p] += a1 * f1[p] + a2 * f2[p]
    return LatticeFunction(vals, window)


def interpolate_polynomial(psi: LatticeFunction, tri: BigBlackTriangle) -> LatticeFunction:
    """The unique p_k in P_k agreeing with a holomorphic psi on T_n^(k).

    Follows the inductive construction: interpolate Q psi on the big
    triangle one level down, antidifferentiate, and correct by a covariant
    constant on the apex black triangle.  The result lives on psi's
    window shrunk by k at the left/bottom (the iterated-Q shadow).
    """
    w = psi.window
    if w is None:
        raise InsufficientWindow("interpolation needs a windowed function")
    out_w = Window(w.x0, w.x1 - tri.k, w.y0, w.y1 - tri.k)
    if not all(out_w.contains(p) for p in tri.points()):
        raise InsufficientWindow("window cannot hold the triangle and its shadow")
    return _interp(psi, tri, out_w)


def _interp(psi: LatticeFunction, tri: BigBlackTriangle, out_w: Window) -> LatticeFunction:
    n1, n2 = tri.apex
    if tri.k == 0:
        vals3 = [None, None, None]
        for p in ((n1, n2), (n1 - 1, n2), (n1, n2 - 1)):
            vals3[(p[0] - p[1]) % 3] = psi[p]
        return covariant_constant(tuple(vals3), out_w)
    lower = BigBlackTriangle((n1 - 1, n2 - 1), tri.k - 1)
    pl = _interp(apply_Q(psi), lower, out_w)
    phi = solve_q_affine(pl, out_w)
    c = [None, None, None]
    for p in ((n1, n2), (n1 - 1, n2), (n1, n2 - 1)):
        c[(p[0] - p[1]) % 3] = psi[p] - phi[p]
    vals = {pt: phi[pt] + c[(pt[0] - pt[1]) % 3] for pt in out_w.points()}
    return LatticeFunction(vals, out_w)


# --- Green's function and the Cauchy formula ---------------------------------

def green(n: Point) -> int:
    """Signed Pascal triangle: (-1)^(n1+n2) C(n1+n2, n1) on the positive
    quadrant, zero elsewhere; the fundamental solution Q+ G = delta."""
    n1, n2 = n
    if n1 < 0 or n2 < 0:
        return 0
    return (-1) ** (n1 + n2) * math.comb(n1 + n2, n1)


def build_green(window: Window) -> LatticeFunction:
    return LatticeFunction({p: green(p) for p in window.points()}, window)


@dataclass(frozen=True)
class LatticeDomain:
    """Finite simplicial subcomplex of the lattice triangulation, stored
    as a set of ('b'|'w', apex) triangles."""

    tris: frozenset

    def __post_init__(self):
        if not self.tris:
            raise DomainUnbounded("empty lattice domain")
        for kind, apex in self.tris:
            if kind not in ("b", "w"):
                raise ValueError(f"bad triangle kind {kind!r}")

    def vertices(self) -> frozenset:
        out = set()
        for t in self.tris:
            out |= set(triangle_vertices(t))
        return frozenset(out)

    def boundary_plus_black(self) -> list:
        """Apexes of black triangles not in D that touch D."""
        verts = self.vertices()
        member = {t for t in self.tris if t[0] == "b"}
        cand = set()
        for v in verts:
            # black triangles having v as one of their three vertices
            for apex in (v, _add(v, E1), _add(v, E2)):
                cand.add(apex)
        out = []
        for apex in sorted(cand):
            if ("b", apex) in member:
                continue
            if any(p in verts for p in triangle_vertices(("b", apex))):
                out.append(apex)
        return out

    def interior_and_boundary_points(self) -> list:
        return sorted(self.vertices())


def triangle_vertices(t) -> tuple:
    kind, (x, y) = t
    if kind == "w":
        return ((x, y), (x + 1, y), (x, y + 1))
    return ((x, y), (x - 1, y), (x, y - 1))


def cauchy_reconstruct(domain: LatticeDomain, psi: dict, kernel=green) -> dict:
    """Recover a holomorphic function on D from its boundary behavior:

        psi_n = sum over black T_m in the outer boundary of D of
                (Q+ psi)_m * G(n - m)

    with psi extended by zero outside D.  `kernel` may be any function
    with Q+ kernel = delta (the Green's function by default).
    """
    verts = domain.vertices()

    def val(p) -> Fraction:
        return frac(psi.get(p, 0)) if p in verts else Fraction(0)

    charges = []
    for m in domain.boundary_plus_black():
        q = val(m) + val(_sub(m, E1)) + val(_sub(m, E2))
        if q != 0:
            charges.append((m, q))
    out = {}
    for n in sorted(verts):
        acc = Fraction(0)
        for m, q in charges:
            acc += q * frac(kernel(_sub(n, m)))
        out[n] = acc
    return out


def convolution_vanishing(psi: LatticeFunction, phi: LatticeFunction, n: Point) -> Fraction:
    """sum_m (Q+ psi)_m phi_{n-m} for finite-support psi and holomorphic
    phi; identically zero by the convolution lemma."""
    if not psi.finite_support:
        raise ValueError("psi must have finite support")
    qp = apply_Qplus(psi)
    acc = Fraction(0)
    for m, v in qp.values.items():
        if v != 0:
            acc += v * phi[_sub(n, m)]
    return acc
