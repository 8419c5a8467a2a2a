"""Command-line frontend.

Subcommands: mesh-check, holonomy, covariants, maxprinciple, taylor,
cauchy, green, factorize, qcd-identity, ksimplicial.

The main artifact is JSON on stdout (or --out); when --out ends in .csv
or .svg the fitting representation is written instead.  Domain errors
exit 1 with a JSON error body; usage errors exit 2.  Rational-mode runs
are byte-identical for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import connection as conn_mod
from . import io, lattice, mesh, opalgebra, simplicial, solver
from .errors import TriholoError
from .ratmat import frac


def _resolve(path: str) -> str:
    if os.path.exists(path):
        return path
    fixture_dir = os.environ.get("TRIHOLO_FIXTURES")
    if fixture_dir:
        cand = os.path.join(fixture_dir, path)
        if os.path.exists(cand):
            return cand
    return path


def _read(path: str) -> str:
    with open(_resolve(path), "r", encoding="utf-8") as fh:
        return fh.read()


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(_jsonable(v) for v in x)
    return x


def _emit(args, payload: dict, csv: str | None = None, svg: str | None = None) -> None:
    out = getattr(args, "out", None)
    fmt = getattr(args, "format", None)
    if out is not None and fmt is None:
        if out.endswith(".csv"):
            fmt = "csv"
        elif out.endswith(".svg"):
            fmt = "svg"
    if fmt == "csv" and csv is not None:
        body = csv
    elif fmt == "svg" and svg is not None:
        body = svg
    else:
        body = json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"
    if out is None:
        print(body, end="" if body.endswith("\n") else "\n")
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(body)


def _window(values) -> lattice.Window:
    if len(values) == 2:
        a, b = values
        return lattice.Window(a, b, a, b)
    if len(values) == 4:
        return lattice.Window(*values)
    raise ValueError("--window takes 2 values (square) or 4 (x0 x1 y0 y1)")


def _load_mesh(args) -> mesh.TriangulatedSurface:
    return io.parse_mesh(_read(args.mesh))


def _load_connection(args, surface):
    if getattr(args, "conn", None):
        return io.parse_connection(_read(args.conn), surface)
    return conn_mod.canonical_connection(surface)


# --- subcommands -------------------------------------------------------------

def cmd_mesh_check(args) -> dict:
    surf = _load_mesh(args)
    valences = sorted({surf.valence(v) for v in range(surf.num_vertices)})
    bw = mesh.bw_face_coloring(surf)
    tric = mesh.three_vertex_coloring(surf)
    report = {
        "vertices": surf.num_vertices,
        "edges": surf.num_edges,
        "triangles": surf.num_triangles,
        "euler_characteristic": surf.euler_characteristic(),
        "closed": surf.is_closed,
        "valences": valences,
        "all_valences_even": all(surf.valence(v) % 2 == 0
                                 for v in range(surf.num_vertices)),
        "bw_colorable": bw is not None,
        "tri_vertex_colorable": tric is not None,
        "coincident_ring_pairs": _coincident_ring_pairs(surf, bw),
        "ok": True,
    }
    return report


def _coincident_ring_pairs(surf, bw) -> int:
    """Black triangles whose six distance-2 black neighbors coincide in
    pairs (small closed surfaces); accepted but worth flagging."""
    if bw is None:
        return 0
    count = 0
    for t in sorted(bw.black_triangles()):
        ring = []
        for v in surf.triangles[t]:
            ring += [o for o in surf.vertex_triangles[v]
                     if o != t and bw.face_colors.get(o) == mesh.BLACK]
        if len(ring) != len(set(ring)):
            count += 1
    return count


def cmd_holonomy(args) -> dict:
    surf = _load_mesh(args)
    connection = _load_connection(args, surf)
    if connection.is_canonical:
        cls = conn_mod.classify_holonomy(connection)
        return {
            "group": cls.group,
            "dim": cls.covariant_dimension,
            "generators": [list(p) for p in cls.generators],
            "rho1": list(cls.rho1),
        }
    gens = conn_mod.holonomy_generators(connection)
    return {
        "zero_curvature": True,
        "generators": [{"trace": g[0][0] + g[1][1], "det": g[0][0] * g[1][1]
                        - g[0][1] * g[1][0]} for g in gens],
    }


def cmd_covariants(args) -> dict:
    surf = _load_mesh(args)
    connection = _load_connection(args, surf)
    space = solver.covariant_constants(connection)
    return {
        "dimension": space.dimension,
        "basis": [{str(v): psi[v] for v in sorted(psi)} for psi in space.basis],
    }


def cmd_maxprinciple(args) -> dict:
    surf = _load_mesh(args)
    if args.domain:
        dom = io.parse_domain(_read(args.domain), surf)
    else:
        dom = mesh.whole_domain(surf)
    fc = mesh.bw_face_coloring(dom)
    vc = mesh.three_vertex_coloring(dom)
    if fc is None or vc is None:
        raise TriholoError("domain admits no b/w or tri-coloring")
    if args.psi:
        values = io.parse_boundary_values(_read(args.psi))
        result = solver.solve_bw(dom, fc, values)
        psi = result.values
    else:
        rng = random.Random(args.seed)
        free = solver.determining_vertex_set(dom, fc)
        boundary = {v: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for v in free}
        psi = solver.solve_bw(dom, fc, boundary).values
    report = solver.max_principle_check(dom, psi, fc, vc)
    images = solver.hat_map(dom, psi, fc, vc)
    payload = {
        "ok": report.ok,
        "point_hull": report.point_hull,
        "hull_corners": [[p[0], p[1]] for p in report.hull_corners],
        "corner_violations": [[p[0], p[1]] for p in report.corner_violations],
        "containment_violations": report.containment_violations,
        "betweenness_failures": report.betweenness_failures,
        "checked_internal": report.checked_internal,
    }
    from .svgplot import scatter_hull_svg

    boundary_imgs = sorted({images[t] for t in dom.lower_boundary() & set(images)})
    svg = scatter_hull_svg(list(images.values()), solver.convex_hull(boundary_imgs))
    return payload, None, svg


def cmd_taylor(args) -> dict:
    w = _window(args.window)
    rng = random.Random(args.seed)
    psi = lattice.random_holomorphic(w, rng)
    order = args.order
    seq = lattice.default_admissible(w.center(), order)
    coeffs = lattice.taylor_coefficients(psi, seq, order)
    basis = lattice.poly_space_basis(seq, order, w)
    exact = []
    for k in range(order + 1):
        ps = lattice.taylor_partial_sum(seq, coeffs[: k + 1], w, basis[: 2 * k + 2])
        tri = seq.triangle(k)
        exact.append(all(ps[p] == psi[p] for p in tri.points()))
    payload = {
        "coefficients": [[c[0], c[1]] for c in coeffs],
        "partial_sums_exact_on_Tk": exact,
        "ok": all(exact),
    }
    csv = "k,alpha1,alpha2\n" + "\n".join(
        f"{k},{c[0]},{c[1]}" for k, c in enumerate(coeffs)) + "\n"
    return payload, csv, None


def cmd_cauchy(args) -> dict:
    w = _window(args.window)
    rng = random.Random(args.seed)
    psi = lattice.random_holomorphic(w, rng, pad=1)
    if args.domain:
        dom = io.parse_lattice_domain_points(_read(args.domain))
        for v in dom.vertices():
            if not w.contains(v):
                raise TriholoError(f"domain vertex {v} outside the window")
    else:
        tris = set()
        cx, cy = w.center()
        x, y = cx, cy
        for _ in range(max(8, (w.x1 - w.x0))):
            tris.add(("b", (x, y)))
            tris.add(("w", (x - 1, y - 1)))
            x += rng.choice((-1, 0, 1))
            y += rng.choice((-1, 0, 1))
            x = min(max(x, w.x0 + 2), w.x1 - 2)
            y = min(max(y, w.y0 + 2), w.y1 - 2)
        dom = lattice.LatticeDomain(frozenset(tris))
    data = {v: psi[v] for v in dom.vertices()}
    rec = lattice.cauchy_reconstruct(dom, data)
    exact = all(rec[v] == psi[v] for v in dom.vertices())
    payload = {
        "domain_triangles": len(dom.tris),
        "vertices": len(dom.vertices()),
        "exact": exact,
        "ok": exact,
    }
    grid = lattice.LatticeFunction(
        {p: rec[p] for p in dom.vertices()},
        lattice.Window(min(p[0] for p in rec), max(p[0] for p in rec),
                       min(p[1] for p in rec), max(p[1] for p in rec)))
    from .svgplot import lattice_heatmap_svg

    return payload, io.lattice_csv(grid), lattice_heatmap_svg(grid)


def cmd_green(args) -> dict:
    w = _window(args.window)
    g = lattice.build_green(w)
    payload = {
        "window": [w.x0, w.x1, w.y0, w.y1],
        "values": {f"{p[0]},{p[1]}": g[p] for p in w.points() if g[p] != 0},
        "ok": True,
    }
    from .svgplot import lattice_heatmap_svg

    return payload, io.lattice_csv(g), lattice_heatmap_svg(g)


def cmd_factorize(args) -> dict:
    w = _window(args.window)
    text = _read(args.op)
    op = io.parse_operator(text)
    coeff = {name: op.coefficient(alpha)
             for name, alpha in opalgebra.SCHRODINGER_SHIFTS.items()}
    lop = opalgebra.SchrodingerOperator(**coeff)
    mode = args.mode
    inner = w.shrink(left=1, right=1, bottom=1, top=1)
    rows = ["n1,n2,color,c0,c1,c2,potential"]
    payload = {"window": [w.x0, w.x1, w.y0, w.y1], "mode": mode, "colors": {}}
    done = 0
    for color in ("black", "white"):
        try:
            fac = opalgebra.factorize(lop, color, w, mode=mode)
            names = ("u", "v", "w") if color == "black" else ("x", "y", "z")
            sample = {}
            for n in inner.points():
                cs = [fac.coeffs[k](n) for k in names]
                rows.append(f"{n[0]},{n[1]},{color},"
                            + ",".join(str(c) for c in cs) + f",{fac.potential(n)}")
                sample[f"{n[0]},{n[1]}"] = ([str(c) for c in cs]
                                            + [str(fac.potential(n))])
            payload["colors"][color] = sample
            done += 1
        except opalgebra.NotFactorizable as exc:
            # rational mode may hit irrational square roots for one color
            payload["colors"][color] = {"not_factorizable": str(exc)}
    if done == 0:
        raise TriholoError("neither color factorizes in this mode")
    payload["ok"] = True
    return payload, "\n".join(rows) + "\n", None


def cmd_qcd_identity(args) -> dict:
    w = _window(args.window)
    if args.mode == "rational":
        rep = opalgebra.verify_qcd_identity(frac(args.c), frac(args.d), w,
                                            q=frac(args.q), s=frac(args.s))
    else:
        if args.l is None:
            raise ValueError("float mode needs --l l11,l12,l21,l22")
        l11, l12, l21, l22 = (float(v) for v in args.l.split(","))
        rep = opalgebra.verify_qcd_identity(float(args.c), float(args.d), w,
                                            l=[[l11, l12], [l21, l22]], tol=args.tol)
    return {"holds": rep.holds, "q": str(rep.q), "mode": rep.mode, "ok": rep.holds}


def cmd_ksimplicial(args) -> dict:
    simplices = []
    for line in _read(args.complex).splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "s":
            raise ValueError(f"bad complex line: {line!r}")
        simplices.append(tuple(int(p) for p in parts[1:]))
    x = simplicial.SimplicialComplexK(simplices)
    hol = simplicial.classify_holonomy_k(x)
    rep = simplicial.bw_factorization_check(x)
    return {
        "k": x.k,
        "simplices": x.num_simplices,
        "group_order": len(hol.group),
        "orbit_count": hol.orbit_count,
        "covariant_dimension": hol.covariant_dimension,
        "kernel_dimension": rep.kernel_dimension,
        "kernel_matches_covariants": rep.kernel_matches_covariants,
        "bw_exists": rep.bw_exists,
        "factorization_holds": rep.factorization_holds,
        "ok": True,
    }


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triholo",
                                description="triangle operators and discrete holomorphy")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window_default=None):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--mode", choices=("rational", "float"), default="rational")
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("json", "csv", "svg"), default=None)
        if window_default is not None:
            sp.add_argument("--window", type=int, nargs="+", default=window_default)

    sp = sub.add_parser("mesh-check")
    sp.add_argument("--mesh", required=True)
    common(sp)
    sp.set_defaults(func=cmd_mesh_check)

    sp = sub.add_parser("holonomy")
    sp.add_argument("--mesh", required=True)
    sp.add_argument("--conn", default=None)
    common(sp)
    sp.set_defaults(func=cmd_holonomy)

    sp = sub.add_parser("covariants")
    sp.add_argument("--mesh", required=True)
    sp.add_argument("--conn", default=None)
    common(sp)
    sp.set_defaults(func=cmd_covariants)

    sp = sub.add_parser("maxprinciple")
    sp.add_argument("--mesh", required=True)
    sp.add_argument("--domain", default=None)
    sp.add_argument("--psi", default=None)
    common(sp)
    sp.set_defaults(func=cmd_maxprinciple)

    sp = sub.add_parser("taylor")
    sp.add_argument("--order", type=int, default=5)
    common(sp, window_default=[-16, 10, -16, 10])
    sp.set_defaults(func=cmd_taylor)

    sp = sub.add_parser("cauchy")
    sp.add_argument("--domain", default=None,
                    help="lattice domain file (`d b|w n1 n2` lines)")
    common(sp, window_default=[-12, 12, -12, 12])
    sp.set_defaults(func=cmd_cauchy)

    sp = sub.add_parser("green")
    common(sp, window_default=[-5, 25])
    sp.set_defaults(func=cmd_green)

    sp = sub.add_parser("factorize")
    sp.add_argument("--op", required=True)
    common(sp, window_default=[0, 11, 0, 11])
    sp.set_defaults(func=cmd_factorize)

    sp = sub.add_parser("qcd-identity")
    sp.add_argument("--c", default="1")
    sp.add_argument("--d", default="1")
    sp.add_argument("--q", default="2")
    sp.add_argument("--s", default="3")
    sp.add_argument("--l", default=None, help="l11,l12,l21,l22 for float mode")
    common(sp, window_default=[-5, 5, -5, 5])
    sp.set_defaults(func=cmd_qcd_identity)

    sp = sub.add_parser("ksimplicial")
    sp.add_argument("--complex", required=True)
    common(sp)
    sp.set_defaults(func=cmd_ksimplicial)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.mode == "float" and args.tol is None:
        parser.error("--mode float requires --tol")
    if args.mode == "rational" and args.tol is not None:
        parser.error("--tol is only meaningful with --mode float")
    try:
        result = args.func(args)
    except (TriholoError, ValueError, OSError, KeyError) as exc:
        body = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(body, sort_keys=True), file=sys.stderr)
        print(json.dumps(body, sort_keys=True))
        return 1
    if isinstance(result, tuple):
        payload, csv, svg = result
    else:
        payload, csv, svg = result, None, None
    _emit(args, payload, csv, svg)
    return 0 if payload.get("ok", True) else 1


if __name__ == "__main__":
    sys.exit(main())
