"""Difference-operator algebra: adjoints, Schrodinger factorizations, the
exponential-coefficient identity and the zero-curvature f-criterion."""

import random
from fractions import Fraction

from triholo import opalgebra as OA
from triholo.lattice import Window

rng = random.Random(5)
win = Window(0, 11, 0, 11)

# --- factorization round trip -------------------------------------------------
lop = OA.random_factorizable(rng, "black")
fac = OA.factorize(lop, "black", win)
n = (5, 5)
print("black factorization at", n, ":",
      "u =", fac.coeffs["u"](n), " v =", fac.coeffs["v"](n),
      " w =", fac.coeffs["w"](n), " potential =", fac.potential(n))
print("recomposition Q+Q + U == L exactly:",
      OA.equal_on_window(fac.recompose(), lop.to_operator(), win))

# --- the two colors give different potentials ----------------------------------
both = OA.exponential_both_colors()
small = Window(-4, 4, -4, 4)
fb = OA.factorize(both, "black", small)
fw = OA.factorize(both, "white", small)
print("\nnon-constant L factorizable both ways:")
print("  U(1,1) =", fb.potential((1, 1)), "  V(1,1) =", fw.potential((1, 1)),
      " (different, as the theory allows)")

# --- exponential coefficient identity -------------------------------------------
rep = OA.verify_qcd_identity(Fraction(1, 2), 2, small, q=Fraction(3, 2), s=5)
print("\nQ(c,d)+Q(c,d) - 1 = q^2 (Q' Q'+ - 1) with q = 3/2:", rep.holds)
rep_f = OA.verify_qcd_identity(1.0, 1.5, small, l=[[0.25, 0.1], [0.4, 0.25]])
print("same identity in float mode (tol 1e-12):", rep_f.holds)

# --- zero-curvature f-criterion --------------------------------------------------
s = Fraction(2)
qw = OA.DifferenceOperator({(0, 0): 1,
                            (1, 0): lambda n: s ** n[1],
                            (0, 1): lambda n: s ** (-n[0])})
qb = OA.adjoint(qw)
f = OA.zero_curvature_f_criterion(qw, qb, small)
print("\nexponential pair with l12 + l21 = 0: f exists ->", f is not None,
      "; f(0,0) =", f[(0, 0)])
qw_bad = OA.DifferenceOperator({(0, 0): 1,
                                (1, 0): lambda n: Fraction(n[0] + 8), (0, 1): 1})
qb_bad = OA.DifferenceOperator({(0, 0): 1,
                                (-1, 0): lambda n: Fraction(n[1] + 9), (0, -1): 1})
print("generic pair: f exists ->",
      OA.zero_curvature_f_criterion(qw_bad, qb_bad, small) is not None)
