"""Triangle operators on triangulated surfaces and discrete holomorphy
on the equilateral lattice.

Modules
-------
mesh        surfaces, stars, thick paths, colorings, loop characters
connection  discrete connections, curvature, transport, holonomy groups
solver      covariant constants, L = Q+Q, boundary solves, max principle
lattice     Z^2 calculus: Q/Q+, trefoil, polynomials, Taylor, Green, Cauchy
opalgebra   difference-operator algebra and Schrodinger factorizations
simplicial  the k-dimensional generalization on simplicial complexes
io          line-oriented file formats; cli: the `triholo` entry point
"""

from .errors import TriholoError

__all__ = ["TriholoError"]
__version__ = "0.1.0"
