"""Exact computation of loci of period matrices on which integral classes stay (1,1)."""

from .exactmath import QuadExt, is_rational_square, qsign, rref
from .nslocus import (FiberReport, LocusProblem, approximate_abelian, build_equations, classify,
                      family_certificate, projective_closure, random_triple, solve_points, sweep)
from .polyring import Ideal, MonomialOrder, Poly, PolyRing, buchberger, normal_form, saturate
from .torus import (HermitianForm, NSClass, PeriodMatrix, find_polarization, hermitian_form,
                    ns_rank, riemann_residual, triple_span)

__version__ = "0.1.0"
