"""
Polarizing tau = i * I_3
========================
"""

from fractions import Fraction

from toruslocus.torus import (PeriodMatrix, find_polarization, hermitian_form, ns_rank,
                              standard_symplectic)

tau = PeriodMatrix([[0] * 3] * 3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], Fraction(-1))
print(tau.validity())

# The (1,1)-classes here are those with A = C and B symmetric: 3 + 6 of them.
nr = ns_rank(tau)
print("rank", nr.rank)

# The standard symplectic class has Hermitian form I_3.
H = hermitian_form(standard_symplectic(3), tau)
print([[str(x.a) for x in row] for row in H.matrix])

# The search walks coefficient vectors shell by shell and stops at the
# first positive definite form.
v = find_polarization(tau, bound=1)
print(type(v).__name__, v.coefficients, v.H.leading_minors())

# With maximal rank at g = 3 no search is needed at all.
print(find_polarization(tau, bound=1, shortcut=True))
