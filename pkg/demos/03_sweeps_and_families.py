"""
Random g = 4 triples, the parametric family, and abelian approximations
=======================================================================
"""

from fractions import Fraction

from toruslocus.nslocus import LocusProblem, approximate_abelian, family_certificate, sweep
from toruslocus.torus import NSClass, PeriodMatrix

# A couple of seeded g = 4 triples: the locus is empty each time.
for row in sweep(4, range(2)):
    print("seed", row.seed, "empty" if row.empty else f"dim {row.dim}")

# Family of triples with A, B symbolic and C fixed. After 31 S-pairs every
# leading term still involves a t-variable, so no nearby fiber is empty.
cert = family_certificate(31)
print("holds:", cert.holds, "| pairs:", cert.pairs_processed,
      "| specialization inside the fiber:", cert.specialization_contained)
print(cert.lead_terms[:5])

# With C = 0 the relations are linear, and points on the locus can be pushed
# toward a base point one step 1/k at a time.
Z = [[0] * 3] * 3
classes = [NSClass.from_blocks(Z, B, Z) for B in
           ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 1, 0], [0, 0, 0]])]
base = PeriodMatrix(Z, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], Fraction(-1))
for p in approximate_abelian(LocusProblem(tuple(classes)), base, 4):
    print(p.k, p.distance, p.ns_rank, p.polarization["verdict"])
