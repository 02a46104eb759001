"""
The worked g = 3 fiber
======================

Three integral classes, their locus of period matrices, and the two points
that make up the fiber.
"""

from toruslocus.cli import fixture_path, load_classes
from toruslocus.nslocus import build_equations, classify, projective_closure

# The classes ship as a fixture; each one is (a, b, c) = upper A, B, upper C.
classes, flattening = load_classes(fixture_path("worked_triple.json"))
for E in classes:
    print(E.to_json())

# Nine relations in t_1..t_9, three per class.
eqs = build_equations(classes, flattening)
print(len(eqs), "equations, e.g.", eqs[0])

# Homogenize with t_0 and saturate; the reduced grevlex basis is 8 linear forms
# and a single quadratic.
ideal = projective_closure(eqs)
for f in ideal.groebner():
    print("  ", f)

# Classify: a zero-dimensional scheme of degree 2 whose quadratic has an
# irrational discriminant, so its two points are conjugate over Q(sqrt(D)).
rep = classify(ideal, flattening)
print("dim", rep.dim, "degree", rep.degree, "D =", rep.discriminant,
      "Q-irreducible:", rep.irreducible_over_Q)

# Both points are real, hence degenerate as tori, yet the formal rank is 9.
for p in rep.points:
    print(p.tau.entries[0], "...", p.validity, "rank", p.ns_rank)
