"""Shared hypothesis strategies and brute-force oracles for the test suites."""

from fractions import Fraction as F

from hypothesis import strategies as st

from toruslocus.polyring import GREVLEX, LEX, Poly, PolyRing
from toruslocus.torus import NSClass, PeriodMatrix

RINGS = {
    (2, "grevlex"): PolyRing(["x", "y"], GREVLEX),
    (3, "grevlex"): PolyRing(["x", "y", "z"], GREVLEX),
    (2, "lex"): PolyRing(["x", "y"], LEX),
    (3, "lex"): PolyRing(["x", "y", "z"], LEX),
}


def monomials(n, max_deg):
    return st.tuples(*[st.integers(0, max_deg)] * n).filter(lambda m: sum(m) <= max_deg)


def polys(ring, max_deg=3, max_terms=3):
    n = ring.nvars
    coef = st.integers(-3, 3).filter(bool)
    terms = st.lists(st.tuples(monomials(n, max_deg), coef), min_size=1, max_size=max_terms)
    return terms.map(lambda ts: Poly(ring, _collect(ts))).filter(bool)


def _collect(ts):
    out = {}
    for m, c in ts:
        out[m] = out.get(m, 0) + F(c)
    return {m: c for m, c in out.items() if c}


def rings(nvars=(2, 3), orders=("grevlex", "lex")):
    return st.sampled_from([RINGS[(n, o)] for n in nvars for o in orders])


def ideals(max_gens=3, max_deg=3, max_terms=3, nvars=(2, 3), orders=("grevlex", "lex")):
    """(ring, generator list) pairs of small ideals."""
    return rings(nvars, orders).flatmap(
        lambda R: st.tuples(st.just(R), st.lists(polys(R, max_deg, max_terms),
                                                 min_size=1, max_size=max_gens)))


# -- brute-force oracle for dimension and degree -------------------------------------

def _monomials_of_degree(n, d):
    if n == 1:
        yield (d,)
        return
    for a in range(d + 1):
        for rest in _monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def _standard(lms, m):
    return not any(all(x >= y for x, y in zip(m, l)) for l in lms)


def brute_dimension_degree(lead_monomials, n):
    """(dimension, degree-or-None) by walking the monomial lattice degree by degree.

    The Hilbert function of the leading-term ideal is tabulated well past the
    point where it becomes polynomial; its growth rate gives the dimension and,
    when it dies out, the total count is the degree.
    """
    lms = list(lead_monomials)
    if any(sum(m) == 0 for m in lms):
        return -1, 0
    top = max((max(m) for m in lms), default=0)
    start = n * top + 2
    hf = [sum(1 for m in _monomials_of_degree(n, d) if _standard(lms, m))
          for d in range(start + n + 2)]
    tail = hf[start:]
    if all(v == 0 for v in tail):
        return 0, sum(hf)
    # degree of the polynomial the tail follows
    k, diffs = 0, tail
    while any(diffs[i] != diffs[0] for i in range(len(diffs))):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        k += 1
    return k + 1, None


# -- torus-side strategies ------------------------------------------------------------

def ns_classes(g, bound=3):
    n = g * (2 * g - 1)
    return st.lists(st.integers(-bound, bound), min_size=n, max_size=n).map(
        lambda v: NSClass.from_coords(g, v))


def _qmat(g, entries):
    return [[entries[i * g + j] for j in range(g)] for i in range(g)]


def period_matrices(g, m_choices=(F(-1), F(-2), F(3), F(-7, 5), F(1900, 3))):
    """Period matrices P + theta*Q with small rational P, Q (not necessarily valid)."""
    q = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    mats = st.lists(q, min_size=g * g, max_size=g * g)
    return st.builds(lambda P, Q, m: PeriodMatrix(_qmat(g, P), _qmat(g, Q), m),
                     mats, mats, st.sampled_from(m_choices))


def valid_period_matrices(g, m_choices=(F(-1), F(-2), F(-7, 5))):
    return period_matrices(g, m_choices).filter(lambda t: t.is_valid)


def rational_points(n, bound=5):
    return st.lists(st.fractions(min_value=-bound, max_value=bound, max_denominator=7),
                    min_size=n, max_size=n)


__all__ = ["RINGS", "polys", "ideals", "rings", "brute_dimension_degree", "ns_classes",
           "period_matrices", "valid_period_matrices", "rational_points"]
