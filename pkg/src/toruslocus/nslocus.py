"""Loci of period matrices on which three integral classes stay of type (1,1).

Pipeline: :func:`build_equations` gives the strictly upper entries of
``A_i - B_i T + T^T B_i^T + T^T C_i T`` for a symbolic ``T``;
:func:`projective_closure` homogenizes a grevlex Groebner basis with ``t_0``
and saturates; :func:`classify` reads off emptiness, dimension, degree and,
for small fibers, the exact points.

Variables are ``t_0`` (homogenizer) and ``t_1 .. t_{g^2}``. With the default
``flattening="column"`` the symbolic matrix is ``T[i][j] = t_{1 + i + g*j}``
(columns filled first); ``"row"`` gives ``T[i][j] = t_{1 + g*i + j}``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactmath import QuadExt, format_rational, is_rational_square, rational_sqrt, rref
from .polyring import (GREVLEX, Ideal, MonomialOrder, Poly, PolyRing, buchberger, dehomogenize,
                       dimension, homogenize, normal_form, quotient_degree, saturate)
from .torus import (NSClass, PeriodMatrix, find_polarization, ns_rank, riemann_residual,
                    triple_span, verdict_to_json)

FLATTENINGS = ("column", "row")


class UnsupportedShape(ValueError):
    pass


class NonlinearLocus(ValueError):
    pass


class InfeasibleBase(ValueError):
    pass


def t_names(g: int) -> list[str]:
    return [f"t_{k}" for k in range(g * g + 1)]


def locus_ring(g: int) -> PolyRing:
    return PolyRing(t_names(g), GREVLEX)


def tau_index(g: int, i: int, j: int, flattening: str = "column") -> int:
    """Index of the t-variable holding tau[i][j] (0-based i, j)."""
    if flattening == "column":
        return 1 + i + g * j
    if flattening == "row":
        return 1 + g * i + j
    raise ValueError(f"unknown flattening {flattening!r}")


@dataclass(frozen=True)
class LocusProblem:
    classes: tuple[NSClass, NSClass, NSClass]
    flattening: str = "column"

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.flattening not in FLATTENINGS:
            raise ValueError(f"unknown flattening {self.flattening!r}")
        triple_span(self.classes)

    @property
    def g(self) -> int:
        return self.classes[0].g

    @property
    def ring(self) -> PolyRing:
        return locus_ring(self.g)

    def equations(self) -> list[Poly]:
        return build_equations(self.classes, self.flattening)


def symbolic_tau(ring: PolyRing, g: int, flattening: str = "column") -> list[list[Poly]]:
    return [[ring.var(f"t_{tau_index(g, i, j, flattening)}") for j in range(g)]
            for i in range(g)]


def _relation_matrix(ring, A, B, C, T, h=None):
    """``A h^2 - B T h + T^T B^T h + T^T C T`` (``h`` = 1 when not given)."""
    g = len(T)
    one = ring.const(1)
    h = one if h is None else h
    h2 = h * h
    BT = [[sum((B[i][k] * T[k][j] for k in range(g) if B[i][k]), ring.zero())
           for j in range(g)] for i in range(g)]
    CT = [[sum((C[i][k] * T[k][j] for k in range(g) if C[i][k]), ring.zero())
           for j in range(g)] for i in range(g)]
    out = [[None] * g for _ in range(g)]
    for i in range(g):
        for j in range(g):
            quad = sum((T[k][i] * CT[k][j] for k in range(g)), ring.zero())
            out[i][j] = A[i][j] * h2 - BT[i][j] * h + BT[j][i] * h + quad
    return out


def build_equations(classes: Sequence[NSClass], flattening: str = "column",
                    ring: PolyRing | None = None) -> list[Poly]:
    """The 3*binom(g,2) relations in ``t_1..t_{g^2}``, class by class, entries (i<j)."""
    g = classes[0].g
    ring = ring or locus_ring(g)
    T = symbolic_tau(ring, g, flattening)
    eqs = []
    for E in classes:
        R = _relation_matrix(ring, _const(ring, E.A), _const(ring, E.B), _const(ring, E.C), T)
        eqs.extend(R[i][j] for i in range(g) for j in range(i + 1, g))
    return eqs


def _const(ring, M):
    return [[ring.const(x) if x else 0 for x in row] for row in M]


def projective_closure(eqs: Sequence[Poly], hvar: str = "t_0") -> Ideal:
    """Homogenized grevlex Groebner basis, saturated by ``hvar``."""
    eqs = [e for e in eqs if e]
    if not eqs:
        raise ValueError("no nonzero equations")
    ring = eqs[0].ring
    affine = buchberger(eqs).basis
    hom = [homogenize(f, hvar) for f in affine]
    return saturate(Ideal(hom, ring), ring.var(hvar))


# -- classification -------------------------------------------------------------

@dataclass
class FiberPoint:
    coordinates: list[QuadExt]
    tau: PeriodMatrix | None
    discriminant: Fraction | None
    validity: str | None = None
    ns_rank: int | None = None
    polarization: dict | None = None

    def to_json(self) -> dict:
        return {
            "coordinates": [c.to_json() for c in self.coordinates],
            "tau": None if self.tau is None else self.tau.to_json(),
            "discriminant": None if self.discriminant is None else format_rational(self.discriminant),
            "validity": self.validity,
            "ns_rank": self.ns_rank,
            "polarization": self.polarization,
        }


@dataclass
class FiberReport:
    empty: bool
    dim: int
    degree: int | None
    generators: list[Poly]
    chart: str | None = None
    points: list[FiberPoint] = field(default_factory=list)
    irreducible_over_Q: bool | None = None
    discriminant: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "empty": self.empty,
            "dim": self.dim,
            "degree": self.degree,
            "generators": [str(f) for f in self.generators],
            "chart": self.chart,
            "discriminant": None if self.discriminant is None else format_rational(self.discriminant),
            "irreducible_over_Q": self.irreducible_over_Q,
            "points": [p.to_json() for p in self.points],
        }


def chart_order(ring: PolyRing) -> list[str]:
    """t_0 first, then the remaining variables from the last one down."""
    return [ring.names[0]] + list(reversed(ring.names[1:]))


def _cone_dimension(gens: Sequence[Poly], ring: PolyRing) -> int:
    return dimension(buchberger(gens).basis, ring.nvars) if gens else ring.nvars


def classify(I: Ideal, flattening: str = "column", analyse_points: bool = True,
             polarization_bound: int = 2) -> FiberReport:
    """Classify the projective scheme of a homogeneous ideal saturated by t_0."""
    ring = I.ring
    gb = I.groebner()
    cone = dimension(gb, ring.nvars)
    if cone <= 0:
        return FiberReport(True, -1, None, gb)
    pdim = cone - 1
    if pdim > 0:
        return FiberReport(False, pdim, None, gb)
    chart = None
    for v in chart_order(ring):
        if _cone_dimension(gb + [ring.var(v)], ring) <= 0:
            chart = v
            break
    if chart is None:
        raise RuntimeError("no chart without points at infinity")
    affine = _dehomogenized_basis(gb, chart)
    others = [k for k, n in enumerate(ring.names) if n != chart]
    deg = quotient_degree(affine, ring.nvars, others)
    report = FiberReport(False, 0, deg, gb, chart=chart)
    if deg == 1:
        report.irreducible_over_Q = True
    if deg <= 2:
        sols, D = _solve_chart(affine, ring, chart)
        report.discriminant = D
        if deg == 2:
            report.irreducible_over_Q = not is_rational_square(D)
        g = _g_from_ring(ring)
        report.points = [_make_point(c, D, g, flattening) for c in sols]
        if analyse_points:
            for p in report.points:
                _analyse_point(p, polarization_bound)
    return report


def _g_from_ring(ring: PolyRing) -> int:
    n = ring.nvars - 1
    g = round(n ** 0.5)
    if g * g != n:
        raise ValueError("ring is not a locus ring t_0..t_{g^2}")
    return g


def _dehomogenized_basis(gb: Sequence[Poly], chart: str) -> list[Poly]:
    return buchberger([dehomogenize(f, chart) for f in gb]).basis


def _solve_chart(affine: Sequence[Poly], ring: PolyRing, chart: str):
    """Exact points of a degree <= 2 reduced grevlex basis on a chart.

    Returns the projective coordinate vectors (chart coordinate 1) and the
    discriminant of the quadratic (None for a single point).
    """
    ci = ring.index[chart]
    others = [k for k in range(ring.nvars) if k != ci]
    linear: dict[int, Poly] = {}
    quad = None
    for f in affine:
        d = f.total_degree()
        nz = [k for k, x in enumerate(f.lm) if x]
        if d == 0:
            return [], None
        if d == 1 and len(nz) == 1:
            linear[nz[0]] = f
        elif d == 2 and len(nz) == 1 and f.lm[nz[0]] == 2 and quad is None:
            quad = (nz[0], f)
        else:
            raise UnsupportedShape(f"unexpected basis element {f}")
    free = [k for k in others if k not in linear]
    if quad is None and not free:
        roots, D, v = [None], None, None
    elif quad is not None and free == [quad[0]]:
        v, q = quad
        if (q.support() - {v}):
            raise UnsupportedShape("quadratic is not univariate")
        e2 = tuple(2 if k == v else 0 for k in range(ring.nvars))
        e1 = tuple(1 if k == v else 0 for k in range(ring.nvars))
        p = q.coefficient(e1)
        c0 = q.coefficient(ring.zero_mono)
        D = p * p - 4 * c0
        if D == 0:
            raise UnsupportedShape("double root")
        if is_rational_square(D):
            s = rational_sqrt(D)
            roots = [QuadExt((-p + s) / 2), QuadExt((-p - s) / 2)]
        else:
            roots = [QuadExt(-p / 2, Fraction(1, 2), D), QuadExt(-p / 2, Fraction(-1, 2), D)]
        assert q.coefficient(e2) == 1
    else:
        raise UnsupportedShape("basis is not linear plus one univariate quadratic")
    points = []
    for r in roots:
        coords = [QuadExt(0)] * ring.nvars
        coords[ci] = QuadExt(1)
        if v is not None:
            coords[v] = r
        for k, f in linear.items():
            # f = x_k + (terms in v and 1)
            val = QuadExt(0)
            for c, m in f.terms[1:]:
                if sum(m) == 0:
                    val = val - c
                else:
                    val = val - c * r
            coords[k] = val
        points.append(coords)
    return points, (D if v is not None else None)


def _make_point(coords: list[QuadExt], D, g: int, flattening: str) -> FiberPoint:
    h = coords[0]
    tau = None
    if h:
        entries = [[coords[tau_index(g, i, j, flattening)] / h for j in range(g)]
                   for i in range(g)]
        tau = PeriodMatrix.from_entries(entries)
    return FiberPoint(coords, tau, D)


def _analyse_point(p: FiberPoint, bound: int) -> None:
    if p.tau is None:
        return
    p.validity = p.tau.validity()
    p.ns_rank = ns_rank(p.tau).rank
    if p.tau.is_valid:
        p.polarization = verdict_to_json(find_polarization(p.tau, bound, shortcut=True))
    else:
        p.polarization = {"verdict": "NotApplicable", "reason": p.validity}


def solve_points(I: Ideal, chart: str = "t_0", flattening: str = "column"):
    """Exact points of a zero-dimensional degree <= 2 fiber on the given chart.

    Returns a list of ``(PeriodMatrix or None, discriminant, coordinates)``;
    coordinates are projective with the chart coordinate equal to 1.
    """
    ring = I.ring
    affine = _dehomogenized_basis(I.groebner(), chart)
    others = [k for k, n in enumerate(ring.names) if n != chart]
    if dimension(affine, ring.nvars, others) != 0:
        raise UnsupportedShape("fiber is not zero-dimensional on this chart")
    if quotient_degree(affine, ring.nvars, others) > 2:
        raise UnsupportedShape("degree larger than 2")
    sols, D = _solve_chart(affine, ring, chart)
    g = _g_from_ring(ring)
    out = []
    for c in sols:
        p = _make_point(c, D, g, flattening)
        out.append((p.tau, D, c))
    return out


def locus_report(classes: Sequence[NSClass], flattening: str = "column",
                 analyse_points: bool = True, polarization_bound: int = 2) -> FiberReport:
    prob = LocusProblem(tuple(classes), flattening)
    I = projective_closure(prob.equations())
    return classify(I, flattening, analyse_points, polarization_bound)


# -- random triples and sweeps ----------------------------------------------------

@dataclass(frozen=True)
class RandomTriple:
    classes: tuple[NSClass, NSClass, NSClass]
    seed: int
    entry_bound: int
    attempts: int

    def to_json(self) -> dict:
        return {"seed": self.seed, "entry_bound": self.entry_bound, "attempts": self.attempts,
                "classes": [E.to_json() for E in self.classes]}


def random_triple(g: int, seed: int, entry_bound: int = 2, max_tries: int = 1000) -> RandomTriple:
    """Three classes with uniform entries in [-entry_bound, entry_bound] spanning rank 3."""
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    rng = random.Random(seed)
    n = comb(2 * g, 2)
    for attempt in range(1, max_tries + 1):
        classes = tuple(NSClass.from_coords(g, [rng.randint(-entry_bound, entry_bound)
                                                for _ in range(n)]) for _ in range(3))
        if rref([E.coords() for E in classes]).rank == 3:
            return RandomTriple(classes, seed, entry_bound, attempt)
    raise RuntimeError(f"no rank-3 triple after {max_tries} draws")


@dataclass(frozen=True)
class SweepRow:
    seed: int
    empty: bool
    dim: int
    degree: int | None
    triple: RandomTriple

    def to_json(self) -> dict:
        return {"seed": self.seed, "empty": self.empty, "dim": self.dim,
                "degree": self.degree, "triple": self.triple.to_json()}


def _sweep_one(args) -> SweepRow:
    g, seed, entry_bound = args
    tr = random_triple(g, seed, entry_bound)
    rep = locus_report(tr.classes, analyse_points=False)
    return SweepRow(seed, rep.empty, rep.dim, rep.degree, tr)


def sweep(g: int, seeds: Sequence[int], entry_bound: int = 2, jobs: int = 1) -> list[SweepRow]:
    """Classify random triples seed by seed; results come back in seed order."""
    tasks = [(g, s, entry_bound) for s in seeds]
    if jobs <= 1 or len(tasks) <= 1:
        return [_sweep_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_sweep_one, tasks))


# -- the parametric family ---------------------------------------------------------

# Fixed C-blocks of the parameter chart, and the parameter values of the worked triple.
FAMILY_C = (
    ((0, 1, 0), (-1, 0, 0), (0, 0, 0)),
    ((0, 0, 0), (0, 0, 1), (0, -1, 0)),
    ((0, 0, 1), (0, 0, 0), (-1, 0, 0)),
)
FAMILY_POINT = (0, 0, 2, 1, 1, 0, 1, 1, 2, 1, 1, 2,
                1, 2, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0,
                1, 2, 1, 1, 1, 1, 1, 2, 1, 1, 2, 1)
PARAM_PREFIXES = ("e", "f", "g")


def family_ring() -> PolyRing:
    names = t_names(3) + [f"{p}_{k}" for p in PARAM_PREFIXES for k in range(12)]
    weights = [1] * 10 + [0] * 36
    return PolyRing(names, MonomialOrder.weighted(weights))


def family_weights() -> list[int]:
    return [1] * 10 + [0] * 36


def family_relations(ring: PolyRing | None = None) -> list[Poly]:
    """The nine relations with symbolic A_i, B_i and the fixed C_i."""
    ring = ring or family_ring()
    v = ring.var
    T = symbolic_tau(ring, 3, "column")
    eqs = []
    for p, C in zip(PARAM_PREFIXES, FAMILY_C):
        a0, a1, a2 = v(f"{p}_0"), v(f"{p}_1"), v(f"{p}_2")
        z = ring.zero()
        A = [[z, a0, a1], [-a0, z, a2], [-a1, -a2, z]]
        B = [[v(f"{p}_{3 + 3 * i + j}") for j in range(3)] for i in range(3)]
        R = _relation_matrix(ring, A, B, _const(ring, C), T)
        eqs.extend(R[i][j] for i in range(3) for j in range(i + 1, 3))
    return eqs


def family_triple() -> tuple[NSClass, NSClass, NSClass]:
    """The classes obtained by specializing the parameters at FAMILY_POINT."""
    out = []
    for k, C in enumerate(FAMILY_C):
        vals = FAMILY_POINT[12 * k:12 * (k + 1)]
        a = vals[:3]
        B = [list(vals[3 + 3 * i:6 + 3 * i]) for i in range(3)]
        A = [[0, a[0], a[1]], [-a[0], 0, a[2]], [-a[1], -a[2], 0]]
        out.append(NSClass.from_blocks(A, B, [list(r) for r in C]))
    return tuple(out)


@dataclass
class FamilyCertificate:
    holds: bool
    specialization_contained: bool
    specialization_equal: bool
    pair_limit: int
    pairs_processed: int
    pairs_skipped: int
    pairs_remaining: int
    complete: bool
    partial_basis_size: int
    lead_terms: list[str]
    specialized_basis: list[Poly]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "specialization_contained": self.specialization_contained,
            "specialization_equal": self.specialization_equal,
            "pair_limit": self.pair_limit,
            "pairs_processed": self.pairs_processed,
            "pairs_skipped": self.pairs_skipped,
            "pairs_remaining": self.pairs_remaining,
            "complete": self.complete,
            "partial_basis_size": self.partial_basis_size,
            "lead_terms": self.lead_terms,
            "specialized_basis": [str(f) for f in self.specialized_basis],
        }


def family_certificate(pair_limit: int = 31, expected: Sequence[Poly] | None = None) -> FamilyCertificate:
    """Lead-term nonemptiness certificate from a pair-limited basis of the family ideal.

    ``expected`` is the fiber basis the specialization is compared against;
    defaults to the closure of the specialized triple computed directly.
    """
    if pair_limit < 0:
        raise ValueError("pair_limit must be >= 0")
    ring = family_ring()
    res = buchberger(family_relations(ring), pair_limit=pair_limit)
    w = family_weights()
    hom = [homogenize(f, "t_0", w) for f in res.basis]
    tvars = range(10)
    holds = all(any(f.lm[k] for k in tvars) for f in hom)
    lead = [str(f.lt()) for f in hom]

    sub = dict(zip(ring.names[10:], FAMILY_POINT))
    fib_ring = locus_ring(3)
    special = []
    for f in hom:
        s = f.subs(sub)
        if s:
            special.append(Poly(fib_ring, {m[:10]: c for m, c in s.as_dict().items()}))
    spec_basis = buchberger(special).basis if special else []
    if expected is None:
        expected = projective_closure(build_equations(family_triple())).groebner()
    expected = [f.to_ring(fib_ring) for f in expected]
    contained = bool(spec_basis) and all(not normal_form(f, spec_basis) for f in expected)
    equal = spec_basis == buchberger(expected).basis
    return FamilyCertificate(holds, contained, equal, pair_limit, res.pairs_processed,
                             res.pairs_skipped, res.pairs_remaining, res.complete,
                             len(res.basis), lead, spec_basis)


# -- abelian approximations in the linear case ---------------------------------------

@dataclass
class ApproximationPoint:
    k: int
    tau: PeriodMatrix
    distance: Fraction
    ns_rank: int
    polarization: dict

    def to_json(self) -> dict:
        return {"k": self.k, "tau": self.tau.to_json(), "distance": format_rational(self.distance),
                "ns_rank": self.ns_rank, "polarization": self.polarization}


def _linear_system(classes, g):
    """Rows of X -> strictly-upper entries of -B X + X^T B^T, per class, over g^2 unknowns."""
    rows, rhs = [], []
    for E in classes:
        B, A = E.B, E.A
        for i in range(g):
            for j in range(i + 1, g):
                row = [Fraction(0)] * (g * g)
                for k in range(g):
                    # -(B X)[i][j] = -sum_k B[i][k] X[k][j]
                    row[k * g + j] -= B[i][k]
                    # (X^T B^T)[i][j] = (B X)[j][i] = sum_k B[j][k] X[k][i]
                    row[k * g + i] += B[j][k]
                rows.append(row)
                rhs.append(Fraction(-A[i][j]))
    return rows, rhs


def approximate_abelian(problem: LocusProblem, base: PeriodMatrix, n: int,
                        m: Fraction | None = None, polarization_bound: int = 1) -> list[ApproximationPoint]:
    """Period matrices tau_k on the locus with max-norm distance <= 1/k to ``base``.

    Only for triples with all C-blocks zero: the relations are then affine
    linear with rational coefficients, so real and theta parts separate.
    """
    g = problem.g
    if any(any(E.c) for E in problem.classes):
        raise NonlinearLocus("approximation is only constructive when every C block vanishes")
    if base.g != g:
        raise ValueError("base has the wrong size")
    if any(any(x for row in riemann_residual(E, base) for x in row) for E in problem.classes):
        raise InfeasibleBase("base period matrix is not on the locus")
    field_m = base.m if base.m is not None else m
    if field_m is None or field_m >= 0:
        raise ValueError("need a field parameter m < 0")
    if m is not None and base.m is not None and any(x for r in base.Q for x in r) and m != base.m:
        raise ValueError("m disagrees with the base period matrix")
    rows, _ = _linear_system(problem.classes, g)
    kern = rref(rows, g * g).kernel if rows else ()
    direction = [sum((v[k] for v in kern), Fraction(0)) for k in range(g * g)]
    scale = max((abs(x) for x in direction), default=Fraction(0))
    if scale:
        direction = [x / scale for x in direction]
    out = []
    for k in range(1, n + 1):
        delta = Fraction(1, k)
        for _ in range(64):
            P = [[base.P[i][j] + delta * direction[i * g + j] for j in range(g)] for i in range(g)]
            Q = [[base.Q[i][j] + delta * direction[i * g + j] for j in range(g)] for i in range(g)]
            tau = PeriodMatrix(P, Q, field_m)
            if tau.is_valid:
                break
            delta /= 2
        else:
            continue
        for E in problem.classes:
            assert all(not x for row in riemann_residual(E, tau) for x in row)
        dist = max(abs(x) for row_a, row_b in ((tau.P, base.P), (tau.Q, base.Q))
                   for ra, rb in zip(row_a, row_b) for x in (a - b for a, b in zip(ra, rb)))
        rank = ns_rank(tau).rank
        verdict = find_polarization(tau, polarization_bound, shortcut=True)
        out.append(ApproximationPoint(k, tau, dist, rank, verdict_to_json(verdict)))
    return out
