"""Complex tori with period matrix (tau, 1_g) and their integral alternating classes.

An alternating form on the lattice spanned by the columns of ``(tau, 1_g)`` is
stored in block form ``E = [[A, B], [-B^T, C]]`` with ``A`` and ``C``
alternating. It is a (1,1)-class exactly when

    A - B tau + tau^T B^T + tau^T C tau = 0.

Period matrices have entries in a single quadratic field Q(theta); all
computations are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, isqrt
from typing import Sequence

from .exactmath import FieldMismatch, QuadExt, as_rational, det, format_rational, rref


class RankDeficient(ValueError):
    """The classes span fewer than three dimensions."""


class NotOneOne(ValueError):
    """The class is not of type (1,1) for the given period matrix."""


def _upper_pairs(g: int):
    return [(i, j) for i in range(g) for j in range(i + 1, g)]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# -- classes -------------------------------------------------------------------

@dataclass(frozen=True)
class NSClass:
    """An alternating 2g x 2g form in block coordinates (a, b, c).

    ``a`` and ``c`` are the strict upper triangles of A and C (row-major),
    ``b`` is B row-major. Entries are integers, or Fractions for rational
    combinations.
    """

    g: int
    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        k = comb(self.g, 2)
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.a) != k or len(self.c) != k or len(self.b) != self.g ** 2:
            raise ValueError(f"wrong coordinate counts for g={self.g}")

    @classmethod
    def from_blocks(cls, A, B, C) -> "NSClass":
        g = len(B)
        for M in (A, C):
            for i in range(g):
                if M[i][i] != 0 or any(M[i][j] != -M[j][i] for j in range(g)):
                    raise ValueError("A and C must be alternating")
        pairs = _upper_pairs(g)
        return cls(g, [A[i][j] for i, j in pairs],
                   [B[i][j] for i in range(g) for j in range(g)],
                   [C[i][j] for i, j in pairs])

    @classmethod
    def from_coords(cls, g: int, v: Sequence) -> "NSClass":
        k = comb(g, 2)
        v = [_simplify(x) for x in v]
        return cls(g, v[:k], v[k:k + g * g], v[k + g * g:])

    @classmethod
    def zero(cls, g: int) -> "NSClass":
        return cls.from_coords(g, [0] * comb(2 * g, 2))

    def coords(self) -> tuple:
        return self.a + self.b + self.c

    def _alt(self, vals) -> list[list]:
        g = self.g
        M = [[0] * g for _ in range(g)]
        for (i, j), x in zip(_upper_pairs(g), vals):
            M[i][j] = x
            M[j][i] = -x
        return M

    @property
    def A(self) -> list[list]:
        return self._alt(self.a)

    @property
    def C(self) -> list[list]:
        return self._alt(self.c)

    @property
    def B(self) -> list[list]:
        g = self.g
        return [list(self.b[i * g:(i + 1) * g]) for i in range(g)]

    def matrix(self) -> list[list]:
        """The full 2g x 2g skew-symmetric matrix."""
        A, B, C = self.A, self.B, self.C
        g = self.g
        top = [A[i] + B[i] for i in range(g)]
        bottom = [[-B[j][i] for j in range(g)] + C[i] for i in range(g)]
        return top + bottom

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.coords())

    def primitive(self) -> "NSClass":
        """Scale to coprime integer coordinates, keeping the sign."""
        v = [Fraction(x) for x in self.coords()]
        den = 1
        for x in v:
            den = _lcm(den, x.denominator)
        ints = [int(x * den) for x in v]
        d = 0
        for x in ints:
            d = gcd(d, x)
        if d == 0:
            return self
        return NSClass.from_coords(self.g, [x // d for x in ints])

    def __add__(self, other: "NSClass") -> "NSClass":
        _same_g(self, other)
        return NSClass.from_coords(self.g, [x + y for x, y in zip(self.coords(), other.coords())])

    def __sub__(self, other: "NSClass") -> "NSClass":
        return self + (-1) * other

    def __rmul__(self, k) -> "NSClass":
        return NSClass.from_coords(self.g, [k * x for x in self.coords()])

    def __neg__(self):
        return (-1) * self

    def to_json(self) -> dict:
        def enc(x):
            x = _simplify(x)
            return x if isinstance(x, int) else format_rational(x)
        return {"g": self.g, "a": [enc(x) for x in self.a],
                "b": [enc(x) for x in self.b], "c": [enc(x) for x in self.c]}

    @classmethod
    def from_json(cls, d: dict) -> "NSClass":
        def dec(x):
            return _simplify(Fraction(x) if isinstance(x, str) else x)
        g = int(d["g"]) if "g" in d else isqrt(len(d["b"]))
        return cls(g, [dec(x) for x in d["a"]], [dec(x) for x in d["b"]],
                   [dec(x) for x in d["c"]])


def _simplify(x):
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _same_g(*classes):
    if len({E.g for E in classes}) != 1:
        raise ValueError("classes of different dimensions")


# -- period matrices ------------------------------------------------------------

VALID = "ValidTorus"
DEGENERATE = "RealDegenerate"


@dataclass(frozen=True)
class PeriodMatrix:
    """``tau = P + theta*Q`` with rational g x g matrices P, Q and theta^2 = m.

    ``m is None`` means tau is rational.
    """

    P: tuple
    Q: tuple
    m: Fraction | None = None

    def __post_init__(self):
        P = tuple(tuple(as_rational(x) for x in row) for row in self.P)
        Q = tuple(tuple(as_rational(x) for x in row) for row in self.Q)
        g = len(P)
        if any(len(r) != g for r in P) or len(Q) != g or any(len(r) != g for r in Q):
            raise ValueError("P and Q must be square of equal size")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)
        if self.m is not None:
            QuadExt(0, 1, self.m)  # validates m
            object.__setattr__(self, "m", as_rational(self.m))
        elif any(x for row in Q for x in row):
            raise ValueError("nonzero Q needs a field parameter m")

    @property
    def g(self) -> int:
        return len(self.P)

    @classmethod
    def from_entries(cls, entries) -> "PeriodMatrix":
        rows = [[QuadExt.coerce(x) for x in row] for row in entries]
        ms = {x.m for row in rows for x in row if x.b != 0}
        if len(ms) > 1:
            raise FieldMismatch("entries from different quadratic fields")
        m = ms.pop() if ms else None
        return cls([[x.a for x in r] for r in rows], [[x.b for x in r] for r in rows], m)

    @classmethod
    def scalar(cls, z: QuadExt, g: int) -> "PeriodMatrix":
        return cls.from_entries([[z if i == j else QuadExt(0) for j in range(g)]
                                 for i in range(g)])

    @property
    def entries(self) -> list[list[QuadExt]]:
        return [[QuadExt(p, q, self.m) if q else QuadExt(p, 0, self.m)
                 for p, q in zip(pr, qr)] for pr, qr in zip(self.P, self.Q)]

    def validity(self) -> str:
        """ValidTorus iff det(Im tau) != 0, which needs m < 0 and det Q != 0."""
        if self.m is None or self.m > 0:
            return DEGENERATE
        return VALID if det([list(r) for r in self.Q]) != 0 else DEGENERATE

    @property
    def is_valid(self) -> bool:
        return self.validity() == VALID

    def to_json(self) -> dict:
        return {"g": self.g, "m": None if self.m is None else format_rational(self.m),
                "P": [[format_rational(x) for x in r] for r in self.P],
                "Q": [[format_rational(x) for x in r] for r in self.Q]}

    @classmethod
    def from_json(cls, d: dict) -> "PeriodMatrix":
        m = d.get("m")
        P = [[Fraction(x) for x in r] for r in d["P"]]
        Q = d.get("Q") or [[0] * len(P) for _ in P]
        Q = [[Fraction(x) for x in r] for r in Q]
        if int(d.get("g", len(P))) != len(P):
            raise ValueError("g does not match the size of P")
        return cls(P, Q, None if m is None else Fraction(m))


# -- Riemann relation -------------------------------------------------------------

def _mat(M, m=None):
    return [[QuadExt.coerce(x, m) for x in row] for row in M]


def _mul(X, Y):
    n, k, c = len(X), len(Y), len(Y[0])
    return [[sum((X[i][l] * Y[l][j] for l in range(k)), QuadExt(0)) for j in range(c)]
            for i in range(n)]


def _T(X):
    return [list(r) for r in zip(*X)]


def riemann_residual(E: NSClass, tau: PeriodMatrix) -> list[list[QuadExt]]:
    """``A - B tau + tau^T B^T + tau^T C tau`` (an alternating matrix)."""
    if E.g != tau.g:
        raise ValueError("class and period matrix have different g")
    T = tau.entries
    A, B, C = _mat(E.A), _mat(E.B), _mat(E.C)
    BT = _mul(B, T)
    TtC = _mul(_T(T), C)
    TCT = _mul(TtC, T)
    g = E.g
    return [[A[i][j] - BT[i][j] + BT[j][i] + TCT[i][j] for j in range(g)] for i in range(g)]


def is_one_one(E: NSClass, tau: PeriodMatrix) -> bool:
    return all(not x for row in riemann_residual(E, tau) for x in row)


def _coordinate_classes(g: int) -> list[NSClass]:
    n = comb(2 * g, 2)
    return [NSClass.from_coords(g, [1 if k == i else 0 for k in range(n)]) for i in range(n)]


@dataclass(frozen=True)
class NSRank:
    rank: int
    basis: tuple[NSClass, ...]


def ns_rank(tau: PeriodMatrix) -> NSRank:
    """Dimension of the rational solution space of the Riemann relation at ``tau``.

    The residual is linear in the class coordinates; each strictly upper entry
    is split over the Q-basis {1, theta}. This is the Picard number only when
    ``tau`` is a valid torus.
    """
    g = tau.g
    cols = [riemann_residual(E, tau) for E in _coordinate_classes(g)]
    rows = []
    for i, j in _upper_pairs(g):
        rows.append([R[i][j].a for R in cols])
        rows.append([R[i][j].b for R in cols])
    n = comb(2 * g, 2)
    res = rref(rows, n) if rows else None
    kern = res.kernel if res is not None else [
        tuple(Fraction(int(k == i)) for k in range(n)) for i in range(n)]
    return NSRank(len(kern), tuple(NSClass.from_coords(g, v) for v in kern))


# -- Hermitian forms --------------------------------------------------------------

@dataclass(frozen=True)
class HermitianForm:
    """Hermitian form attached to a (1,1)-class on a torus with theta^2 = m < 0.

    ``matrix`` holds ``sqrt(|m|) * H`` with entries in Q(theta), so that
    ``E(v, w)`` is the theta-coefficient of ``v^T matrix conj(w)``. For m = -1
    (theta = i) ``matrix`` is H itself. Positivity is unaffected by the scale.
    """

    matrix: tuple
    m: Fraction

    @property
    def g(self) -> int:
        return len(self.matrix)

    def value(self, v, w) -> QuadExt:
        """``v^T matrix conj(w)`` for vectors over Q(theta)."""
        total = QuadExt(0)
        for r, vr in enumerate(v):
            vr = QuadExt.coerce(vr)
            for s, ws in enumerate(w):
                total = total + vr * self.matrix[r][s] * QuadExt.coerce(ws).conjugate()
        return total

    def is_hermitian(self) -> bool:
        M = self.matrix
        return all(M[r][s] == M[s][r].conjugate() for r in range(self.g) for s in range(self.g))

    def leading_minors(self) -> list[Fraction]:
        out = []
        for k in range(1, self.g + 1):
            d = QuadExt.coerce(det([list(row[:k]) for row in self.matrix[:k]]))
            if d.b != 0:
                raise ArithmeticError("Hermitian minor is not real")
            out.append(d.a)
        return out

    def is_positive_definite(self) -> bool:
        return all(d > 0 for d in self.leading_minors())

    def __add__(self, other: "HermitianForm") -> "HermitianForm":
        return HermitianForm(tuple(tuple(x + y for x, y in zip(r1, r2))
                                   for r1, r2 in zip(self.matrix, other.matrix)), self.m)

    def __rmul__(self, k) -> "HermitianForm":
        return HermitianForm(tuple(tuple(k * x for x in r) for r in self.matrix), self.m)

    def to_json(self) -> dict:
        return {"m": format_rational(self.m),
                "matrix": [[x.to_json() for x in r] for r in self.matrix]}


def lattice_vectors(tau: PeriodMatrix) -> list[list[QuadExt]]:
    """Columns of ``(tau, 1_g)``."""
    T = tau.entries
    g = tau.g
    cols = [[T[r][i] for r in range(g)] for i in range(g)]
    cols += [[QuadExt(int(r == i)) for r in range(g)] for i in range(g)]
    return cols


def _hermitian_unknowns(g: int, m) -> list[list[list[QuadExt]]]:
    """Basis of the Hermitian matrices over Q(theta) as a Q-space of dimension g^2."""
    zero = QuadExt(0)
    th = QuadExt.theta(m)
    out = []
    for k in range(g):
        M = [[zero] * g for _ in range(g)]
        M[k][k] = QuadExt(1)
        out.append(M)
    for k, l in _upper_pairs(g):
        M = [[zero] * g for _ in range(g)]
        M[k][l] = M[l][k] = QuadExt(1)
        out.append(M)
        M = [[zero] * g for _ in range(g)]
        M[k][l] = th
        M[l][k] = -th
        out.append(M)
    return out


def hermitian_form(E: NSClass, tau: PeriodMatrix) -> HermitianForm:
    """Solve for the Hermitian form whose imaginary part on the lattice is ``E``.

    Convention: ``E(lambda_i, lambda_j) = Im H(lambda_i, lambda_j)`` with
    ``H(v, w) = v^T H conj(w)``; on tau = i (g=1) the class [[0,1],[-1,0]] gives H = (1).
    """
    if tau.m is None or tau.m >= 0:
        raise ValueError("hermitian_form needs theta^2 < 0")
    if not tau.is_valid:
        raise ValueError("period matrix is degenerate")
    if not is_one_one(E, tau):
        raise NotOneOne("Riemann relation fails for this class")
    g = tau.g
    lam = lattice_vectors(tau)
    unknowns = _hermitian_unknowns(g, tau.m)
    forms = [HermitianForm(tuple(tuple(r) for r in U), tau.m) for U in unknowns]
    Em = E.matrix()
    rows = []
    for i, j in _upper_pairs(2 * g):
        rows.append([F.value(lam[i], lam[j]).b for F in forms] + [Fraction(Em[i][j])])
    res = rref(rows)
    n = len(unknowns)
    if n in res.pivots:
        raise NotOneOne("no Hermitian form has this imaginary part")
    sol = [Fraction(0)] * n
    for r, pc in enumerate(res.pivots):
        sol[pc] = res.matrix[r][n]
    H = sol[0] * forms[0]
    for c, F in zip(sol[1:], forms[1:]):
        H = H + c * F
    return H


# -- polarizations ------------------------------------------------------------------

@dataclass(frozen=True)
class Polarized:
    E: NSClass
    H: HermitianForm
    coefficients: tuple[int, ...] = ()


@dataclass(frozen=True)
class NoneWithinBound:
    """No positive class among the searched combinations; not a proof of anything."""

    bound: int
    tried: int


@dataclass(frozen=True)
class MaximalRankShortcut:
    """g = 3 with Picard number 9: algebraic without a search."""

    rank: int


def _integer_basis(basis: Sequence[NSClass]) -> list[NSClass]:
    return [E.primitive() for E in basis]


def coefficient_vectors(r: int, bound: int):
    """Nonzero integer vectors in [-bound, bound]^r by increasing max-norm, lex inside a shell."""
    for k in range(1, bound + 1):
        for v in itertools.product(range(-k, k + 1), repeat=r):
            if max(abs(x) for x in v) == k:
                yield v


def find_polarization(tau: PeriodMatrix, bound: int, shortcut: bool = False):
    """Search small integer combinations of the NS basis for a positive class.

    With ``shortcut`` and g = 3, a rank-9 torus returns MaximalRankShortcut
    without searching.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if tau.m is None or tau.m >= 0 or not tau.is_valid:
        raise ValueError("find_polarization needs a valid torus with theta^2 < 0")
    nr = ns_rank(tau)
    if shortcut and tau.g == 3 and nr.rank == 9:
        return MaximalRankShortcut(nr.rank)
    basis = _integer_basis(nr.basis)
    if not basis:
        return NoneWithinBound(bound, 0)
    forms = [hermitian_form(E, tau) for E in basis]
    g = tau.g
    diags = []
    for k in range(g):
        row = [F.matrix[k][k].a for F in forms]
        den = 1
        for x in row:
            den = _lcm(den, x.denominator)
        diags.append([int(x * den) for x in row])
    tried = 0
    for v in coefficient_vectors(len(basis), bound):
        tried += 1
        # diagonal entries of a positive form are positive; reject cheaply first
        if any(sum(c * d for c, d in zip(v, row) if c) <= 0 for row in diags):
            continue
        H = None
        for c, F in zip(v, forms):
            if c:
                H = c * F if H is None else H + c * F
        if H.is_positive_definite():
            E = NSClass.zero(g)
            for c, B in zip(v, basis):
                if c:
                    E = E + c * B
            return Polarized(E, H, tuple(v))
    return NoneWithinBound(bound, tried)


def verdict_to_json(v) -> dict:
    if isinstance(v, Polarized):
        return {"verdict": "Polarized", "class": v.E.to_json(), "hermitian": v.H.to_json(),
                "coefficients": list(v.coefficients)}
    if isinstance(v, MaximalRankShortcut):
        return {"verdict": "MaximalRankShortcut", "rank": v.rank}
    if isinstance(v, NoneWithinBound):
        return {"verdict": "NoneWithinBound", "bound": v.bound, "tried": v.tried}
    return {"verdict": str(v)}


# -- spans ---------------------------------------------------------------------------

def triple_span(classes: Sequence[NSClass]) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical RREF basis of the Q-span of three classes."""
    if len(classes) != 3:
        raise ValueError("expected exactly three classes")
    _same_g(*classes)
    res = rref([E.coords() for E in classes])
    if res.rank < 3:
        raise RankDeficient(f"classes span a space of dimension {res.rank} < 3")
    return res.matrix


def standard_symplectic(g: int) -> NSClass:
    """A = C = 0, B = 1_g."""
    return NSClass.from_blocks([[0] * g for _ in range(g)],
                               [[int(i == j) for j in range(g)] for i in range(g)],
                               [[0] * g for _ in range(g)])
