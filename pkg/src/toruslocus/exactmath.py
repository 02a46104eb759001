"""Exact arithmetic: rationals, quadratic fields Q(theta) with theta^2 = m, and
dense rational linear algebra.

Rationals are :class:`fractions.Fraction`; there is no floating point anywhere
in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction, "QuadExt"]


class FieldMismatch(ValueError):
    """Arithmetic between elements of two different quadratic fields."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, QuadExt):
        if x.b != 0:
            raise ValueError(f"{x} is not rational")
        return x.a
    raise TypeError(f"cannot interpret {x!r} as a rational")


def is_rational_square(q) -> bool:
    """True iff ``q`` is the square of a rational number."""
    q = as_rational(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rational_sqrt(q) -> Fraction:
    q = as_rational(q)
    if not is_rational_square(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, eq=False)
class QuadExt:
    """The element ``a + b*theta`` of Q(theta), theta^2 = m.

    ``m`` may be ``None`` only when ``b == 0``; such values (and every value
    with ``b == 0``) are plain rationals and combine with any field.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    m: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        if self.m is not None:
            m = as_rational(self.m)
            if m == 0 or is_rational_square(m):
                raise ValueError(f"theta^2 = {m} must be a non-square rational")
            object.__setattr__(self, "m", m)
        elif self.b != 0:
            raise ValueError("an irrational QuadExt needs m")

    @classmethod
    def theta(cls, m) -> "QuadExt":
        return cls(Fraction(0), Fraction(1), m)

    @classmethod
    def coerce(cls, x, m=None) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return cls(as_rational(x), Fraction(0), m)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _field(self, other: "QuadExt"):
        if self.b != 0 and other.b != 0:
            if self.m != other.m:
                raise FieldMismatch(f"Q(sqrt({self.m})) vs Q(sqrt({other.m}))")
            return self.m
        if self.b != 0:
            return self.m
        if other.b != 0:
            return other.m
        return self.m if self.m is not None else other.m

    def _check(self, other):
        if isinstance(other, QuadExt):
            return other, self._field(other)
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.m), self.m
        return None, None

    def __add__(self, other):
        o, m = self._check(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, m)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.m)

    def __sub__(self, other):
        o, m = self._check(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, m)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o, m = self._check(other)
        if o is None:
            return NotImplemented
        bb = self.b * o.b
        a = self.a * o.a + (bb * m if bb else 0)
        return QuadExt(a, self.a * o.b + self.b * o.a, m)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        if self.b == 0:
            return self.a * self.a
        return self.a * self.a - self.b * self.b * self.m

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.m)

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(theta)")
        return QuadExt(self.a / n, -self.b / n, self.m)

    def __truediv__(self, other):
        o, _ = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other, self.m) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(Fraction(1), Fraction(0), self.m)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.a == other.a and self.b == other.b and self.m == other.m

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({format_rational(self.a)})"
        return (f"QuadExt({format_rational(self.a)} + {format_rational(self.b)}*theta, "
                f"theta^2={format_rational(self.m)})")

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b),
                "m": None if self.m is None else format_rational(self.m)}

    @classmethod
    def from_json(cls, d: dict) -> "QuadExt":
        m = d.get("m")
        return cls(Fraction(d["a"]), Fraction(d.get("b", "0")),
                   None if m is None else Fraction(m))


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def qsign(x) -> int:
    """Exact sign of ``a + b*sqrt(m)`` for the real embedding theta -> +sqrt(m)."""
    x = QuadExt.coerce(x)
    if x.m is not None and x.m < 0:
        raise ValueError("Q(theta) with theta^2 < 0 has no real order")
    sa, sb = _sign(x.a), _sign(x.b)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: the larger absolute value wins
    return sa if x.a * x.a > x.b * x.b * x.m else sb


# -- dense matrices -----------------------------------------------------------

def to_fraction_matrix(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    return [[as_rational(v) for v in row] for row in rows]


@dataclass(frozen=True)
class RrefResult:
    rank: int
    pivots: tuple[int, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    kernel: tuple[tuple[Fraction, ...], ...]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> RrefResult:
    """Reduced row echelon form with pivot columns and a kernel basis.

    Each kernel vector has coordinate 1 at its free column and 0 at the other
    free columns, so its last nonzero coordinate is 1.
    """
    m = to_fraction_matrix(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [v / piv for v in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [v - f * w for v, w in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    kernel = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        kernel.append(tuple(v))
    return RrefResult(len(pivots), tuple(pivots),
                      tuple(tuple(row) for row in m), tuple(kernel))


def rank(rows) -> int:
    return rref(rows).rank


def kernel(rows, ncols: int | None = None):
    return rref(rows, ncols).kernel


def matmul(a, b):
    """Product of two dense matrices with entries from any exact ring."""
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][l] * b[l][j] for l in range(k)), Fraction(0)) for j in range(cols)]
            for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def det(a):
    """Determinant by Gaussian elimination; entries Fraction or QuadExt."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in a]
    n = len(m)
    if n == 0:
        return Fraction(1)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0) * m[0][0]
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = piv * result
        for i in range(c + 1, n):
            f = m[i][c]
            if f != 0:
                f = f / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def leading_minors(a):
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def mat_to_json(a) -> list:
    return [[v.to_json() if isinstance(v, QuadExt) else format_rational(v) for v in row]
            for row in a]


def mat_from_json(a) -> list:
    return [[QuadExt.from_json(v) if isinstance(v, dict) else Fraction(v) for v in row]
            for row in a]
