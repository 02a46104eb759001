"""Multivariate polynomials over Q and Groebner-basis machinery.

Polynomials live in a :class:`PolyRing`, which fixes the ordered variable list
and the monomial order. Monomials are dense exponent tuples; coefficients are
:class:`fractions.Fraction`. Every order is encoded by a ``key`` function whose
tuple comparison agrees with the monomial order, so the largest monomial of a
polynomial is ``max(terms, key=order.key)``.
"""

from __future__ import annotations

import functools
import heapq
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exactmath import format_rational

Monomial = tuple[int, ...]


class NotZeroDimensional(ValueError):
    pass


# -- monomial orders ----------------------------------------------------------

def _grevlex_key(e: Monomial) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, given by name plus parameters.

    ``kind`` is one of ``lex``, ``grevlex``, ``elim`` (block order: the first
    ``split`` variables compared by grevlex, ties by ``inner`` on the rest) and
    ``weighted`` (weight vector, ties by grevlex).
    """

    kind: str = "grevlex"
    split: int = 0
    weights: tuple[int, ...] = ()
    inner: "MonomialOrder | None" = None
    key: Callable[[Monomial], tuple] = field(init=False, repr=False, compare=False)
    heap_key: Callable[[Monomial], tuple] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "lex":
            fn = tuple
        elif self.kind == "grevlex":
            fn = _grevlex_key
        elif self.kind == "elim":
            k = self.split
            inner = (self.inner or GREVLEX).key
            def fn(e, k=k, inner=inner):
                return _grevlex_key(e[:k]) + inner(e[k:])
        elif self.kind == "weighted":
            w = self.weights
            def fn(e, w=w):
                return (sum(a * b for a, b in zip(w, e)),) + _grevlex_key(e)
        else:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        fn = functools.lru_cache(maxsize=1 << 20)(fn)
        object.__setattr__(self, "key", fn)
        object.__setattr__(self, "heap_key", functools.lru_cache(maxsize=1 << 20)(
            lambda e: tuple(-k for k in fn(e))))

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def elimination(cls, split: int, inner: "MonomialOrder | None" = None):
        return cls("elim", split=split, inner=inner)

    @classmethod
    def weighted(cls, weights: Sequence[int]):
        return cls("weighted", weights=tuple(weights))


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


# -- ring and polynomials ------------------------------------------------------

_VAR_RE = r"[A-Za-z][A-Za-z0-9]*(?:_[0-9]+)?"


class PolyRing:
    """Q[x_1..x_n] with a fixed variable order and monomial order."""

    def __init__(self, names: Sequence[str], order: MonomialOrder | str = "grevlex"):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if isinstance(order, str):
            order = MonomialOrder(order)
        self.order = order
        self.nvars = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.zero_mono = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, {self.order.kind})"

    def with_order(self, order: MonomialOrder | str) -> "PolyRing":
        return PolyRing(self.names, order)

    def gens(self) -> list["Poly"]:
        return [self.var(n) for n in self.names]

    def var(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def const(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self, {self.zero_mono: c} if c else {})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def from_terms(self, terms: Mapping[Monomial, Fraction]) -> "Poly":
        return Poly(self, {m: Fraction(c) for m, c in terms.items() if c})

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_t", "_sorted", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._t = terms
        self._sorted = None
        self._lm = None

    # structure
    @property
    def terms(self) -> list[tuple[Fraction, Monomial]]:
        """(coefficient, monomial) pairs, descending in the ring's order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = [(self._t[m], m) for m in sorted(self._t, key=key, reverse=True)]
        return self._sorted

    def as_dict(self) -> dict:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    @property
    def lm(self) -> Monomial:
        if not self._t:
            raise ValueError("zero polynomial has no leading monomial")
        if self._lm is None:
            self._lm = max(self._t, key=self.ring.order.key)
        return self._lm

    @property
    def lc(self) -> Fraction:
        return self._t[self.lm]

    def lt(self) -> "Poly":
        m = self.lm
        return Poly(self.ring, {m: self._t[m]})

    def total_degree(self) -> int:
        return max((sum(m) for m in self._t), default=-1)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((sum(a * b for a, b in zip(weights, m)) for m in self._t), default=-1)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        w = weights or (1,) * self.ring.nvars
        return len({sum(a * b for a, b in zip(w, m)) for m in self._t}) <= 1

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        s = set()
        for m in self._t:
            s.update(i for i, x in enumerate(m) if x)
        return s

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._t.get(tuple(mono), Fraction(0))

    def monic(self) -> "Poly":
        if not self._t:
            return self
        c = self.lc
        if c == 1:
            return self
        return Poly(self.ring, {m: v / c for m, v in self._t.items()})

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        t = dict(self._t)
        for m, c in o._t.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {m: v * c for m, v in self._t.items()})
        o = self._coerce(other)
        t: dict = {}
        for m1, c1 in self._t.items():
            for m2, c2 in o._t.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __pow__(self, k: int):
        out = self.ring.const(1)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, coef: Fraction, mono: Monomial) -> "Poly":
        return Poly(self.ring, {mono_mul(m, mono): c * coef for m, c in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.names == other.ring.names and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({self.ring.zero_mono: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # evaluation and substitution
    def evaluate(self, values: Sequence):
        """Value at a point; ``values`` may hold Fractions, QuadExt or Polys."""
        total = None
        for m, c in self._t.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = term * v ** e if e > 1 else term * v
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Substitute variables by constants or polynomials of the same ring."""
        vals = []
        for n in self.ring.names:
            if n in mapping:
                v = mapping[n]
                vals.append(v if isinstance(v, Poly) else self.ring.const(v))
            else:
                vals.append(self.ring.var(n))
        out = self.evaluate(vals)
        return out if isinstance(out, Poly) else self.ring.const(out)

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-express in ``ring``, matching variables by name."""
        idx = [ring.index[n] for n in self.ring.names]
        t = {}
        for m, c in self._t.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    e[idx[i]] = x
            t[tuple(e)] = c
        return Poly(ring, t)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


# -- text format --------------------------------------------------------------

def format_monomial(names: Sequence[str], m: Monomial) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    out = []
    for i, (c, m) in enumerate(f.terms):
        mono = format_monomial(f.ring.names, m)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(rf"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>{_VAR_RE})|(?P<op>[-+*^()]))")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse ``text`` as a polynomial of ``ring``.

    Accepts both ``3/5*t_8`` and the juxtaposed ``3/5t_8``, ``t_8t_9`` style,
    powers with ``^``, and parentheses.
    """
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        pos = mt.end()
        if mt.group("num"):
            toks.append(("num", mt.group("num")))
        elif mt.group("var"):
            name = mt.group("var")
            if name not in ring.index:
                raise ValueError(f"unknown variable {name!r}")
            toks.append(("var", name))
        else:
            toks.append(("op", mt.group("op")))
    p = _Parser(ring, toks)
    out = p.expr()
    if p.i != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return out


class _Parser:
    def __init__(self, ring, toks):
        self.ring, self.toks, self.i = ring, toks, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expr(self) -> Poly:
        sign = 1
        kind, val = self.peek()
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        out = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                out = out + t if val == "+" else out - t
            else:
                return out

    def term(self) -> Poly:
        out = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.power()
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                out = out * self.power()
            else:
                return out

    def power(self) -> Poly:
        base = self.atom()
        kind, val = self.peek()
        if (kind, val) == ("op", "^"):
            self.take()
            k, v = self.take()
            if k != "num" or "/" in v:
                raise ValueError("exponent must be a non-negative integer")
            return base ** int(v)
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(Fraction(val))
        if kind == "var":
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            out = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return out
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")


# -- reduction ------------------------------------------------------------------

class _Divisor:
    """A reducer with mpq coefficients, for the inner reduction loop."""

    __slots__ = ("lm", "tail")

    def __init__(self, f: Poly):
        self.lm = f.lm
        lc = mpq(f._t[self.lm])
        self.tail = [(m, mpq(c) / lc) for m, c in f._t.items() if m != self.lm]


def _reduce(t: dict, divisors: list[_Divisor], order: MonomialOrder) -> dict:
    """Full reduction of the term dict ``t``; always uses the first divisor."""
    key = order.heap_key
    t = {m: mpq(c) for m, c in t.items()}
    heap = [(key(m), m) for m in t]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = t.pop(m, None)
        if c is None:
            continue
        for d in divisors:
            if all(x <= y for x, y in zip(d.lm, m)):
                q = tuple(x - y for x, y in zip(m, d.lm))
                for tm, tc in d.tail:
                    nm = tuple(x + y for x, y in zip(tm, q))
                    old = t.get(nm)
                    if old is None:
                        t[nm] = -c * tc
                        heapq.heappush(heap, (key(nm), nm))
                    else:
                        v = old - c * tc
                        if v:
                            t[nm] = v
                        else:
                            del t[nm]
                break
        else:
            rem[m] = Fraction(int(c.numerator), int(c.denominator))
    return rem


def normal_form(f: Poly, G: Sequence[Poly]) -> Poly:
    """Remainder of ``f`` on division by ``G`` (in list order)."""
    divs = [_Divisor(g) for g in G if g]
    if not divs:
        return f
    return Poly(f.ring, _reduce(f._t, divs, f.ring.order))


def s_polynomial(f: Poly, g: Poly) -> Poly:
    L = mono_lcm(f.lm, g.lm)
    return (f.mul_term(1 / f.lc, mono_div(L, f.lm))
            - g.mul_term(1 / g.lc, mono_div(L, g.lm)))


def _sort_desc(polys: list[Poly]) -> list[Poly]:
    key = polys[0].ring.order.key if polys else None
    return sorted(polys, key=lambda p: key(p.lm), reverse=True)


def interreduce(polys: Iterable[Poly]) -> list[Poly]:
    """Mutually reduce ``polys`` until stable; generates the same ideal.

    On a Groebner basis this yields the reduced Groebner basis.
    """
    G = [p.monic() for p in polys if p]
    changed = True
    while changed:
        changed = False
        G = _sort_desc(G)
        out = []
        for i, g in enumerate(G):
            others = out + G[i + 1:]
            r = normal_form(g, others) if others else g
            if r != g:
                changed = True
            if r:
                out.append(r.monic())
        G = out
    return _sort_desc(G)


def minimalize(G: Sequence[Poly]) -> list[Poly]:
    keep = []
    for i, g in enumerate(G):
        if any(divides(h.lm, g.lm) and (h.lm != g.lm or j < i)
               for j, h in enumerate(G) if j != i):
            continue
        keep.append(g)
    return keep


@dataclass
class GroebnerResult:
    basis: list[Poly]
    complete: bool
    pairs_processed: int = 0
    pairs_skipped: int = 0
    pairs_remaining: int = 0

    def __iter__(self):
        return iter((self.basis, self.complete))


def buchberger(gens: Sequence[Poly], pair_limit: int | None = None) -> GroebnerResult:
    """Buchberger's algorithm with the normal selection strategy.

    Pairs are chosen by minimal total degree of the lcm, ties broken by pair
    creation index. Pairs discarded by the product or chain criterion are not
    counted against ``pair_limit``. Without a limit the result is the reduced
    Groebner basis sorted by leading term, descending.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    ring = gens[0].ring
    G: list[Poly] = []
    pairs: list = []
    pending: set = set()
    counter = itertools.count()

    divs: list[_Divisor] = []

    def add(p: Poly):
        j = len(G)
        G.append(p.monic())
        divs.append(_Divisor(G[j]))
        for i in range(j):
            L = mono_lcm(G[i].lm, G[j].lm)
            heapq.heappush(pairs, (sum(L), next(counter), i, j, L))
            pending.add((i, j))

    for g in gens:
        add(g)
    processed = skipped = 0
    while pairs:
        if pair_limit is not None and processed >= pair_limit:
            break
        _, _, i, j, L = heapq.heappop(pairs)
        pending.discard((i, j))
        gi, gj = G[i], G[j]
        if all(a == 0 or b == 0 for a, b in zip(gi.lm, gj.lm)):
            skipped += 1
            continue
        if _chain_criterion(G, i, j, L, pending):
            skipped += 1
            continue
        processed += 1
        r = Poly(ring, _reduce(s_polynomial(gi, gj)._t, divs, ring.order))
        if r:
            add(r)
            if r.lm == ring.zero_mono:
                break
    complete = not pairs
    if any(g.lm == ring.zero_mono for g in G):
        return GroebnerResult([ring.const(1)], True, processed, skipped, 0)
    if complete:
        basis = interreduce(minimalize(G))
    else:
        basis = interreduce(G)
    return GroebnerResult(basis, complete, processed, skipped, len(pairs))


def _chain_criterion(G, i, j, L, pending) -> bool:
    for k in range(len(G)):
        if k in (i, j):
            continue
        if not divides(G[k].lm, L):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def groebner(gens: Sequence[Poly]) -> list[Poly]:
    return buchberger(gens).basis


def is_groebner(G: Sequence[Poly]) -> bool:
    """Post-hoc Buchberger criterion: all S-polynomials reduce to zero."""
    for a, b in itertools.combinations(G, 2):
        if normal_form(s_polynomial(a, b), G):
            return False
    return True


# -- ideals -----------------------------------------------------------------------

class Ideal:
    """Ideal of a :class:`PolyRing` with a lazily cached reduced Groebner basis."""

    def __init__(self, gens: Iterable[Poly], ring: PolyRing | None = None):
        self.gens = [g for g in gens if g]
        if ring is None:
            if not self.gens:
                raise ValueError("ring required for the zero ideal")
            ring = self.gens[0].ring
        self.ring = ring
        self._gb: list[Poly] | None = None

    @classmethod
    def from_basis(cls, basis: Sequence[Poly], ring: PolyRing | None = None) -> "Ideal":
        """Wrap an already reduced Groebner basis."""
        I = cls(basis, ring)
        I._gb = list(basis)
        return I

    def groebner(self) -> list[Poly]:
        if self._gb is None:
            self._gb = buchberger(self.gens).basis if self.gens else []
        return self._gb

    def is_unit(self) -> bool:
        gb = self.groebner()
        return bool(gb) and gb[0].lm == self.ring.zero_mono

    def contains(self, f: Poly) -> bool:
        return not normal_form(f.to_ring(self.ring) if f.ring != self.ring else f,
                               self.groebner())

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self.groebner())

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.gens + other.gens, self.ring)

    def dimension(self) -> int:
        return dimension(self.groebner(), self.ring.nvars)

    def quotient_degree(self) -> int:
        return quotient_degree(self.groebner(), self.ring.nvars)

    def saturate(self, f: Poly) -> "Ideal":
        return saturate(self, f)

    def __repr__(self):
        return f"Ideal([{', '.join(map(str, self.gens))}])"


def saturate(I: Ideal, f: Poly) -> Ideal:
    """``I : f^infinity`` via a fresh variable and one elimination GB."""
    ring = I.ring
    if not I.gens:
        return Ideal([], ring)
    z = "_sat"
    while z in ring.index:
        z += "_"
    big = PolyRing((z,) + ring.names, MonomialOrder.elimination(1, ring.order))
    gens = [g.to_ring(big) for g in I.gens]
    gens.append(big.var(z) * f.to_ring(big) - 1)
    basis = buchberger(gens).basis
    kept = [g for g in basis if all(m[0] == 0 for m in g._t)]
    small = [Poly(ring, {m[1:]: c for m, c in g._t.items()}) for g in kept]
    if not small:
        return Ideal([], ring)
    return Ideal.from_basis(buchberger(small).basis, ring)


def ideal_quotient_by_poly(I: Ideal, f: Poly) -> Ideal:
    """``I : f`` through the intersection ``I cap (f)`` computed with a tag variable."""
    ring = I.ring
    w = "_w"
    while w in ring.index:
        w += "_"
    big = PolyRing((w,) + ring.names, MonomialOrder.elimination(1, ring.order))
    W = big.var(w)
    fb = f.to_ring(big)
    gens = [W * g.to_ring(big) for g in I.gens] + [(1 - W) * fb]
    basis = buchberger(gens).basis
    inter = [Poly(ring, {m[1:]: c for m, c in g._t.items()})
             for g in basis if all(m[0] == 0 for m in g._t)]
    quot = []
    for h in inter:
        q, r = divide_exact(h, f)
        assert not r
        quot.append(q)
    return Ideal(quot, ring) if quot else Ideal([], ring)


def divide_exact(h: Poly, f: Poly) -> tuple[Poly, Poly]:
    """Single-divisor division: h = q*f + r."""
    ring = h.ring
    q = ring.zero()
    r = ring.zero()
    p = h
    while p:
        c, m = p.terms[0]
        if divides(f.lm, m):
            t = Poly(ring, {mono_div(m, f.lm): c / f.lc})
            q = q + t
            p = p - t * f
        else:
            lt = Poly(ring, {m: c})
            r = r + lt
            p = p - lt
    return q, r


def saturate_iterated(I: Ideal, f: Poly, max_steps: int = 50) -> Ideal:
    """Saturation as the stable value of repeated ideal quotients."""
    cur = Ideal.from_basis(I.groebner(), I.ring)
    for _ in range(max_steps):
        nxt = ideal_quotient_by_poly(cur, f)
        nb = nxt.groebner()
        if nb == cur.groebner():
            return cur
        cur = Ideal.from_basis(nb, I.ring)
    raise RuntimeError("ideal quotients did not stabilise")


# -- homogenization -------------------------------------------------------------

def homogenize(f: Poly, hvar: str, weights: Sequence[int] | None = None) -> Poly:
    """Multiply each term by ``hvar^(d - w(term))`` with ``d`` the top weighted degree.

    ``weights`` runs over all ring variables; ``hvar`` must have weight 1 and
    must not occur in ``f``. Weight-0 variables behave as parameters.
    """
    ring = f.ring
    h = ring.index[hvar]
    w = tuple(weights) if weights is not None else (1,) * ring.nvars
    if w[h] != 1:
        raise ValueError("homogenizing variable needs weight 1")
    if any(m[h] for m in f._t):
        raise ValueError(f"{hvar} already occurs in the polynomial")
    if not f:
        return f
    d = f.weighted_degree(w)
    t = {}
    for m, c in f._t.items():
        e = list(m)
        e[h] = d - sum(a * b for a, b in zip(w, m))
        t[tuple(e)] = c
    return Poly(ring, t)


def dehomogenize(f: Poly, var: str) -> Poly:
    """Set ``var`` to 1 (the variable stays in the ring, unused)."""
    i = f.ring.index[var]
    t: dict = {}
    for m, c in f._t.items():
        e = m[:i] + (0,) + m[i + 1:]
        v = t.get(e, 0) + c
        if v:
            t[e] = v
        else:
            t.pop(e, None)
    return Poly(f.ring, t)


# -- dimension and degree --------------------------------------------------------

def _leading_supports(G: Sequence[Poly]) -> list[frozenset]:
    return [frozenset(i for i, x in enumerate(g.lm) if x) for g in G]


def dimension(G: Sequence[Poly], nvars: int, variables: Sequence[int] | None = None) -> int:
    """Krull dimension of Q[vars]/(G) from a Groebner basis ``G``; -1 for (1).

    Largest set of variables that contains the support of no leading
    monomial. ``variables`` restricts attention to a subset of the ring's
    variables (the others are treated as absent).
    """
    supports = _leading_supports(G)
    if any(not s for s in supports):
        return -1
    vs = list(range(nvars)) if variables is None else list(variables)
    best = 0

    def grow(chosen: frozenset, start: int):
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (len(vs) - start) <= best:
            return
        for k in range(start, len(vs)):
            c = chosen | {vs[k]}
            if not any(s <= c for s in supports):
                grow(c, k + 1)

    grow(frozenset(), 0)
    return best


def is_zero_dimensional(G: Sequence[Poly], variables: Sequence[int]) -> bool:
    pure = set()
    for g in G:
        nz = [i for i, x in enumerate(g.lm) if x]
        if not nz:
            return True
        if len(nz) == 1:
            pure.add(nz[0])
    return all(v in pure for v in variables)


def standard_monomials(G: Sequence[Poly], nvars: int,
                       variables: Sequence[int] | None = None,
                       limit: int | None = None) -> list[Monomial]:
    """Monomials in ``variables`` outside the leading-term ideal (finite case)."""
    vs = list(range(nvars)) if variables is None else list(variables)
    lms = [g.lm for g in G]
    if any(sum(m) == 0 for m in lms):
        return []
    if not is_zero_dimensional(G, vs):
        raise NotZeroDimensional("quotient is infinite-dimensional")
    start = (0,) * nvars
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for v in vs:
                e = list(m)
                e[v] += 1
                e = tuple(e)
                if e in seen or any(divides(l, e) for l in lms):
                    continue
                seen.add(e)
                nxt.append(e)
                if limit is not None and len(seen) > limit:
                    raise NotZeroDimensional("standard monomial count exceeds limit")
        frontier = nxt
    return sorted(seen)


def quotient_degree(G: Sequence[Poly], nvars: int, variables: Sequence[int] | None = None) -> int:
    """Vector-space dimension of the quotient; errors unless zero-dimensional."""
    lms = [g.lm for g in G]
    if any(sum(m) == 0 for m in lms):
        return 0
    return len(standard_monomials(G, nvars, variables))
