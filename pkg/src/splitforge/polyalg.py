"""Polynomial arithmetic over a base ring R or its fraction field L.

Coefficients are whatever the ring descriptor hands out (``int``, ``Poly`` or
``Frac``); this module only needs ``+ - *`` and truthiness on them, so the
literal ``0`` serves as the additive identity everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional

from .errors import MixedContexts, NonMonicDivisor, ReducibleModulus
from .rings import Frac

Mono = tuple[int, int]


# ---------------------------------------------------------------------------
# dense univariate


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "z"):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out: list[Any] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, {self.var!r})"


def uni_divmod(h: UniPoly, m: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Division by a monic ``m``: ``h == m*q + r`` with ``deg r < deg m``."""
    if not m or m.lc != 1:
        raise NonMonicDivisor(f"divisor {m!r} is not monic")
    k = m.degree
    rem = list(h.coeffs)
    if len(rem) <= k:
        return UniPoly((), h.var), h
    quot: list[Any] = [0] * (len(rem) - k)
    for i in range(len(rem) - 1 - k, -1, -1):
        c = rem[i + k]
        quot[i] = c
        if c:
            for j in range(k):
                rem[i + j] = rem[i + j] - c * m.coeffs[j]
            rem[i + k] = 0
    return UniPoly(quot, h.var), UniPoly(rem[:k], h.var)


# ---------------------------------------------------------------------------
# sparse bivariate


def _grlex_key(m: Mono):
    return (-(m[0] + m[1]), -m[0])


class BiPoly:
    """Sparse polynomial in two variables; ``terms[(i, j)]`` multiplies ``x**i * y**j``.

    Zero coefficients are never stored.  ``sorted_terms`` yields graded-lex
    order with x > y, which is the serialization order.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _wrap(cls, terms: dict) -> "BiPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls, c=1) -> "BiPoly":
        return cls({(1, 0): c})

    @classmethod
    def y(cls, c=1) -> "BiPoly":
        return cls({(0, 1): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiPoly":
        return cls({(i, j): c})

    def sorted_terms(self) -> list[tuple[Mono, Any]]:
        return sorted(self.terms.items(), key=lambda mc: _grlex_key(mc[0]))

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        k = 0 if var == "x" else 1
        return max((m[k] for m in self.terms), default=-1)

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _as_bipoly(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(other)

    def __add__(self, other) -> "BiPoly":
        other = self._as_bipoly(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return BiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "BiPoly":
        return self + (-self._as_bipoly(other))

    def __rsub__(self, other) -> "BiPoly":
        return self._as_bipoly(other) - self

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            if not other:
                return BiPoly._wrap({})
            return BiPoly({m: c * other for m, c in self.terms.items()})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out.get(m, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        result = BiPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def swap(self) -> "BiPoly":
        """Exchange the roles of x and y."""
        return BiPoly._wrap({(j, i): c for (i, j), c in self.terms.items()})

    def map_coeffs(self, fn) -> "BiPoly":
        return BiPoly({m: fn(c) for m, c in self.terms.items()})

    def substitute(self, x_image, y_image, one):
        """Evaluate at ``x = x_image, y = y_image``; images must support ``+ *`` and ``**``."""
        acc = 0 * one
        xp = [one]
        yp = [one]
        for (i, j), c in self.terms.items():
            while len(xp) <= i:
                xp.append(xp[-1] * x_image)
            while len(yp) <= j:
                yp.append(yp[-1] * y_image)
            acc = acc + xp[i] * yp[j] * c
        return acc

    def __repr__(self):
        return f"BiPoly({dict(self.sorted_terms())!r})"


def monic_divide(h: BiPoly, m: BiPoly, var: str) -> tuple[BiPoly, BiPoly]:
    """Divide ``h`` by ``m``, monic in ``var``, treating the other variable as coefficient.

    Returns ``(q, r)`` with ``h == m*q + r`` and ``deg_var(r) < deg_var(m)``.
    """
    k = 0 if var == "x" else 1
    deg = m.degree_in(var)
    if deg < 0:
        raise NonMonicDivisor("division by the zero polynomial")
    lead = {mono: c for mono, c in m.terms.items() if mono[k] == deg}
    unit_mono = (deg, 0) if k == 0 else (0, deg)
    if lead != {unit_mono: 1}:
        raise NonMonicDivisor(f"divisor is not monic in {var}")
    # rows[e] maps the other exponent to the coefficient of var^e
    tail = [(mono[k], mono[1 - k], c) for mono, c in m.terms.items() if mono[k] != deg]
    rows: dict = {}
    for mono, c in h.terms.items():
        rows.setdefault(mono[k], {})[mono[1 - k]] = c
    quot: dict = {}
    for top in range(max(rows, default=-1), deg - 1, -1):
        row = rows.pop(top, None)
        if not row:
            continue
        for o, c in row.items():
            if not c:
                continue
            quot[(top - deg, o) if k == 0 else (o, top - deg)] = c
            for te, to, tc in tail:
                dest = rows.setdefault(top - deg + te, {})
                dest[o + to] = dest.get(o + to, 0) - c * tc
    rem = {}
    for e, row in rows.items():
        for o, c in row.items():
            if c:
                rem[(e, o) if k == 0 else (o, e)] = c
    return BiPoly(quot), BiPoly._wrap(rem)


# ---------------------------------------------------------------------------
# monic quadratics


@dataclass(frozen=True)
class MonicQuadratic:
    """``var**2 - a*var + b``."""

    a: Any
    b: Any
    var: str = "x"

    def discriminant(self):
        return self.a * self.a - 4 * self.b

    def is_radical(self) -> bool:
        return not self.a

    def as_unipoly(self, var: Optional[str] = None) -> UniPoly:
        return UniPoly([self.b, -self.a, 1], var or self.var)

    def as_bipoly(self) -> BiPoly:
        if self.var == "x":
            return BiPoly({(2, 0): 1, (1, 0): -self.a, (0, 0): self.b})
        return BiPoly({(0, 2): 1, (0, 1): -self.a, (0, 0): self.b})

    def __call__(self, value):
        return value * value - value * self.a + self.b

    def with_var(self, var: str) -> "MonicQuadratic":
        return MonicQuadratic(self.a, self.b, var)


def discriminant(q: MonicQuadratic):
    return q.discriminant()


# ---------------------------------------------------------------------------
# free algebras A[w]/(m) with m monic


class Residue:
    """Element of ``A[w]/(m)`` stored by coordinates on ``1, w, ..., w^(k-1)``.

    With ``A = L`` and ``m = f`` this is the field ``E = L[x]/(f)``; with
    ``A = R`` and ``m = z**2 - u`` it is the free module ``R[z]/(z**2 - u)``.
    """

    __slots__ = ("coords", "modulus")

    def __init__(self, coords: Iterable, modulus: UniPoly):
        cs = list(coords)
        k = modulus.degree
        if len(cs) > k:
            cs = list(uni_divmod(UniPoly(cs, modulus.var), modulus)[1].coeffs)
        cs += [0] * (k - len(cs))
        self.coords = tuple(cs)
        self.modulus = modulus

    @classmethod
    def _make(cls, coords: tuple, modulus: UniPoly) -> "Residue":
        obj = cls.__new__(cls)
        obj.coords = coords
        obj.modulus = modulus
        return obj

    @classmethod
    def embed(cls, c, modulus: UniPoly) -> "Residue":
        return cls([c], modulus)

    @classmethod
    def gen(cls, modulus: UniPoly, c=1) -> "Residue":
        return cls([0, c], modulus)

    @classmethod
    def from_poly(cls, p: UniPoly, modulus: UniPoly) -> "Residue":
        return cls(p.coeffs, modulus)

    def _check(self, other: "Residue") -> None:
        if other.modulus is not self.modulus and other.modulus != self.modulus:
            raise MixedContexts("elements of different residue algebras")

    def _lift(self, other) -> "Residue":
        if isinstance(other, Residue):
            self._check(other)
            return other
        return Residue.embed(other, self.modulus)

    def __add__(self, other) -> "Residue":
        o = self._lift(other)
        return Residue([a + b for a, b in zip(self.coords, o.coords)], self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "Residue":
        return Residue([-a for a in self.coords], self.modulus)

    def __sub__(self, other) -> "Residue":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Residue":
        return self._lift(other) - self

    def __mul__(self, other) -> "Residue":
        if not isinstance(other, Residue):
            return Residue([a * other for a in self.coords], self.modulus)
        self._check(other)
        m = self.modulus.coeffs
        if len(m) == 3:
            # w^2 = -m0 - m1 w for the monic quadratic modulus
            p0, p1 = self.coords
            q0, q1 = other.coords
            top = p1 * q1
            return Residue._make((p0 * q0 - top * m[0], p0 * q1 + p1 * q0 - top * m[1]), self.modulus)
        prod = UniPoly(self.coords, self.modulus.var) * UniPoly(other.coords, self.modulus.var)
        return Residue(prod.coeffs, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Residue":
        result = Residue.embed(1, self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and all(
                a == b for a, b in zip(self.coords, other.coords)
            )
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def is_zero(self) -> bool:
        return not self

    @property
    def base(self):
        """First coordinate (the projection onto A)."""
        return self.coords[0]

    @property
    def radical_part(self):
        return self.coords[1] if len(self.coords) > 1 else 0

    def as_unipoly(self) -> UniPoly:
        return UniPoly(self.coords, self.modulus.var)

    def __repr__(self):
        return f"Residue({list(self.coords)!r} mod {self.modulus!r})"


def quadext_mul(p: Residue, q: Residue) -> Residue:
    return p * q


# ---------------------------------------------------------------------------
# square roots in quadratic extensions of L


def _to_frac(ring, v) -> Frac:
    return v if isinstance(v, Frac) else Frac(ring, v)


def square_root_in_ext(ring, v, u) -> Optional[Residue]:
    """Square root of ``v`` in ``L(sqrt u)``, as ``e1 + e2*w`` with ``w**2 = u``.

    Since ``2*e1*e2 = 0`` a root lies in ``L`` or in ``L*sqrt(u)``.  The root
    with positive normal form is returned; ``None`` when neither ``v`` nor
    ``v/u`` is a square in L.
    """
    v = _to_frac(ring, v)
    u = _to_frac(ring, u)
    modulus = UniPoly([-u, 0, Frac(ring, ring.one)], "w")
    s = ring.is_square(v)
    if s is not None:
        return Residue([s, Frac(ring, ring.zero)], modulus)
    s = ring.is_square(v / u)
    if s is not None:
        return Residue([Frac(ring, ring.zero), s], modulus)
    return None


def extension_modulus(ring, f: MonicQuadratic, var: str = "x") -> UniPoly:
    """``f`` as a monic polynomial over L, the modulus of ``E = L[x]/(f)``."""
    return UniPoly([_to_frac(ring, f.b), _to_frac(ring, -f.a), Frac(ring, ring.one)], var)


def quadratic_root_in_ext(ring, g: MonicQuadratic, f: MonicQuadratic) -> Optional[Residue]:
    """A root of ``g`` in ``E = L[x]/(f)``, or ``None`` if ``g`` is irreducible over E.

    Computed as ``(c + s)/2`` with ``s**2 = disc(g)`` in ``L(sqrt(disc f))``,
    then rewritten on the basis ``1, xbar`` through ``sqrt(disc f) = 2*xbar - a``.
    Of the two roots, the one whose xbar-coordinate is in positive normal form
    is returned (or, for a root inside L, the one with positive ``s``).
    """
    u = f.discriminant()
    if ring.is_square(_to_frac(ring, u)) is not None:
        raise ReducibleModulus("f is reducible over the fraction field")
    s = square_root_in_ext(ring, g.discriminant(), u)
    if s is None:
        return None
    e1, e2 = s.coords
    half = Frac(ring, ring.one, ring(2))
    a = _to_frac(ring, f.a)
    c = _to_frac(ring, g.a)
    # s = e1 + e2*(2x - a)
    const = (c + e1 - a * e2) * half
    lin = e2
    return Residue([const, lin], extension_modulus(ring, f))


def conjugate_root(ring, g: MonicQuadratic, root: Residue) -> Residue:
    """The other root ``c - root`` of ``g``."""
    return Residue.embed(_to_frac(ring, g.a), root.modulus) - root
