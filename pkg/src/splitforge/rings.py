"""Base rings R and their fraction fields L.

Three unique factorization domains are supported:

* ``Z``: elements are plain Python ``int``.
* ``Q[t]``: :class:`Poly` with :class:`fractions.Fraction` coefficients.
* ``F_p[t]`` for an odd prime p: :class:`Poly` with coefficients in ``range(p)``.

All ring-specific behaviour (normalization, gcd, exact division, square
roots, factorization) lives on the ring descriptor objects, so generic code
only ever uses ``+ - *`` and truthiness on elements.

Normal forms: integers are normalized positive, polynomials monic, and a
fraction keeps its denominator in normal form.  Witness comparison in
certificates relies on these conventions being bit-exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

from .errors import (
    BothZero,
    DivisionByZero,
    EvenPrime,
    UnknownRing,
    InseparableInput,
    NotDivisible,
    ZeroInput,
)
from .intfactor import factorint, is_probable_prime

__all__ = [
    "Poly",
    "Frac",
    "IntegerRing",
    "RationalPolyRing",
    "PrimePolyRing",
    "PrimeFactorization",
    "ZZ",
    "ring_from_name",
]


# ---------------------------------------------------------------------------
# univariate polynomials over Q or F_p


class Poly:
    """Dense univariate polynomial, immutable.

    ``coeffs[i]`` is the coefficient of ``var**i``; trailing zeros are stripped
    so the zero polynomial has ``coeffs == ()``.  ``p`` is ``None`` for rational
    coefficients, otherwise the (odd prime) characteristic.
    """

    __slots__ = ("coeffs", "p", "var", "_hash")

    def __init__(self, coeffs: Iterable = (), p: Optional[int] = None, var: str = "t"):
        if p is None:
            cs = [Fraction(c) for c in coeffs]
        else:
            cs = [_fp(c, p) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.p = p
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: list, p: Optional[int], var: str) -> "Poly":
        # coefficients already reduced; only strips
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = object.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.p = p
        obj.var = var
        obj._hash = None
        return obj

    # --- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self._zero_coeff()

    def _zero_coeff(self):
        return 0 if self.p is not None else Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else self._zero_coeff()

    def _like(self, coeffs: list) -> "Poly":
        return Poly._raw(coeffs, self.p, self.var)

    def _coerce(self, other) -> Optional[list]:
        if isinstance(other, Poly):
            if other.p != self.p:
                raise TypeError("polynomials over different coefficient fields")
            return list(other.coeffs)
        if isinstance(other, (int, Fraction)):
            c = Fraction(other) if self.p is None else _fp(other, self.p)
            return [c] if c else []
        return None

    # --- arithmetic ------------------------------------------------------

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a = self.coeffs
        n = max(len(a), len(b))
        out = []
        p = self.p
        for i in range(n):
            s = (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            out.append(s % p if p is not None else s)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return self._like([(-c) % p if p is not None else -c for c in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-self._like(b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._like(b) - self

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a = self.coeffs
        if not a or not b:
            return self._like([])
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        p = self.p
        if p is not None:
            out = [c % p for c in out]
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self._like([self._one_coeff()])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _one_coeff(self):
        return 1 if self.p is not None else Fraction(1)

    def _inv_coeff(self, c):
        if self.p is None:
            return 1 / c
        return pow(c, -1, self.p)

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if not b:
            raise DivisionByZero("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = len(b) - 1
        inv = self._inv_coeff(b[-1])
        if len(rem) <= db:
            return self._like([]), self
        quot = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            if p is not None:
                c %= p
            quot[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * b[j]
                    if p is not None:
                        rem[k + j] %= p
        return self._like(quot), self._like(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # --- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        try:
            b = self._coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return False
        if b is None:
            return NotImplemented
        return list(self.coeffs) == b

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    # --- calculus and evaluation ------------------------------------------

    def derivative(self) -> "Poly":
        p = self.p
        out = [i * c for i, c in enumerate(self.coeffs)][1:]
        if p is not None:
            out = [c % p for c in out]
        return self._like(out)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self._inv_coeff(self.coeffs[-1])
        return self * (inv if self.p is None else int(inv))

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, p={self.p!r})"


def _fp(c, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise DivisionByZero(f"denominator divisible by {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


# ---------------------------------------------------------------------------
# factorization record


@dataclass(frozen=True)
class PrimeFactorization:
    unit: Any
    factors: tuple  # ((prime, exponent), ...)

    def expand(self):
        acc = self.unit
        for prime, e in self.factors:
            acc = acc * prime**e
        return acc


# ---------------------------------------------------------------------------
# fraction field elements


class Frac:
    """Element of the fraction field L of a ring descriptor.

    Stored in lowest terms with the denominator in the ring's normal form.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den=None):
        if den is None:
            den = ring.one
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            num, den = ring.zero, ring.one
        else:
            g = ring.gcd(num, den)
            if g != ring.one:
                num = ring.exact_div(num, g)
                den = ring.exact_div(den, g)
            unit, den = ring.normalize(den)
            if unit != ring.one:
                num = num * ring.unit_inverse(unit)
        self.ring = ring
        self.num = num
        self.den = den

    def _lift(self, other) -> Optional["Frac"]:
        if isinstance(other, Frac):
            if other.ring != self.ring:
                raise TypeError("fractions over different rings")
            return other
        if isinstance(other, (int, Poly)):
            return Frac(self.ring, self.ring(other) if isinstance(other, int) else other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Frac(self.ring, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(self.ring, -self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Frac(self.ring, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise DivisionByZero("division by zero in fraction field")
        return Frac(self.ring, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return Frac(self.ring, self.ring.one) / (self ** (-n))
        return Frac(self.ring, self.num**n, self.den**n)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, Frac) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_integral(self) -> bool:
        return self.den == self.ring.one

    def to_ring(self):
        if not self.is_integral():
            raise NotDivisible(f"{self!r} is not in the base ring")
        return self.num

    def __repr__(self):
        r = self.ring
        if self.is_integral():
            return f"Frac({r.format(self.num)})"
        return f"Frac(({r.format(self.num)})/({r.format(self.den)}))"


# ---------------------------------------------------------------------------
# ring descriptors


class _RingBase:
    kind: str
    two_is_unit: bool

    def frac(self, num, den=None) -> Frac:
        return Frac(self, num, den)

    def exact_div(self, a, b):
        if not b:
            raise DivisionByZero("exact division by zero")
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{self.format(b)} does not divide {self.format(a)}")
        return q

    def divides(self, b, a) -> bool:
        try:
            self.exact_div(a, b)
        except NotDivisible:
            return False
        return True

    def is_square(self, v):
        """Square root of ``v`` in R (for ring elements) or L (for :class:`Frac`), else ``None``.

        The root returned is the one in positive normal form.
        """
        if isinstance(v, Frac):
            if not v.num:
                return v
            s_num = self._numerator_sqrt(v.num)
            if s_num is None:
                return None
            s_den = self.sqrt(v.den)
            if s_den is None:
                return None
            return Frac(self, s_num, s_den)
        return self.sqrt(v)

    def _numerator_sqrt(self, a):
        return self.sqrt(a)

    def coprime(self, a, b) -> bool:
        return self.is_unit(self.gcd(a, b))


@dataclass(frozen=True)
class IntegerRing(_RingBase):
    kind: str = field(default="Z", init=False)
    two_is_unit: bool = field(default=False, init=False)

    @property
    def name(self) -> str:
        return "Z"

    @property
    def characteristic(self) -> int:
        return 0

    zero = 0
    one = 1

    def __call__(self, n) -> int:
        if type(n) is int:
            return n
        if isinstance(n, Fraction):
            if n.denominator != 1:
                raise NotDivisible(f"{n} is not an integer")
            return n.numerator
        return int(n)

    def element_type(self):
        return int

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def unit_inverse(self, u):
        return u

    def normalize(self, a):
        """Return ``(unit, normal)`` with ``a == unit * normal`` and ``normal >= 0``."""
        return (-1, -a) if a < 0 else (1, a)

    def is_positive(self, a) -> bool:
        return a > 0

    def gcd(self, a, b):
        if a == 0 and b == 0:
            raise BothZero("gcd(0, 0) is undefined")
        return math.gcd(a, b)

    def sqrt(self, a):
        if a < 0:
            return None
        s = math.isqrt(a)
        return s if s * s == a else None

    def factor(self, a, budget: Optional[int] = None) -> PrimeFactorization:
        unit, fs = factorint(a, budget)
        return PrimeFactorization(unit, tuple(fs.items()))

    def is_square_free(self, a, budget: Optional[int] = None) -> bool:
        if a == 0:
            raise ZeroInput("square-free test of 0")
        _, fs = factorint(a, budget)
        return all(e == 1 for e in fs.values())

    def format(self, a) -> str:
        return str(a)


class _PolyRing(_RingBase):
    """Shared behaviour of Q[t] and F_p[t]."""

    p: Optional[int]
    var: str

    @property
    def zero(self) -> Poly:
        return Poly((), self.p, self.var)

    @property
    def one(self) -> Poly:
        return Poly((1,), self.p, self.var)

    def __call__(self, n) -> Poly:
        if isinstance(n, Poly):
            if n.p != self.p:
                raise TypeError("polynomial over the wrong coefficient field")
            return n
        return Poly((n,), self.p, self.var)

    def gen(self) -> Poly:
        return Poly((0, 1), self.p, self.var)

    def element_type(self):
        return Poly

    def is_unit(self, a) -> bool:
        return bool(a) and a.degree == 0

    def unit_inverse(self, u):
        return Poly((u._inv_coeff(u.coeffs[0]),), self.p, self.var)

    def normalize(self, a):
        if not a:
            return self.one, a
        lc = a.lc
        return Poly((lc,), self.p, self.var), a.monic()

    def gcd(self, a, b):
        if not a and not b:
            raise BothZero("gcd(0, 0) is undefined")
        while b:
            a, b = b, a % b
        return a.monic()

    def derivative(self, a) -> Poly:
        return a.derivative()

    def is_square_free(self, a, budget: Optional[int] = None) -> bool:
        if not a:
            raise ZeroInput("square-free test of 0")
        if a.degree <= 0:
            return True
        da = a.derivative()
        if not da:
            raise InseparableInput(
                f"{self.format(a)} has zero derivative over F_{self.p}; gcd test is inconclusive"
            )
        return self.gcd(a, da).degree == 0

    def sqrt(self, a):
        if not a:
            return a
        c = self._coeff_sqrt(a.lc)
        if c is None:
            return None
        m = _monic_poly_sqrt(a.monic())
        if m is None:
            return None
        root = m * Poly((c,), self.p, self.var)
        return root if self.is_positive(root) else -root

    def is_positive(self, a) -> bool:
        return bool(a) and self._coeff_positive(a.lc)

    def factor(self, a, budget: Optional[int] = None) -> PrimeFactorization:
        if not a:
            raise ZeroInput("cannot factor 0")
        return _sympy_factor(self, a)

    def format(self, a) -> str:
        return format_poly(a)


@dataclass(frozen=True)
class RationalPolyRing(_PolyRing):
    var: str = "t"
    kind: str = field(default="Q[t]", init=False)
    two_is_unit: bool = field(default=True, init=False)

    @property
    def p(self):
        return None

    @property
    def name(self) -> str:
        return f"Q[{self.var}]"

    @property
    def characteristic(self) -> int:
        return 0

    def _coeff_sqrt(self, c: Fraction):
        if c < 0:
            return None
        n, d = math.isqrt(c.numerator), math.isqrt(c.denominator)
        if n * n != c.numerator or d * d != c.denominator:
            return None
        return Fraction(n, d)

    def _coeff_positive(self, c) -> bool:
        return c > 0


@dataclass(frozen=True)
class PrimePolyRing(_PolyRing):
    p: int = 3
    var: str = "t"
    kind: str = field(default="F_p[t]", init=False)
    two_is_unit: bool = field(default=True, init=False)

    def __post_init__(self):
        if self.p == 2:
            raise EvenPrime("characteristic 2 is not supported")
        if not is_probable_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F{self.p}[{self.var}]"

    @property
    def characteristic(self) -> int:
        return self.p

    def _coeff_sqrt(self, c: int):
        from sympy.ntheory import sqrt_mod

        if c % self.p == 0:
            return 0
        r = sqrt_mod(c, self.p)
        if r is None:
            return None
        return min(r, self.p - r)

    def _coeff_positive(self, c) -> bool:
        return 0 < c <= (self.p - 1) // 2


ZZ = IntegerRing()


def _monic_poly_sqrt(a: Poly) -> Optional[Poly]:
    # top-down coefficient matching; needs characteristic != 2
    if a.degree % 2:
        return None
    n = a.degree // 2
    p = a.p
    q = [0] * (n + 1)
    q[n] = a._one_coeff()
    half = Fraction(1, 2) if p is None else pow(2, -1, p)
    for k in range(1, n + 1):
        s = 0
        for i in range(n - k + 1, n + 1):
            j = 2 * n - k - i
            if n - k < j <= n:
                s += q[i] * q[j]
        val = (a.coeffs[2 * n - k] - s) * half
        q[n - k] = val % p if p is not None else val
    root = a._like(q)
    return root if root * root == a else None


def _sympy_factor(ring: _PolyRing, a: Poly) -> PrimeFactorization:
    import sympy

    t = sympy.Symbol(ring.var)
    if ring.p is None:
        sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(a.coeffs)], t, domain="QQ")
    else:
        sp = sympy.Poly([int(c) for c in reversed(a.coeffs)], t, modulus=ring.p)
    unit_c, parts = sp.factor_list()
    unit = ring(_from_sympy_coeff(unit_c, ring.p))
    factors = []
    for fac, e in parts:
        cs = [_from_sympy_coeff(c, ring.p) for c in reversed(fac.all_coeffs())]
        poly = Poly(cs, ring.p, ring.var)
        u, m = ring.normalize(poly)
        unit = unit * u**e
        factors.append((m, e))
    factors.sort(key=lambda fe: (fe[0].degree, [str(c) for c in fe[0].coeffs]))
    return PrimeFactorization(unit, tuple(factors))


def _from_sympy_coeff(c, p):
    c = sympy_rational(c)
    return c if p is None else _fp(c, p)


def sympy_rational(c) -> Fraction:
    import sympy

    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def format_poly(a: Poly) -> str:
    """Canonical text: descending degree, explicit ``*`` and ``^``."""
    if not a:
        return "0"
    parts: list[tuple[bool, str]] = []
    var = a.var
    for i in range(a.degree, -1, -1):
        c = a.coeffs[i]
        if not c:
            continue
        neg = a.p is None and c < 0
        mag = -c if neg else c
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def ring_from_name(name: str):
    """``"Z"``, ``"Q[t]"`` or ``"F<p>[t]"`` for an odd prime p."""
    name = name.strip()
    if name == "Z":
        return ZZ
    if name == "Q[t]":
        return RationalPolyRing("t")
    m = re.fullmatch(r"F(\d+)\[t\]", name)
    if m:
        p = int(m.group(1))
        if p == 2:
            raise EvenPrime("F2[t] has characteristic 2; an odd prime is required")
        if p < 2 or not is_probable_prime(p):
            raise UnknownRing(f"F{p}[t]: {p} is not a prime")
        return PrimePolyRing(p, "t")
    raise UnknownRing(f"unknown ring {name!r} (expected Z, Q[t] or F<p>[t])")
