"""Arithmetic in T = R[x, y]/(f1, f2) and the maps out of it.

T is free over R on ``1, xbar, ybar, xbar*ybar``; a :class:`TElement` is the
coordinate vector on that basis.  For a radical presentation
``f1 = x^2 - d^2 u``, ``f2 = y^2 - c^2 u`` the homomorphisms
``psi_r: x -> d z, y -> (-1)^(r+1) c z`` into ``R[z]/(z^2 - u)`` cut out the two
minimal primes ``P_r``; :func:`membership_in_Pr` decides ``h in P_r`` by
the explicit monic-division chain and :func:`psi_eval` by evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .errors import MixedPresentations, NonRadicalPresentation, NotDivisible
from .polyalg import BiPoly, MonicQuadratic, Residue, UniPoly, monic_divide

BASIS = ((0, 0), (1, 0), (0, 1), (1, 1))
BASIS_NAMES = ("1", "x", "y", "x*y")


@dataclass(frozen=True)
class Presentation:
    """The pair (f1 in x, f2 in y) over a base ring."""

    ring: Any
    f1: MonicQuadratic
    f2: MonicQuadratic

    def element(self, r0=0, r1=0, r2=0, r3=0) -> "TElement":
        R = self.ring
        return TElement((R(r0), R(r1), R(r2), R(r3)), self)

    def zero(self) -> "TElement":
        return self.element()

    def one(self) -> "TElement":
        return self.element(1)

    def basis(self) -> list["TElement"]:
        return [TElement(tuple(self.ring(int(i == k)) for i in range(4)), self) for k in range(4)]

    def reduce(self, h: BiPoly) -> "TElement":
        """Normal form of ``h`` modulo (f1, f2)."""
        R = self.ring
        xs = _power_table(self.f1, max(h.degree_in("x"), 1), R)
        ys = _power_table(self.f2, max(h.degree_in("y"), 1), R)
        r0 = r1 = r2 = r3 = R.zero
        for (i, j), c in h.terms.items():
            a0, a1 = xs[i]
            b0, b1 = ys[j]
            if a0 and b0:
                r0 = r0 + c * a0 * b0
            if a1 and b0:
                r1 = r1 + c * a1 * b0
            if a0 and b1:
                r2 = r2 + c * a0 * b1
            if a1 and b1:
                r3 = r3 + c * a1 * b1
        return TElement((R(r0), R(r1), R(r2), R(r3)), self)

    def f1_poly(self) -> BiPoly:
        return self.f1.as_bipoly()

    def f2_poly(self) -> BiPoly:
        return self.f2.as_bipoly()

    def is_radical(self) -> bool:
        return self.f1.is_radical() and self.f2.is_radical()


def _power_table(q: MonicQuadratic, n: int, R) -> list[tuple]:
    # var^k = alpha_k + beta_k * var modulo q
    table = [(R.one, R.zero), (R.zero, R.one)]
    for _ in range(n - 1):
        al, be = table[-1]
        table.append((-q.b * be, al + q.a * be))
    return table


class TElement:
    __slots__ = ("coords", "presentation")

    def __init__(self, coords: tuple, presentation: Presentation):
        self.coords = tuple(coords)
        self.presentation = presentation

    def _check(self, other: "TElement") -> None:
        if other.presentation != self.presentation:
            raise MixedPresentations("elements of different presentations")

    def __add__(self, other: "TElement") -> "TElement":
        self._check(other)
        return TElement(tuple(a + b for a, b in zip(self.coords, other.coords)), self.presentation)

    def __neg__(self) -> "TElement":
        return TElement(tuple(-a for a in self.coords), self.presentation)

    def __sub__(self, other: "TElement") -> "TElement":
        return self + (-other)

    def scale(self, r) -> "TElement":
        return TElement(tuple(r * a for a in self.coords), self.presentation)

    def __mul__(self, other):
        if isinstance(other, TElement):
            return t_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TElement):
            return NotImplemented
        return self.presentation == other.presentation and all(
            a == b for a, b in zip(self.coords, other.coords)
        )

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def to_bipoly(self) -> BiPoly:
        return BiPoly(dict(zip(BASIS, self.coords)))

    def __repr__(self):
        return f"TElement({list(self.coords)!r})"


def t_mul(s: TElement, t: TElement) -> TElement:
    """Product in T, reduced by ``xbar^2 = a xbar - b`` and ``ybar^2 = c ybar - d``."""
    s._check(t)
    pres = s.presentation
    a, b = pres.f1.a, pres.f1.b
    c, d = pres.f2.a, pres.f2.b
    # P[i][j] multiplies xbar^i ybar^j, i, j <= 2
    P = [[0] * 3 for _ in range(3)]
    for (i1, j1), u in zip(BASIS, s.coords):
        if not u:
            continue
        for (i2, j2), v in zip(BASIS, t.coords):
            if v:
                P[i1 + i2][j1 + j2] = P[i1 + i2][j1 + j2] + u * v
    for j in range(3):
        top = P[2][j]
        if top:
            P[1][j] = P[1][j] + a * top
            P[0][j] = P[0][j] - b * top
    for i in range(2):
        top = P[i][2]
        if top:
            P[i][1] = P[i][1] + c * top
            P[i][0] = P[i][0] - d * top
    R = pres.ring
    return TElement((R(P[0][0]), R(P[1][0]), R(P[0][1]), R(P[1][1])), pres)


# ---------------------------------------------------------------------------
# radical presentations and psi_r


@dataclass(frozen=True)
class RadicalWitness:
    """``(c, d, u)`` with ``f1 = x^2 - d^2 u`` and ``f2 = y^2 - c^2 u``."""

    c: Any
    d: Any
    u: Any

    @property
    def a1(self):
        return self.d * self.d * self.u

    @property
    def a2(self):
        return self.c * self.c * self.u

    def target_modulus(self) -> UniPoly:
        return UniPoly([-self.u, 0, 1], "z")

    def f1(self) -> BiPoly:
        return BiPoly({(2, 0): 1, (0, 0): -self.a1})

    def f2(self) -> BiPoly:
        return BiPoly({(0, 2): 1, (0, 0): -self.a2})

    def f3(self, r: int) -> BiPoly:
        return BiPoly({(0, 1): self.d, (1, 0): _sign(r) * self.c})

    def f4(self, r: int) -> BiPoly:
        return BiPoly({(1, 1): 1, (0, 0): _sign(r) * self.c * self.d * self.u})


def _sign(r: int) -> int:
    return -1 if r % 2 else 1


def _require_radical(pres: Optional[Presentation], w: RadicalWitness) -> None:
    if pres is None:
        return
    if not pres.is_radical() or pres.f1.b != -w.a1 or pres.f2.b != -w.a2:
        raise NonRadicalPresentation("presentation is not x^2 - d^2 u, y^2 - c^2 u for the witnesses")


def psi_eval(h: BiPoly, r: int, w: RadicalWitness, presentation: Optional[Presentation] = None) -> Residue:
    """Image of ``h`` under ``x -> d z, y -> (-1)^(r+1) c z`` in ``R[z]/(z^2 - u)``."""
    _require_radical(presentation, w)
    xi = w.d
    yi = -_sign(r) * w.c
    u = w.u
    p0 = p1 = 0
    xp = {0: 1}
    yp = {0: 1}
    up = {0: 1}
    for (i, j), c in h.terms.items():
        if i not in xp:
            xp[i] = xi**i
        if j not in yp:
            yp[j] = yi**j
        k = i + j
        h2 = k // 2
        if h2 not in up:
            up[h2] = u**h2
        v = c * xp[i] * yp[j] * up[h2]
        if k % 2:
            p1 = p1 + v
        else:
            p0 = p0 + v
    return Residue([p0, p1], w.target_modulus())


@dataclass(frozen=True)
class LinearNormalForm:
    """``h = sum(quotient * divisor) + v1*y + b1*x + v2`` for the division chain."""

    v1: Any
    b1: Any
    v2: Any
    transcript: tuple  # ((divisor name, quotient BiPoly), ...)

    def linear_part(self) -> BiPoly:
        return BiPoly({(0, 1): self.v1, (1, 0): self.b1, (0, 0): self.v2})


def reduce_to_linear(h: BiPoly, r: int, w: RadicalWitness) -> LinearNormalForm:
    """Reduce ``h`` to ``v1 y + b1 x + v2`` modulo (f1, f2, f4_r).

    Order of divisions: f1 in x; the x-free part by f2 in y; the x-linear
    part ``q1(y) x`` against ``f4_r = xy + (-1)^r c d u``; what that leaves by
    f2 again.
    """
    f1, f2 = w.f1(), w.f2()
    q, rem = monic_divide(h, f1, "x")
    q0 = BiPoly({m: c for m, c in rem.terms.items() if m[0] == 0})
    q1 = {m[1]: c for m, c in rem.terms.items() if m[0] == 1}
    q2, lin0 = monic_divide(q0, f2, "y")
    # q1(y) x = f4 * Q(y) + q4(y) + b1 x with q1 = y Q + b1
    b1 = q1.get(0, 0)
    q3 = BiPoly({(0, k - 1): c for k, c in q1.items() if k >= 1})
    q4 = q3 * (-_sign(r) * w.c * w.d * w.u)
    q5, lin4 = monic_divide(q4, f2, "y")
    v1 = lin0.coeff(0, 1) + lin4.coeff(0, 1)
    v2 = lin0.coeff(0, 0) + lin4.coeff(0, 0)
    transcript = (("f1", q), ("f2", q2), ("f4", q3), ("f2", q5))
    return LinearNormalForm(v1, b1, v2, transcript)


def membership_cofactor(h: BiPoly, r: int, w: RadicalWitness, ring) -> tuple[bool, Optional[Any], LinearNormalForm]:
    """Decide ``h in P_r`` from the linear normal form.

    Returns ``(member, cofactor, normal form)`` where, for members,
    ``v1 y + b1 x = (-1)^r * cofactor * f3_r``.
    """
    lnf = reduce_to_linear(h, r, w)
    s = _sign(r)
    if lnf.v2 or -s * lnf.v1 * w.c + lnf.b1 * w.d:
        return False, None, lnf
    try:
        cof = ring.exact_div(ring(lnf.b1), ring(w.c))
    except NotDivisible:
        return False, None, lnf
    if lnf.v1 != s * cof * w.d:
        return False, None, lnf
    return True, cof, lnf


def membership_in_Pr(h: BiPoly, r: int, w: RadicalWitness, ring) -> bool:
    return membership_cofactor(h, r, w, ring)[0]


def membership_by_psi(h: BiPoly, r: int, w: RadicalWitness) -> bool:
    return psi_eval(h, r, w).is_zero()


def membership_transcript(h: BiPoly, r: int, w: RadicalWitness, ring) -> Optional[tuple]:
    """Full witness ``h = sum(q_i * g_i)`` over the generators f1, f2, f3, f4 of P_r, or None."""
    member, cof, lnf = membership_cofactor(h, r, w, ring)
    if not member:
        return None
    return lnf.transcript + (("f3", BiPoly.const(_sign(r) * cof)),)


def zero_divisor_pair(w: RadicalWitness, ring) -> tuple[TElement, TElement]:
    """``(d ybar - c xbar, d ybar + c xbar)``: nonzero, with zero product in T."""
    pres = Presentation(ring, MonicQuadratic(ring.zero, ring(-w.a1), "x"), MonicQuadratic(ring.zero, ring(-w.a2), "y"))
    return pres.element(0, -w.c, w.d, 0), pres.element(0, w.c, w.d, 0)


# ---------------------------------------------------------------------------
# general elimination maps and division-chain membership


@dataclass(frozen=True)
class EliminationMap:
    """Ring map ``T -> R[z]/(modulus)`` given by the images of x and y."""

    modulus: UniPoly
    x_image: UniPoly
    y_image: UniPoly

    def x_res(self) -> Residue:
        return Residue.from_poly(self.x_image, self.modulus)

    def y_res(self) -> Residue:
        return Residue.from_poly(self.y_image, self.modulus)

    def apply(self, h: BiPoly) -> Residue:
        one = Residue.embed(1, self.modulus)
        return h.substitute(self.x_res(), self.y_res(), one)

    def basis_images(self) -> list[Residue]:
        one = Residue.embed(1, self.modulus)
        x, y = self.x_res(), self.y_res()
        return [one, x, y, x * y]


def division_chain(h: BiPoly, plan) -> tuple[tuple, BiPoly]:
    """Successive monic divisions; ``plan`` is ``[(name, divisor, var), ...]``.

    Returns the transcript ``((name, quotient), ...)`` and the final remainder.
    """
    steps = []
    rem = h
    for name, divisor, var in plan:
        q, rem = monic_divide(rem, divisor, var)
        steps.append((name, q))
    return tuple(steps), rem


def replay(transcript, generators: dict) -> BiPoly:
    """``sum(quotient * generators[name])`` over the transcript."""
    acc = BiPoly()
    for name, q in transcript:
        acc = acc + q * generators[name]
    return acc
