"""Case analysis for T = R[x, y]/(f1, f2) and construction of retractions S -> R.

``build_retraction`` dispatches on the shape of the problem:

* J = (0): T is free of rank 4, rho is the projection on the coordinate of 1.
* f1 or f2 has a root in R: the minimal primes contain ``x - root`` (or
  ``y - root``) and T/P is free of rank <= 2.
* f1, f2 radical and T not a domain: ``f1 = x^2 - d^2 u``, ``f2 = y^2 - c^2 u``
  and the minimal primes are ``P_r = ker(psi_r)``.
* 2 a unit in R: complete both squares and pull the radical primes back.
* R = Z, general quadratics: ``disc g = e^2 disc f`` and the minimal primes
  are generated by the lines ``y = +-e x + (c -+ a e)/2``.

In every case the selected prime P comes with an elimination map
``phi: T -> R[z]/(m)`` with kernel P, and ``rho = pi_1 o phi``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Optional

from .certificate import ExtensionProblem, MinimalPrimeCert, SplitCertificate, case_tag
from .errors import (
    DomainWithNonzeroJ,
    HypothesesNotMet,
    InternalIdentityFailure,
    NoPrimeContainsJ,
    NotApplicable,
    NotDivisible,
    TwoNotUnit,
)
from .polyalg import BiPoly, MonicQuadratic, Residue, UniPoly, quadratic_root_in_ext
from .quotient import (
    EliminationMap,
    Presentation,
    RadicalWitness,
    TElement,
    division_chain,
    membership_by_psi,
    membership_transcript,
    t_mul,
)
from .rings import Frac

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# domain test


@dataclass(frozen=True)
class DomainVerdict:
    kind: str  # "Domain" | "NonDomain" | "ReducibleF1"
    root: Any = None  # Residue in E for NonDomain, ring element for ReducibleF1

    def __str__(self):
        return self.kind


def roots_in_ring(ring, q: MonicQuadratic) -> list:
    """Roots of ``q`` in R, in canonical order ``(a + s)/2, (a - s)/2``.

    A monic quadratic over a UFD that splits over L already splits over R.
    """
    s = ring.is_square(Frac(ring, ring(q.discriminant())))
    if s is None:
        return []
    s = s.to_ring()
    two = ring(2)
    roots = [ring.exact_div(ring(q.a + s), two)]
    if s:
        roots.append(ring.exact_div(ring(q.a - s), two))
    return roots


def domain_test(ring, f1: MonicQuadratic, f2: MonicQuadratic) -> DomainVerdict:
    roots = roots_in_ring(ring, f1)
    if roots:
        return DomainVerdict("ReducibleF1", roots[0])
    root = quadratic_root_in_ext(ring, f2, f1)
    if root is None:
        return DomainVerdict("Domain")
    return DomainVerdict("NonDomain", root)


def zero_divisors(problem: ExtensionProblem, verdict: DomainVerdict) -> tuple[TElement, TElement]:
    """A pair of nonzero elements of T with zero product, from a non-domain verdict."""
    ring = problem.ring
    pres = problem.presentation()
    if verdict.kind == "ReducibleF1":
        roots = roots_in_ring(ring, problem.f1)
        r1 = roots[0]
        r2 = roots[1] if len(roots) > 1 else roots[0]
        return pres.element(-r1, 1), pres.element(-r2, 1)
    if verdict.kind != "NonDomain":
        raise NotApplicable("T is a domain")
    alpha, beta = verdict.root.coords
    c = Frac(ring, ring(problem.f2.a))
    alpha_bar = c - alpha
    den = _lcm(ring, alpha.den, beta.den)
    scale = Frac(ring, den)

    def integral(v: Frac):
        return (v * scale).to_ring()

    first = pres.element(-integral(alpha), -integral(beta), den, 0)
    second = pres.element(-integral(alpha_bar), integral(beta), den, 0)
    return first, second


def _lcm(ring, a, b):
    return ring.exact_div(a * b, ring.gcd(a, b))


# ---------------------------------------------------------------------------
# radical case


def radical_decompose(ring, a1, a2) -> RadicalWitness:
    """``(c, d, u)`` with ``a1 = d^2 u``, ``a2 = c^2 u``, ``gcd(c, d) = 1``.

    Read off the root ``e2 * xbar`` of ``y^2 - a2`` in ``L[x]/(x^2 - a1)``,
    written in lowest terms ``e2 = c/d``.
    """
    f1 = MonicQuadratic(ring.zero, ring(-a1), "x")
    f2 = MonicQuadratic(ring.zero, ring(-a2), "y")
    verdict = domain_test(ring, f1, f2)
    if verdict.kind != "NonDomain":
        raise NotApplicable(f"radical_decompose needs a non-domain presentation, got {verdict.kind}")
    e1, e2 = verdict.root.coords
    if e1 or not e2:
        raise NotApplicable("f2 already splits over the fraction field")
    c, d = e2.num, e2.den
    u = ring.exact_div(ring(a1), d * d)
    if c * c * u != a2:
        raise InternalIdentityFailure("a2 != c^2 u after decomposition")
    return RadicalWitness(ring(c), ring(d), ring(u))


def _radical_generators(w: RadicalWitness, r: int) -> tuple:
    return (("f1", w.f1()), ("f2", w.f2()), ("f3", w.f3(r)), ("f4", w.f4(r)))


def _radical_elimination(w: RadicalWitness, r: int, shift_x=0, shift_y=0) -> EliminationMap:
    sign = 1 if r % 2 else -1  # (-1)^(r+1)
    return EliminationMap(
        w.target_modulus(),
        UniPoly([shift_x, w.d], "z"),
        UniPoly([shift_y, sign * w.c], "z"),
    )


def minimal_primes_radical(ring, w: RadicalWitness) -> list[MinimalPrimeCert]:
    primes = []
    for r in (0, 1):
        primes.append(
            MinimalPrimeCert(
                case="radical",
                label=f"P{r}",
                index=r,
                generators=_radical_generators(w, r),
                witnesses=(("c", w.c), ("d", w.d), ("u", w.u)),
                elimination=_radical_elimination(w, r),
            )
        )
    return primes


# ---------------------------------------------------------------------------
# completing the square


@dataclass(frozen=True)
class CompletedSquare:
    """``x = X + shift_x``, ``y = Y + shift_y`` turns (f, g) into ``X^2 - a1``, ``Y^2 - a2``."""

    a1: Any
    a2: Any
    shift_x: Any
    shift_y: Any


def complete_square(ring, f: MonicQuadratic, g: MonicQuadratic) -> CompletedSquare:
    if not ring.two_is_unit:
        raise TwoNotUnit("completing the square needs 2 to be a unit")
    half = ring.exact_div(ring.one, ring(2))
    sx = ring(f.a * half)
    sy = ring(g.a * half)
    return CompletedSquare(ring(sx * sx - f.b), ring(sy * sy - g.b), sx, sy)


def shift(h: BiPoly, dx, dy) -> BiPoly:
    """``h(x + dx, y + dy)``."""
    one = BiPoly.const(1)
    return h.substitute(BiPoly({(1, 0): 1, (0, 0): dx}), BiPoly({(0, 1): 1, (0, 0): dy}), one)


def minimal_primes_completed(ring, cs: CompletedSquare, w: RadicalWitness) -> list[MinimalPrimeCert]:
    primes = []
    wit = (
        ("shift_x", cs.shift_x),
        ("shift_y", cs.shift_y),
        ("a1", cs.a1),
        ("a2", cs.a2),
        ("c", w.c),
        ("d", w.d),
        ("u", w.u),
    )
    for r in (0, 1):
        gens = tuple((name, shift(g, -cs.shift_x, -cs.shift_y)) for name, g in _radical_generators(w, r))
        primes.append(
            MinimalPrimeCert(
                case="completed-square",
                label=f"P{r}",
                index=r,
                generators=gens,
                witnesses=wit,
                elimination=_radical_elimination(w, r, cs.shift_x, cs.shift_y),
            )
        )
    return primes


# ---------------------------------------------------------------------------
# nonradical case over Z


def nonradical_witness(ring, f: MonicQuadratic, g: MonicQuadratic, budget: Optional[int] = None):
    """``(e, (c - a e)/2, (c + a e)/2)`` with ``c^2 - 4d = e^2 (a^2 - 4b)``.

    Here ``f = x^2 - a x + b`` and ``g = y^2 - c y + d``.  Raises
    :class:`HypothesesNotMet` naming the first failed requirement.
    """
    a, c = f.a, g.a
    if not ring.coprime(ring(2), ring(c)):
        raise HypothesesNotMet("gcd", "gcd(2, c) is not a unit")
    disc_f = ring(f.discriminant())
    if not disc_f:
        raise HypothesesNotMet("square-free", "disc(f) = 0")
    if ring.is_square(Frac(ring, disc_f)) is not None:
        raise HypothesesNotMet("irreducible", "f splits over the fraction field")
    if not ring.is_square_free(disc_f, budget):
        raise HypothesesNotMet("square-free", f"disc(f) = {ring.format(disc_f)} is not square-free")
    try:
        quotient = ring.exact_div(ring(g.discriminant()), disc_f)
    except NotDivisible:
        raise HypothesesNotMet("divisibility", "disc(f) does not divide disc(g)") from None
    e = ring.sqrt(quotient)
    if e is None or not e:
        raise HypothesesNotMet("non-square quotient", "disc(g)/disc(f) is not a nonzero square")
    try:
        half_minus = ring.exact_div(ring(c - a * e), ring(2))
        half_plus = ring.exact_div(ring(c + a * e), ring(2))
    except NotDivisible:
        raise HypothesesNotMet("divisibility", "2 does not divide c +- a e") from None
    return e, half_minus, half_plus


def minimal_primes_nonradical(
    ring, f: MonicQuadratic, g: MonicQuadratic, e, half_minus, half_plus, orientation: str = "xy"
) -> list[MinimalPrimeCert]:
    """``P1 = (h1)``, ``P2 = (h2)`` with ``h1 = y - e x - (c - ae)/2``, ``h2 = y + e x - (c + ae)/2``.

    ``orientation == "yx"`` means f is the polynomial in y and g the one in x.
    """
    lines = [
        (1, BiPoly({(0, 1): 1, (1, 0): -e, (0, 0): -half_minus}), UniPoly([half_minus, e], "z")),
        (2, BiPoly({(0, 1): 1, (1, 0): e, (0, 0): -half_plus}), UniPoly([half_plus, -e], "z")),
    ]
    fz = UniPoly([f.b, -f.a, 1], "z")
    zvar = UniPoly([0, 1], "z")
    pres = Presentation(ring, f.with_var("x"), g.with_var("y"))
    h1h2 = pres.reduce(lines[0][1] * lines[1][1])
    if h1h2:
        raise InternalIdentityFailure("h1*h2 is not zero modulo (f, g)")
    wit = (("e", e), ("half_minus", half_minus), ("half_plus", half_plus))
    primes = []
    for j, h, gamma in lines:
        if not g(Residue.from_poly(gamma, fz)).is_zero():
            raise InternalIdentityFailure(f"g does not vanish at the root of h{j}")
        if orientation == "xy":
            f1, f2, line = f.as_bipoly(), g.with_var("y").as_bipoly(), h
            elim = EliminationMap(fz, zvar, gamma)
        else:
            f1, f2, line = g.with_var("x").as_bipoly(), f.with_var("y").as_bipoly(), h.swap()
            elim = EliminationMap(fz, gamma, zvar)
        primes.append(
            MinimalPrimeCert(
                case="nonradical",
                label=f"P{j}",
                index=j,
                generators=(("f1", f1), ("f2", f2), (f"h{j}", line)),
                witnesses=wit,
                elimination=elim,
                orientation=orientation,
            )
        )
    return primes


# ---------------------------------------------------------------------------
# reducible generators


def minimal_primes_reducible(ring, f1: MonicQuadratic, f2: MonicQuadratic) -> list[MinimalPrimeCert]:
    roots1 = roots_in_ring(ring, f1)
    roots2 = roots_in_ring(ring, f2)
    g1, g2 = ("f1", f1.as_bipoly()), ("f2", f2.with_var("y").as_bipoly())
    zvar = UniPoly([0, 1], "z")
    primes = []
    if roots1 and roots2:
        for r in roots1:
            for s in roots2:
                primes.append(
                    (
                        (g1, g2, ("l1", BiPoly({(1, 0): 1, (0, 0): -r})), ("l2", BiPoly({(0, 1): 1, (0, 0): -s}))),
                        (("root_x", r), ("root_y", s)),
                        EliminationMap(UniPoly([0, 1], "z"), UniPoly([r], "z"), UniPoly([s], "z")),
                    )
                )
    elif roots1:
        for r in roots1:
            primes.append(
                (
                    (g1, g2, ("l1", BiPoly({(1, 0): 1, (0, 0): -r}))),
                    (("root_x", r),),
                    EliminationMap(f2.as_unipoly("z"), UniPoly([r], "z"), zvar),
                )
            )
    elif roots2:
        for s in roots2:
            primes.append(
                (
                    (g1, g2, ("l2", BiPoly({(0, 1): 1, (0, 0): -s}))),
                    (("root_y", s),),
                    EliminationMap(f1.as_unipoly("z"), zvar, UniPoly([s], "z")),
                )
            )
    else:
        raise NotApplicable("neither generator polynomial has a root in R")
    return [
        MinimalPrimeCert("reducible", f"P{k}", k, gens, wit, elim) for k, (gens, wit, elim) in enumerate(primes)
    ]


# ---------------------------------------------------------------------------
# minimal primes of T


def minimal_primes(problem: ExtensionProblem, budget: Optional[int] = None) -> list[MinimalPrimeCert]:
    """All minimal primes of T with elimination maps; ``[]`` when T is a domain."""
    ring, f1, f2 = problem.ring, problem.f1, problem.f2
    if roots_in_ring(ring, f1) or roots_in_ring(ring, f2):
        return minimal_primes_reducible(ring, f1, f2)
    if domain_test(ring, f1, f2).kind == "Domain":
        return []
    if f1.is_radical() and f2.is_radical():
        return minimal_primes_radical(ring, radical_decompose(ring, -f1.b, -f2.b))
    if ring.two_is_unit:
        cs = complete_square(ring, f1, f2)
        w = radical_decompose(ring, cs.a1, cs.a2)
        return minimal_primes_completed(ring, cs, w)
    try:
        e, hm, hp = nonradical_witness(ring, f1, f2, budget)
        return minimal_primes_nonradical(ring, f1, f2, e, hm, hp, "xy")
    except HypothesesNotMet as first:
        try:
            e, hm, hp = nonradical_witness(ring, f2.with_var("x"), f1.with_var("y"), budget)
        except HypothesesNotMet:
            raise first from None
        return minimal_primes_nonradical(ring, f2.with_var("x"), f1.with_var("y"), e, hm, hp, "yx")


def _plan(prime: MinimalPrimeCert):
    gens = prime.generator_map()
    if prime.case == "free":
        return [("f1", gens["f1"], "x"), ("f2", gens["f2"], "y")]
    if prime.case == "reducible":
        plan = []
        if "l1" in gens:
            plan.append(("l1", gens["l1"], "x"))
        if "l2" in gens:
            plan.append(("l2", gens["l2"], "y"))
        if "l1" not in gens:
            plan.append(("f1", gens["f1"], "x"))
        elif "l2" not in gens:
            plan.append(("f2", gens["f2"], "y"))
        return plan
    if prime.case == "nonradical":
        name = f"h{prime.index}"
        if prime.orientation == "xy":
            return [(name, gens[name], "y"), ("f1", gens["f1"], "x")]
        return [(name, gens[name], "x"), ("f2", gens["f2"], "y")]
    raise NotApplicable(f"no division plan for {prime.case}")


def _radical_witness(prime: MinimalPrimeCert) -> RadicalWitness:
    return RadicalWitness(prime.witness("c"), prime.witness("d"), prime.witness("u"))


def membership(ring, prime: MinimalPrimeCert, h: BiPoly) -> Optional[tuple]:
    """Transcript ``((generator name, quotient), ...)`` proving ``h`` in the prime, or None."""
    if prime.case in ("radical", "completed-square"):
        w = _radical_witness(prime)
        if prime.case == "radical":
            target = h
        else:
            target = shift(h, prime.witness("shift_x"), prime.witness("shift_y"))
        transcript = membership_transcript(target, prime.index, w, ring)
        if (transcript is not None) != membership_by_psi(target, prime.index, w):
            raise InternalIdentityFailure("division-chain and psi membership routes disagree")
        if transcript is None or prime.case == "radical":
            return transcript
        sx, sy = prime.witness("shift_x"), prime.witness("shift_y")
        return tuple((name, shift(q, -sx, -sy)) for name, q in transcript)
    transcript, rem = division_chain(h, _plan(prime))
    if prime.elimination is not None and (not rem) != prime.elimination.apply(h).is_zero():
        raise InternalIdentityFailure("division chain disagrees with the elimination map")
    return None if rem else transcript


# ---------------------------------------------------------------------------
# identities recorded in certificates


def radical_identity(w: RadicalWitness, f1: BiPoly, f2: BiPoly, sx=0, sy=0) -> BiPoly:
    """``c^2 f1 - d^2 f2 + (dY - cX)(cX + dY)`` with ``X = x - sx``, ``Y = y - sy``."""
    X = BiPoly({(1, 0): 1, (0, 0): -sx})
    Y = BiPoly({(0, 1): 1, (0, 0): -sy})
    c, d = w.c, w.d
    return f1 * (c * c) - f2 * (d * d) + (Y * d - X * c) * (X * c + Y * d)


def identities_for(ring, problem: ExtensionProblem, prime: MinimalPrimeCert) -> tuple:
    f1, f2 = problem.f1.as_bipoly(), problem.f2.as_bipoly()
    if prime.case == "radical":
        return (("cdu", radical_identity(_radical_witness(prime), f1, f2)),)
    if prime.case == "completed-square":
        w = _radical_witness(prime)
        sx, sy, a1, a2 = (prime.witness(k) for k in ("shift_x", "shift_y", "a1", "a2"))
        X = BiPoly({(1, 0): 1, (0, 0): -sx})
        Y = BiPoly({(0, 1): 1, (0, 0): -sy})
        return (
            ("cdu", radical_identity(w, f1, f2, sx, sy)),
            ("shift-f1", f1 - (X * X - a1)),
            ("shift-f2", f2 - (Y * Y - a2)),
        )
    if prime.case == "nonradical":
        e, hm, hp = (prime.witness(k) for k in ("e", "half_minus", "half_plus"))
        if prime.orientation == "xy":
            f, g = f1, f2
            h1 = BiPoly({(0, 1): 1, (1, 0): -e, (0, 0): -hm})
            h2 = BiPoly({(0, 1): 1, (1, 0): e, (0, 0): -hp})
        else:
            f, g = f2, f1
            h1 = BiPoly({(1, 0): 1, (0, 1): -e, (0, 0): -hm})
            h2 = BiPoly({(1, 0): 1, (0, 1): e, (0, 0): -hp})
        prod = h1 * h2
        mod_i = problem.presentation().reduce(prod - (f * (e * e) + g)).to_bipoly()
        return (("h1h2-exact", prod - (g - f * (e * e))), ("h1h2-mod-I", mod_i))
    if prime.case == "reducible":
        wit = dict(prime.witnesses)
        terms = {}
        if "root_x" in wit:
            terms[(1, 0)] = ring(problem.f1(wit["root_x"]))
        if "root_y" in wit:
            terms[(0, 1)] = ring(problem.f2(wit["root_y"]))
        return (("root-residuals", BiPoly(terms)),)
    return ()


# ---------------------------------------------------------------------------
# certificates


def _free_prime(problem: ExtensionProblem) -> MinimalPrimeCert:
    return MinimalPrimeCert(
        case="free",
        label="(0)",
        index=0,
        generators=(("f1", problem.f1.as_bipoly()), ("f2", problem.f2.as_bipoly())),
        witnesses=(),
        elimination=None,
    )


def retraction_values(ring, prime: MinimalPrimeCert) -> tuple:
    if prime.elimination is None:
        return (ring.one, ring.zero, ring.zero, ring.zero)
    return tuple(ring(img.base) for img in prime.elimination.basis_images())


def _certificate(problem, prime, primes, transcripts, seed, canonical) -> SplitCertificate:
    ring = problem.ring
    return SplitCertificate(
        problem=problem,
        case=case_tag(prime),
        witnesses=prime.witnesses,
        orientation=prime.orientation,
        minimal_primes=tuple((p.label, p.generators) for p in primes),
        selected=prime,
        retraction=retraction_values(ring, prime),
        transcripts=transcripts,
        identities=identities_for(ring, problem, prime),
        probe_seed=seed,
        canonical=canonical,
    )


def _transcripts(ring, prime, gens) -> Optional[tuple]:
    out = []
    for h in gens:
        t = membership(ring, prime, h)
        if t is None:
            return None
        out.append((h, t))
    return tuple(out)


def build_certificates(
    problem: ExtensionProblem,
    all_primes: bool = False,
    budget: Optional[int] = None,
    seed: int = 0,
) -> list[SplitCertificate]:
    """Certificates for ``problem``; the first one is canonical.

    With ``all_primes`` every minimal prime containing J also gets a
    certificate (for J = (0) that is every minimal prime).
    """
    ring = problem.ring
    pres = problem.presentation()
    j_in_i = all(not pres.reduce(h) for h in problem.j_generators)
    certs: list[SplitCertificate] = []
    if j_in_i:
        free = _free_prime(problem)
        trans = _transcripts(ring, free, problem.j_generators)
        certs.append(_certificate(problem, free, (), trans, seed, True))
        if not all_primes:
            return certs
        try:
            primes = minimal_primes(problem, budget)
        except HypothesesNotMet as exc:
            log.warning("minimal primes not determined: %s", exc)
            return certs
    else:
        primes = minimal_primes(problem, budget)
        if not primes:
            raise DomainWithNonzeroJ("T is a domain, so J must be (0)")
    for prime in primes:
        trans = _transcripts(ring, prime, problem.j_generators)
        if trans is None:
            continue
        certs.append(_certificate(problem, prime, primes, trans, seed, not certs))
        if not all_primes:
            break
    if not certs:
        raise NoPrimeContainsJ("J is not contained in any minimal prime of T")
    return certs


def build_retraction(problem: ExtensionProblem, budget: Optional[int] = None, seed: int = 0) -> SplitCertificate:
    return build_certificates(problem, False, budget, seed)[0]
