"""Independent checker for splitting certificates.

Nothing here calls into the splitting engine: expected generators and
elimination maps are recomputed from the witnesses with plain polynomial
arithmetic, and every claim is re-checked directly.  All checks always run, so
a tampered certificate yields its full failure profile.

The decisive facts are ``rho(1) = 1`` and ``rho(m * j) = 0`` for every basis
monomial m and every J-generator j: together they say that rho is a
well-defined R-linear retraction on S = T/J.  The remaining checks tie the
witnesses, the selected prime and the transcripts to that retraction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .certificate import SCHEMA_VERSION, ExtensionProblem, SplitCertificate
from .polyalg import BiPoly, MonicQuadratic, UniPoly, Residue
from .quotient import BASIS, Presentation, TElement
from .sampling import random_bipoly, random_element

DEFAULT_PROBES = 32

IDENTITY_NAMES = {
    "radical": ("cdu",),
    "completed-square": ("cdu", "shift-f1", "shift-f2"),
    "nonradical": ("h1h2-exact", "h1h2-mod-I"),
    "reducible": ("root-residuals",),
    "free": (),
}


@dataclass
class Check:
    name: str
    stage: int
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def overall(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def format(self) -> str:
        lines = [f"overall: {self.overall} (probe seed {self.seed})"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            tail = f"  {c.detail}" if c.detail and not c.passed else ""
            lines.append(f"  [{c.stage}] {mark} {c.name}{tail}")
        return "\n".join(lines)


class _Fail(Exception):
    pass


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise _Fail(msg)


# ---------------------------------------------------------------------------
# helpers


def _sign(r: int) -> int:
    return -1 if r % 2 else 1


def _shift(h: BiPoly, dx, dy) -> BiPoly:
    return h.substitute(BiPoly({(1, 0): 1, (0, 0): dx}), BiPoly({(0, 1): 1, (0, 0): dy}), BiPoly.const(1))


def _radical_gens(c, d, u, r) -> tuple:
    s = _sign(r)
    return (
        ("f1", BiPoly({(2, 0): 1, (0, 0): -(d * d * u)})),
        ("f2", BiPoly({(0, 2): 1, (0, 0): -(c * c * u)})),
        ("f3", BiPoly({(0, 1): d, (1, 0): s * c})),
        ("f4", BiPoly({(1, 1): 1, (0, 0): s * c * d * u})),
    )


def _gens_equal(a, b) -> bool:
    if len(a) != len(b):
        return False
    return all(n1 == n2 and g1 == g2 for (n1, g1), (n2, g2) in zip(a, b))


def _elim_equal(e1, e2) -> bool:
    if e1 is None or e2 is None:
        return e1 is None and e2 is None
    return e1.modulus == e2.modulus and e1.x_image == e2.x_image and e1.y_image == e2.y_image


def _fx(q: MonicQuadratic) -> BiPoly:
    return q.with_var("x").as_bipoly()


def _fy(q: MonicQuadratic) -> BiPoly:
    return q.with_var("y").as_bipoly()


def _fz(q: MonicQuadratic) -> UniPoly:
    return UniPoly([q.b, -q.a, 1], "z")


class _Context:
    """Per-certificate derived data shared by the checks."""

    def __init__(self, problem: ExtensionProblem, cert: SplitCertificate):
        self.problem = problem
        self.cert = cert
        self.ring = problem.ring
        self.pres = Presentation(problem.ring, problem.f1, problem.f2)
        self.prime = cert.selected
        self.case = cert.selected.case
        self.w = dict(cert.witnesses)

    def rho(self, t: TElement):
        acc = self.ring.zero
        for coeff, value in zip(t.coords, self.cert.retraction):
            acc = acc + coeff * value
        return self.ring(acc)

    def phi(self, h: BiPoly) -> Residue:
        elim = self.prime.elimination
        one = Residue.embed(1, elim.modulus)
        return h.substitute(Residue.from_poly(elim.x_image, elim.modulus), Residue.from_poly(elim.y_image, elim.modulus), one)

    def basis_polys(self) -> list[BiPoly]:
        return [BiPoly.monomial(i, j) for i, j in BASIS]

    def orientation_pair(self):
        """(f, g) as (polynomial whose discriminant divides, the other one)."""
        if self.cert.orientation == "xy":
            return self.problem.f1, self.problem.f2
        return self.problem.f2, self.problem.f1

    # expected data from witnesses --------------------------------------

    def expected_primes(self) -> Optional[tuple]:
        w, ring = self.w, self.ring
        if self.case == "radical":
            return tuple((f"P{r}", _radical_gens(w["c"], w["d"], w["u"], r)) for r in (0, 1))
        if self.case == "completed-square":
            sx, sy = w["shift_x"], w["shift_y"]
            return tuple(
                (f"P{r}", tuple((n, _shift(g, -sx, -sy)) for n, g in _radical_gens(w["c"], w["d"], w["u"], r)))
                for r in (0, 1)
            )
        if self.case == "nonradical":
            e, hm, hp = w["e"], w["half_minus"], w["half_plus"]
            f1, f2 = _fx(self.problem.f1), _fy(self.problem.f2)
            h1 = BiPoly({(0, 1): 1, (1, 0): -e, (0, 0): -hm})
            h2 = BiPoly({(0, 1): 1, (1, 0): e, (0, 0): -hp})
            if self.cert.orientation == "yx":
                h1, h2 = h1.swap(), h2.swap()
            return (("P1", (("f1", f1), ("f2", f2), ("h1", h1))), ("P2", (("f1", f1), ("f2", f2), ("h2", h2))))
        if self.case == "free":
            return ()
        return None  # reducible: checked structurally

    def expected_elimination(self):
        w = self.w
        idx = self.prime.index
        if self.case in ("radical", "completed-square"):
            sx = w.get("shift_x", 0) if self.case == "completed-square" else 0
            sy = w.get("shift_y", 0) if self.case == "completed-square" else 0
            return (
                UniPoly([-w["u"], 0, 1], "z"),
                UniPoly([sx, w["d"]], "z"),
                UniPoly([sy, -_sign(idx) * w["c"]], "z"),
            )
        if self.case == "nonradical":
            f, _ = self.orientation_pair()
            gamma = UniPoly([w["half_minus"], w["e"]], "z") if idx == 1 else UniPoly([w["half_plus"], -w["e"]], "z")
            zvar = UniPoly([0, 1], "z")
            if self.cert.orientation == "xy":
                return (_fz(f), zvar, gamma)
            return (_fz(f), gamma, zvar)
        if self.case == "reducible":
            zvar = UniPoly([0, 1], "z")
            if "root_x" in w and "root_y" in w:
                return (zvar, UniPoly([w["root_x"]], "z"), UniPoly([w["root_y"]], "z"))
            if "root_x" in w:
                return (_fz(self.problem.f2), UniPoly([w["root_x"]], "z"), zvar)
            return (_fz(self.problem.f1), zvar, UniPoly([w["root_y"]], "z"))
        return None

    def expected_identities(self) -> dict:
        ring, w = self.ring, self.w
        f1, f2 = _fx(self.problem.f1), _fy(self.problem.f2)
        x, y = BiPoly.x(), BiPoly.y()
        if self.case in ("radical", "completed-square"):
            c, d = w["c"], w["d"]
            sx = w["shift_x"] if self.case == "completed-square" else 0
            sy = w["shift_y"] if self.case == "completed-square" else 0
            X, Y = x - sx, y - sy
            out = {"cdu": f1 * (c * c) - f2 * (d * d) + (Y * d - X * c) * (X * c + Y * d)}
            if self.case == "completed-square":
                out["shift-f1"] = f1 - (X * X - w["a1"])
                out["shift-f2"] = f2 - (Y * Y - w["a2"])
            return out
        if self.case == "nonradical":
            e, hm, hp = w["e"], w["half_minus"], w["half_plus"]
            fq, gq = self.orientation_pair()
            f, g = (f1, f2) if self.cert.orientation == "xy" else (f2, f1)
            u, v = (x, y) if self.cert.orientation == "xy" else (y, x)
            h1 = v - u * e - hm
            h2 = v + u * e - hp
            prod = h1 * h2
            mod_i = self.pres.reduce(prod - (f * (e * e) + g)).to_bipoly()
            return {"h1h2-exact": prod - (g - f * (e * e)), "h1h2-mod-I": mod_i}
        if self.case == "reducible":
            terms = {}
            if "root_x" in w:
                terms[(1, 0)] = ring(self.problem.f1(w["root_x"]))
            if "root_y" in w:
                terms[(0, 1)] = ring(self.problem.f2(w["root_y"]))
            return {"root-residuals": BiPoly(terms)}
        return {}


# ---------------------------------------------------------------------------
# individual checks


def _check_schema(ctx: _Context):
    cert = ctx.cert
    _expect(cert.schema_version == SCHEMA_VERSION, f"unsupported schema version {cert.schema_version}")
    p = cert.selected
    tags = {
        "free": "WholeRingFree",
        "radical": f"Radical(r={p.index})",
        "completed-square": f"CompletedSquare(r={p.index})",
        "nonradical": f"Nonradical(j={p.index})",
        "reducible": f"Reducible(k={p.index})",
    }
    _expect(p.case in tags, f"unknown case {p.case!r}")
    _expect(cert.case == tags[p.case], f"case tag {cert.case!r} does not match selected prime")
    _expect(dict(cert.witnesses) == dict(p.witnesses), "certificate and prime witnesses differ")
    _expect(cert.orientation == p.orientation, "orientation mismatch")
    _expect(cert.orientation in ("xy", "yx"), f"bad orientation {cert.orientation!r}")
    _expect(len(cert.retraction) == 4, "retraction must have 4 coordinates")


def _check_problem_echo(ctx: _Context):
    _expect(ctx.cert.problem == ctx.problem, "certificate was issued for a different problem")


def _check_witness_equations(ctx: _Context):
    ring, w, case = ctx.ring, ctx.w, ctx.case
    f1, f2 = ctx.problem.f1, ctx.problem.f2
    idx = ctx.prime.index
    if case == "radical":
        c, d, u = w["c"], w["d"], w["u"]
        _expect(bool(c) and bool(d) and bool(u), "c, d, u must be nonzero")
        _expect(not f1.a and not f2.a, "presentation is not radical")
        _expect(-f1.b == d * d * u, "a1 != d^2 u")
        _expect(-f2.b == c * c * u, "a2 != c^2 u")
        _expect(ring.coprime(ring(c), ring(d)), "gcd(c, d) is not a unit")
        _expect(idx in (0, 1), "r must be 0 or 1")
    elif case == "completed-square":
        sx, sy, a1, a2 = w["shift_x"], w["shift_y"], w["a1"], w["a2"]
        c, d, u = w["c"], w["d"], w["u"]
        _expect(ring.two_is_unit, "2 is not a unit in R")
        _expect(2 * sx == f1.a and 2 * sy == f2.a, "shifts are not a/2, c/2")
        _expect(a1 == sx * sx - f1.b and a2 == sy * sy - f2.b, "completed-square constants wrong")
        _expect(bool(c) and bool(d) and bool(u), "c, d, u must be nonzero")
        _expect(a1 == d * d * u and a2 == c * c * u, "a1 != d^2 u or a2 != c^2 u")
        _expect(ring.coprime(ring(c), ring(d)), "gcd(c, d) is not a unit")
        _expect(idx in (0, 1), "r must be 0 or 1")
    elif case == "nonradical":
        e, hm, hp = w["e"], w["half_minus"], w["half_plus"]
        f, g = ctx.orientation_pair()
        _expect(bool(e), "e must be nonzero")
        _expect(g.a * g.a - 4 * g.b == e * e * (f.a * f.a - 4 * f.b), "c^2 - 4d != e^2 (a^2 - 4b)")
        _expect(2 * hm == g.a - f.a * e, "half_minus != (c - a e)/2")
        _expect(2 * hp == g.a + f.a * e, "half_plus != (c + a e)/2")
        _expect(idx in (1, 2), "j must be 1 or 2")
    elif case == "reducible":
        _expect("root_x" in w or "root_y" in w, "no root witness")
        _expect(set(w) <= {"root_x", "root_y"}, "unexpected witnesses")
        if "root_x" in w:
            _expect(not ctx.problem.f1(w["root_x"]), "root_x is not a root of f1")
        if "root_y" in w:
            _expect(not ctx.problem.f2(w["root_y"]), "root_y is not a root of f2")
    elif case == "free":
        _expect(not w, "free certificates carry no witnesses")
        for h in ctx.problem.j_generators:
            _expect(not ctx.pres.reduce(h), "J is not zero in T")


def _check_primes_match(ctx: _Context):
    cert = ctx.cert
    listed = {label: gens for label, gens in cert.minimal_primes}
    _expect(len(listed) == len(cert.minimal_primes), "duplicate prime labels")
    expected = ctx.expected_primes()
    if expected is not None:
        _expect(len(expected) == len(cert.minimal_primes), "wrong number of minimal primes")
        for (l1, g1), (l2, g2) in zip(expected, cert.minimal_primes):
            _expect(l1 == l2 and _gens_equal(g1, g2), f"prime {l2} does not match its witnesses")
    else:
        f1, f2 = ctx.problem.f1, ctx.problem.f2
        for label, gens in cert.minimal_primes:
            gm = dict(gens)
            _expect(set(gm) - {"l1", "l2"} == {"f1", "f2"}, f"prime {label} has unexpected generators")
            for name, q in (("l1", f1), ("l2", f2)):
                if name in gm:
                    lin = gm[name]
                    k = (1, 0) if name == "l1" else (0, 1)
                    _expect(set(lin.terms) <= {k, (0, 0)} and lin.coeff(*k) == 1, f"{name} is not monic linear")
                    _expect(not q(-lin.coeff(0, 0)), f"{name} is not a factor of {name.replace('l', 'f')}")
    if ctx.case == "free":
        _expect(ctx.prime.label == "(0)" and ctx.prime.index == 0, "free certificate must select the zero ideal, index 0")
        _expect(_gens_equal(ctx.prime.generators, (("f1", _fx(ctx.problem.f1)), ("f2", _fy(ctx.problem.f2)))), "zero ideal generators must be f1, f2")
    else:
        _expect(ctx.prime.label in listed, f"selected prime {ctx.prime.label} not listed")
        _expect(_gens_equal(listed[ctx.prime.label], ctx.prime.generators), "selected prime differs from listing")
        _expect(ctx.prime.label == f"P{ctx.prime.index}", "label/index mismatch")


def _check_elimination(ctx: _Context):
    exp = ctx.expected_elimination()
    elim = ctx.prime.elimination
    if exp is None:
        _expect(elim is None, "free certificate carries an elimination map")
        return
    _expect(elim is not None, "missing elimination map")
    _expect(elim.modulus.lc == 1 and elim.modulus.degree >= 1, "target modulus must be monic")
    _expect(elim.modulus == exp[0], "target modulus does not match witnesses")
    _expect(elim.x_image == exp[1], "image of x does not match witnesses")
    _expect(elim.y_image == exp[2], "image of y does not match witnesses")


def _check_generators_vanish(ctx: _Context):
    for name, g in ctx.prime.generators:
        if ctx.prime.elimination is None:
            _expect(not ctx.pres.reduce(g), f"{name} is not zero in T")
        else:
            _expect(ctx.phi(g).is_zero(), f"{name} does not vanish under the elimination map")


def _check_presentation_in_prime(ctx: _Context):
    gm = ctx.prime.generator_map()
    _expect(gm.get("f1") == _fx(ctx.problem.f1), "f1 is not a generator of the prime")
    _expect(gm.get("f2") == _fy(ctx.problem.f2), "f2 is not a generator of the prime")


def _division_order(prime) -> tuple:
    """Divisor names of the canonical division chain for ``prime``."""
    names = set(prime.generator_map())
    if prime.case in ("radical", "completed-square"):
        return ("f1", "f2", "f4", "f2", "f3")
    if prime.case == "nonradical":
        return (f"h{prime.index}", "f1" if prime.orientation == "xy" else "f2")
    if prime.case == "reducible":
        lines = tuple(n for n in ("l1", "l2") if n in names)
        if "l1" not in names:
            return lines + ("f1",)
        return lines if "l2" in names else lines + ("f2",)
    return ("f1", "f2")


def _check_transcripts(ctx: _Context):
    js = ctx.problem.j_generators
    _expect(len(ctx.cert.transcripts) == len(js), "one transcript per J-generator required")
    gm = ctx.prime.generator_map()
    order = _division_order(ctx.prime)
    for k, (h, (echo, steps)) in enumerate(zip(js, ctx.cert.transcripts)):
        _expect(echo == h, f"transcript {k} is for a different generator")
        _expect(tuple(name for name, _ in steps) == order, f"transcript {k} does not follow the division order {order}")
        acc = BiPoly()
        for name, q in steps:
            _expect(name in gm, f"transcript {k} uses unknown generator {name!r}")
            acc = acc + q * gm[name]
        _expect(acc == h, f"transcript {k} does not replay to its J-generator")


def _check_rho_annihilates_j(ctx: _Context):
    for k, h in enumerate(ctx.problem.j_generators):
        for m in ctx.basis_polys():
            _expect(not ctx.rho(ctx.pres.reduce(m * h)), f"rho does not kill basis multiple of J-generator {k}")


def _check_rho_unital(ctx: _Context):
    _expect(ctx.rho(ctx.pres.one()) == ctx.ring.one, "rho(1) != 1")


def _check_rho_projection(ctx: _Context):
    ring = ctx.ring
    if ctx.prime.elimination is None:
        _expect(all(a == b for a, b in zip(ctx.cert.retraction, (1, 0, 0, 0))), "free retraction must be the projection")
        return
    for name, m, value in zip(("1", "x", "y", "x*y"), ctx.basis_polys(), ctx.cert.retraction):
        _expect(ring(ctx.phi(m).base) == value, f"rho({name}) differs from pi_1 of its image")


def _check_rho_kills_prime(ctx: _Context):
    for name, g in ctx.prime.generators:
        for m in ctx.basis_polys():
            _expect(not ctx.rho(ctx.pres.reduce(m * g)), f"rho does not kill a basis multiple of {name}")


def _check_probes(ctx: _Context, seed: int, count: int):
    rng = random.Random(seed)
    ring, pres = ctx.ring, ctx.pres
    js = ctx.problem.j_generators
    for n in range(count):
        r = ring(random_element(ring, rng))
        t = pres.reduce(random_bipoly(ring, rng, 3, 10))
        t2 = pres.reduce(random_bipoly(ring, rng, 3, 10))
        _expect(ctx.rho(t.scale(r)) == r * ctx.rho(t), f"probe {n}: rho(r t) != r rho(t)")
        _expect(ctx.rho(t + t2) == ctx.rho(t) + ctx.rho(t2), f"probe {n}: rho not additive")
        if ctx.prime.elimination is not None:
            _expect(ring(ctx.phi(t.to_bipoly()).base) == ctx.rho(t), f"probe {n}: rho != pi_1 o phi")
        if js:
            j = pres.reduce(js[n % len(js)])
            _expect(not ctx.rho(t * j), f"probe {n}: rho(t j) != 0")


def _check_identity(ctx: _Context, name: str, expected: dict):
    claimed = dict(ctx.cert.identities)
    _expect(name in claimed, f"identity {name} missing from certificate")
    _expect(name in expected, f"identity {name} cannot be recomputed")
    _expect(claimed[name] == expected[name], f"claimed expansion of {name} differs from recomputation")
    _expect(expected[name].is_zero(), f"{name} does not expand to zero")


def _check_identity_names(ctx: _Context):
    names = tuple(n for n, _ in ctx.cert.identities)
    _expect(names == IDENTITY_NAMES.get(ctx.case, ()), f"unexpected identity list {names}")


def _check_pullback(ctx: _Context):
    w = ctx.w
    k = -_sign(ctx.prime.index) * w["c"] * w["d"] * w["u"]
    sx, sy = w["shift_x"], w["shift_y"]
    composed = (1, sx, sy, k + sx * sy)
    _expect(all(a == b for a, b in zip(ctx.cert.retraction, composed)), "rho is not the pulled-back radical retraction")


# ---------------------------------------------------------------------------


def verify_certificate(
    problem: ExtensionProblem, cert: SplitCertificate, seed: Optional[int] = None, probes: int = DEFAULT_PROBES
) -> VerificationReport:
    """Run every check on ``cert``; never raises on malformed input."""
    seed = cert.probe_seed if seed is None and isinstance(getattr(cert, "probe_seed", None), int) else (seed or 0)
    report = VerificationReport(seed=seed)
    try:
        ctx = _Context(problem, cert)
        case = ctx.case
    except Exception as exc:  # hostile input
        report.checks.append(Check("structure", 0, False, f"malformed certificate: {exc!r}"))
        return report

    plan: list[tuple[str, int, Callable]] = [
        ("schema", 0, _check_schema),
        ("problem-echo", 0, _check_problem_echo),
        ("witness-equations", 1, _check_witness_equations),
        ("primes-match-witnesses", 1, _check_primes_match),
        ("elimination-matches-witnesses", 1, _check_elimination),
        ("generators-vanish", 2, _check_generators_vanish),
        ("presentation-in-prime", 2, _check_presentation_in_prime),
        ("transcript-replay", 3, _check_transcripts),
        ("rho-annihilates-J", 3, _check_rho_annihilates_j),
        ("rho-unital", 4, _check_rho_unital),
        ("rho-is-projection", 5, _check_rho_projection),
        ("rho-kills-prime", 5, _check_rho_kills_prime),
        ("linearity-probes", 6, lambda c: _check_probes(c, seed, probes)),
        ("identity-list", 7, _check_identity_names),
    ]
    expected: dict = {}
    try:
        expected = ctx.expected_identities()
    except Exception:
        expected = {}
    for name in IDENTITY_NAMES.get(case, ()):
        plan.append((f"identity:{name}", 7, lambda c, n=name: _check_identity(c, n, expected)))
    if case == "completed-square":
        plan.append(("pullback-consistency", 7, _check_pullback))

    for name, stage, fn in plan:
        try:
            fn(ctx)
            report.checks.append(Check(name, stage, True))
        except _Fail as exc:
            report.checks.append(Check(name, stage, False, str(exc)))
        except Exception as exc:  # malformed data surfaces as a failed check
            report.checks.append(Check(name, stage, False, f"error: {exc!r}"))
    return report


def check_identities(problem: ExtensionProblem, cert: SplitCertificate) -> list[tuple[str, bool]]:
    """Recompute the case identities and report which expand to zero."""
    ctx = _Context(problem, cert)
    return [(name, poly.is_zero()) for name, poly in ctx.expected_identities().items()]


def cross_check_membership(ring, witness, samples: int, degree: int, seed: int) -> bool:
    """Seeded dual-route check: the division-chain test of ``h in P_r`` agrees with ``psi_r(h) = 0``.

    Half of the samples are random, half are built as combinations of the
    generators of P_r (so both answers occur).
    """
    from .quotient import membership_by_psi, membership_in_Pr

    rng = random.Random(seed)
    for n in range(samples):
        r = n % 2
        h = _sample(ring, rng, witness, r, degree, member=(n // 2) % 2 == 0)
        if membership_in_Pr(h, r, witness, ring) != membership_by_psi(h, r, witness):
            return False
    return True


def _sample(ring, rng: random.Random, w, r: int, degree: int, member: bool) -> BiPoly:
    if not member:
        return random_bipoly(ring, rng, degree, 30)
    gens = [g for _, g in _radical_gens(w.c, w.d, w.u, r)]
    h = BiPoly()
    for g in gens:
        q = random_bipoly(ring, rng, max(degree - g.total_degree, 0), 5)
        h = h + q * g
    return h
