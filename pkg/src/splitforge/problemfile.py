"""Line-oriented problem files.

::

    ring: Q[t]
    f1: x^2 - 2*t*x + (t^2 - t)
    f2: y^2 - 2*y + (1 - 4*t)
    J: y - x, x*y - t

Blank lines and lines starting with ``#`` are ignored.  The ``J`` line is
optional; without it J = (0).
"""

from __future__ import annotations

from .certificate import ExtensionProblem
from .errors import NonMonic, ParseError, WrongDegree, WrongVariable
from .polyalg import BiPoly, MonicQuadratic
from .rings import ring_from_name
from .textfmt import format_bipoly, parse_bipoly, parse_terms

_ORDER = ("ring", "f1", "f2", "J")


def quadratic_from_bipoly(h: BiPoly, var: str, label: str = "") -> MonicQuadratic:
    """Read ``var^2 - a*var + b`` off a BiPoly, checking variable, degree and monicity."""
    label = label or var
    axis = 0 if var == "x" else 1
    for key in h.terms:
        if key[1 - axis]:
            other = "y" if var == "x" else "x"
            raise WrongVariable(f"{label} must be a polynomial in {var} only, found {other}")
    deg = max((key[axis] for key in h.terms), default=-1)
    if deg != 2:
        raise WrongDegree(f"{label} must have degree 2 in {var}, found degree {deg}")

    def coeff(k):
        return h.coeff(k, 0) if axis == 0 else h.coeff(0, k)

    if coeff(2) != 1:
        raise NonMonic(f"{label} must be monic, leading coefficient is {coeff(2)}")
    return MonicQuadratic(-coeff(1), coeff(0), var)


def _declarations(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if ":" not in raw:
            col = len(raw) - len(raw.lstrip()) + 1
            raise ParseError("missing ':' in declaration", lineno, col, "name ':' value")
        key, _, rest = raw.partition(":")
        yield lineno, key.strip(), rest, len(key) + 1, len(raw) - len(raw.lstrip()) + 1


def parse_problem(text: str) -> ExtensionProblem:
    decls = list(_declarations(text))
    expected = list(_ORDER)
    found: dict = {}
    for lineno, key, rest, offset, keycol in decls:
        if not expected:
            raise ParseError(f"unexpected declaration {key!r} after J", lineno, keycol, "end of file")
        want = expected[0]
        if key != want:
            allowed = "'J:' or end of file" if want == "J" else f"'{want}:'"
            raise ParseError(f"unexpected declaration {key!r}", lineno, keycol, allowed)
        expected.pop(0)
        found[key] = (lineno, rest, offset)
    if "f2" not in found:
        missing = expected[0]
        last = decls[-1][0] if decls else 1
        raise ParseError(f"missing {missing!r} declaration", last, 1, f"'{missing}:'")

    lineno, rest, _ = found["ring"]
    ring = ring_from_name(rest)
    quads = []
    for name, var in (("f1", "x"), ("f2", "y")):
        lineno, rest, offset = found[name]
        quads.append(quadratic_from_bipoly(parse_bipoly(ring, rest, lineno, offset), var, name))
    gens = []
    if "J" in found:
        lineno, rest, offset = found["J"]
        col = offset
        for piece in rest.split(","):
            terms = parse_terms(ring, piece, ("x", "y"), lineno, col)
            gens.append(BiPoly({(i, j): ring(c) for (i, j, _), c in terms.items()}))
            col += len(piece) + 1
    return ExtensionProblem(ring, quads[0], quads[1], tuple(gens))


def format_problem(problem: ExtensionProblem) -> str:
    ring = problem.ring
    lines = [
        f"ring: {ring.name}",
        f"f1: {format_bipoly(ring, problem.f1.as_bipoly())}",
        f"f2: {format_bipoly(ring, problem.f2.as_bipoly())}",
    ]
    if problem.j_generators:
        lines.append("J: " + ", ".join(format_bipoly(ring, h) for h in problem.j_generators))
    return "\n".join(lines) + "\n"
