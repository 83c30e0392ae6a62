"""JSON form of splitting certificates.

Every number is a decimal string and every polynomial uses the canonical text
form, so ``dumps(loads(s)) == s`` byte for byte for anything ``dumps`` wrote.
"""

from __future__ import annotations

import json

from .certificate import ExtensionProblem, MinimalPrimeCert, SplitCertificate
from .errors import MalformedCertificate, SplitForgeError
from .problemfile import quadratic_from_bipoly
from .quotient import EliminationMap
from .rings import ring_from_name
from .textfmt import format_bipoly, format_element, format_unipoly, parse_bipoly, parse_element, parse_unipoly

RETRACTION_KEYS = ("1", "x", "y", "x*y")


def _gens_json(ring, gens) -> list:
    return [{"name": name, "poly": format_bipoly(ring, g)} for name, g in gens]


def certificate_to_json(cert: SplitCertificate) -> dict:
    problem = cert.problem
    ring = problem.ring
    sel = cert.selected
    elim = None
    if sel.elimination is not None:
        elim = {
            "modulus": format_unipoly(ring, sel.elimination.modulus),
            "x": format_unipoly(ring, sel.elimination.x_image),
            "y": format_unipoly(ring, sel.elimination.y_image),
        }
    return {
        "schema_version": str(cert.schema_version),
        "problem": {
            "ring": ring.name,
            "f1": format_bipoly(ring, problem.f1.as_bipoly()),
            "f2": format_bipoly(ring, problem.f2.as_bipoly()),
            "J": [format_bipoly(ring, h) for h in problem.j_generators],
        },
        "case": cert.case,
        "canonical": cert.canonical,
        "witnesses": {name: format_element(ring, v) for name, v in cert.witnesses},
        "orientation": cert.orientation,
        "minimal_primes": [{"label": label, "generators": _gens_json(ring, gens)} for label, gens in cert.minimal_primes],
        "selected_prime": {
            "label": sel.label,
            "kind": sel.case,
            "index": str(sel.index),
            "generators": _gens_json(ring, sel.generators),
            "elimination": elim,
        },
        "retraction": {k: format_element(ring, v) for k, v in zip(RETRACTION_KEYS, cert.retraction)},
        "transcripts": [
            {
                "generator": format_bipoly(ring, h),
                "steps": [{"divisor": name, "quotient": format_bipoly(ring, q)} for name, q in steps],
            }
            for h, steps in cert.transcripts
        ],
        "identities": [{"name": name, "expansion": format_bipoly(ring, poly)} for name, poly in cert.identities],
        "probe_seed": str(cert.probe_seed),
    }


def dumps(cert: SplitCertificate) -> str:
    return json.dumps(certificate_to_json(cert), indent=2, ensure_ascii=True) + "\n"


def _int(text, what: str) -> int:
    if not isinstance(text, str) or not text.lstrip("-").isdigit():
        raise MalformedCertificate(f"{what} must be a decimal string, got {text!r}")
    return int(text)


def _str(value, what: str) -> str:
    if not isinstance(value, str):
        raise MalformedCertificate(f"{what} must be a string")
    return value


def _gens(ring, items, what: str) -> tuple:
    if not isinstance(items, list):
        raise MalformedCertificate(f"{what} must be a list")
    return tuple((_str(g["name"], f"{what} name"), parse_bipoly(ring, _str(g["poly"], what))) for g in items)


def certificate_from_json(data: dict) -> SplitCertificate:
    try:
        return _from_json(data)
    except MalformedCertificate:
        raise
    except (SplitForgeError, KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        raise MalformedCertificate(f"{type(exc).__name__}: {exc}") from None


def _from_json(data: dict) -> SplitCertificate:
    if not isinstance(data, dict):
        raise MalformedCertificate("certificate must be a JSON object")
    p = data["problem"]
    ring = ring_from_name(_str(p["ring"], "ring"))
    problem = ExtensionProblem(
        ring,
        quadratic_from_bipoly(parse_bipoly(ring, _str(p["f1"], "f1")), "x", "f1"),
        quadratic_from_bipoly(parse_bipoly(ring, _str(p["f2"], "f2")), "y", "f2"),
        tuple(parse_bipoly(ring, _str(h, "J")) for h in p["J"]),
    )
    witnesses = tuple((_str(k, "witness"), parse_element(ring, _str(v, k))) for k, v in data["witnesses"].items())
    orientation = _str(data["orientation"], "orientation")
    sp = data["selected_prime"]
    el = sp["elimination"]
    elim = None
    if el is not None:
        elim = EliminationMap(
            parse_unipoly(ring, _str(el["modulus"], "modulus")),
            parse_unipoly(ring, _str(el["x"], "x image")),
            parse_unipoly(ring, _str(el["y"], "y image")),
        )
    selected = MinimalPrimeCert(
        case=_str(sp["kind"], "kind"),
        label=_str(sp["label"], "label"),
        index=_int(sp["index"], "index"),
        generators=_gens(ring, sp["generators"], "selected_prime generators"),
        witnesses=witnesses,
        elimination=elim,
        orientation=orientation,
    )
    rho = data["retraction"]
    if list(rho) != list(RETRACTION_KEYS):
        raise MalformedCertificate(f"retraction keys must be {RETRACTION_KEYS}")
    canonical = data["canonical"]
    if not isinstance(canonical, bool):
        raise MalformedCertificate("canonical must be true or false")
    return SplitCertificate(
        problem=problem,
        case=_str(data["case"], "case"),
        witnesses=witnesses,
        orientation=orientation,
        minimal_primes=tuple(
            (_str(mp["label"], "label"), _gens(ring, mp["generators"], "minimal_primes generators"))
            for mp in data["minimal_primes"]
        ),
        selected=selected,
        retraction=tuple(parse_element(ring, _str(rho[k], k)) for k in RETRACTION_KEYS),
        transcripts=tuple(
            (
                parse_bipoly(ring, _str(t["generator"], "generator")),
                tuple((_str(s["divisor"], "divisor"), parse_bipoly(ring, _str(s["quotient"], "quotient"))) for s in t["steps"]),
            )
            for t in data["transcripts"]
        ),
        identities=tuple(
            (_str(i["name"], "identity name"), parse_bipoly(ring, _str(i["expansion"], "expansion")))
            for i in data["identities"]
        ),
        probe_seed=_int(data["probe_seed"], "probe_seed"),
        canonical=canonical,
        schema_version=_int(data["schema_version"], "schema_version"),
    )


def loads(text: str) -> SplitCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not valid JSON: {exc}") from None
    return certificate_from_json(data)
