"""Acceptance suite: one PASS/FAIL line per criterion.

Run with pytest, or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import io
import json
import math
import random
import re
import sys
import tempfile
import time
from pathlib import Path

import sympy

sys.path.insert(0, str(Path(__file__).parent))

from conftest import FIXTURES, sym  # noqa: E402
from generators import (  # noqa: E402
    completed_square_instance,
    domain_instance,
    nonradical_instance,
    radical_instance,
)

from splitforge import serialize  # noqa: E402
from splitforge.cli import run  # noqa: E402
from splitforge.corpus import WORKED_EXAMPLES  # noqa: E402
from splitforge.certificate import ExtensionProblem  # noqa: E402
from splitforge.problemfile import format_problem, parse_problem  # noqa: E402
from splitforge.quotient import t_mul  # noqa: E402
from splitforge.rings import ZZ, PrimePolyRing, RationalPolyRing  # noqa: E402
from splitforge.splitting import build_retraction, domain_test, zero_divisors  # noqa: E402
from splitforge.textfmt import format_bipoly, format_element  # noqa: E402
from splitforge.verify import check_identities, cross_check_membership, verify_certificate  # noqa: E402

RADICAL_COUNT = 1000
MEMBERSHIP_SAMPLES = 500
NONRADICAL_COUNT = 500
COMPLETED_PER_RING = 100
DOMAIN_COUNT = 200
SYMPY_SUBSAMPLE = 50


@functools.cache
def radical_suite():
    rng = random.Random(20240601)
    return [radical_instance(rng) for _ in range(RADICAL_COUNT)]


@functools.cache
def nonradical_suite():
    rng = random.Random(20240602)
    return [nonradical_instance(rng) for _ in range(NONRADICAL_COUNT)]


@functools.cache
def radical_certificates():
    return [build_retraction(inst.problem) for inst in radical_suite()]


@functools.cache
def nonradical_certificates():
    return [build_retraction(inst.problem) for inst in nonradical_suite()]


def _bad(label, items):
    return f"{len(items)} {label}, first: {items[0]!r}" if items else ""


# ---------------------------------------------------------------------------


def criterion_1():
    insts = radical_suite()
    start = time.perf_counter()
    certs = [build_retraction(inst.problem) for inst in insts]
    reports = [verify_certificate(inst.problem, cert) for inst, cert in zip(insts, certs)]
    elapsed = time.perf_counter() - start
    failed = [i for i, rep in enumerate(reports) if not rep.passed]
    wrong = [i for i, (inst, cert) in enumerate(zip(insts, certs)) if cert.retraction != inst.expected_rho]
    ok = not failed and not wrong and elapsed < 10
    detail = f"{len(insts)} instances, build+verify {elapsed:.2f}s"
    return ok, "; ".join(filter(None, [detail, _bad("verify failures", failed), _bad("wrong rho", wrong)]))


def criterion_2():
    disagree = [
        i
        for i, inst in enumerate(radical_suite())
        if not cross_check_membership(ZZ, inst.witness, MEMBERSHIP_SAMPLES, 4, seed=i)
    ]
    detail = f"{len(radical_suite())} witness sets x {MEMBERSHIP_SAMPLES} samples"
    return not disagree, "; ".join(filter(None, [detail, _bad("disagreements", disagree)]))


def _sympy_radical_identity(inst) -> bool:
    x, y = sympy.symbols("x y")
    c, d, u = inst.witness.c, inst.witness.d, inst.witness.u
    f1, f2 = x**2 - d * d * u, y**2 - c * c * u
    return sympy.expand(c * c * f1 - d * d * f2 + (d * y - c * x) * (c * x + d * y)) == 0


def _sympy_nonradical_identities(inst) -> bool:
    x, y = sympy.symbols("x y")
    p = inst.problem
    f = x**2 - p.f1.a * x + p.f1.b
    g = y**2 - p.f2.a * y + p.f2.b
    e, (hm, hp) = inst.e, inst.halves
    prod = (y - e * x - hm) * (y + e * x - hp)
    exact = sympy.expand(prod - (g - e * e * f)) == 0
    mod_i = sympy.reduced(sympy.expand(prod - (e * e * f + g)), [f, g], x, y)[1] == 0
    return exact and mod_i


def criterion_3():
    failures = []
    for label, insts, certs in (
        ("radical", radical_suite(), radical_certificates()),
        ("nonradical", nonradical_suite(), nonradical_certificates()),
    ):
        for i, (inst, cert) in enumerate(zip(insts, certs)):
            results = check_identities(inst.problem, cert)
            if not results or not all(ok for _, ok in results):
                failures.append((label, i, results))
            if any(format_bipoly(ZZ, h) != "0" for _, h in cert.identities):
                failures.append((label, i, "stored expansion is not 0"))
    for inst in radical_suite()[:SYMPY_SUBSAMPLE]:
        if not _sympy_radical_identity(inst):
            failures.append(("sympy radical", inst.witness))
    for inst in nonradical_suite()[:SYMPY_SUBSAMPLE]:
        if not _sympy_nonradical_identities(inst):
            failures.append(("sympy nonradical", inst.problem))
    detail = f"{RADICAL_COUNT + NONRADICAL_COUNT} instances, sympy re-expansion on {2 * SYMPY_SUBSAMPLE}"
    return not failures, "; ".join(filter(None, [detail, _bad("failures", failures)]))


def criterion_4():
    insts, certs = nonradical_suite(), nonradical_certificates()
    failed = [i for i, (inst, cert) in enumerate(zip(insts, certs)) if not verify_certificate(inst.problem, cert).passed]
    wrong = [i for i, (inst, cert) in enumerate(zip(insts, certs)) if tuple(cert.retraction) != inst.expected_rho]
    # witnesses are normalised to e > 0, which swaps h1 and h2 when the recipe drew e < 0
    cases = [
        i
        for i, (inst, cert) in enumerate(zip(insts, certs))
        if cert.case != f"Nonradical(j={inst.j if inst.e > 0 else 3 - inst.j})"
    ]
    detail = f"{len(insts)} instances"
    ok = not failed and not wrong and not cases
    return ok, "; ".join(filter(None, [detail, _bad("verify failures", failed), _bad("wrong rho", wrong), _bad("wrong case", cases)]))


def _composed(rho_plain, sx, sy):
    one, rx, ry, rxy = rho_plain
    return (one, rx + sx, ry + sy, rxy + sx * ry + sy * rx + sx * sy)


def criterion_5():
    failures = []
    for ring in (RationalPolyRing(), PrimePolyRing(5)):
        rng = random.Random(20240605 + (ring.p or 0))
        for n in range(COMPLETED_PER_RING):
            inst = completed_square_instance(ring, rng)
            cert = build_retraction(inst.problem)
            plain = build_retraction(inst.radical_problem)
            sx, sy = inst.shifts
            # r is relative to the normalised witness signs, so only agreement is required
            if cert.case.replace("CompletedSquare", "Radical") != plain.case or not plain.case.startswith("Radical"):
                failures.append((ring.kind, n, cert.case, plain.case))
            elif not verify_certificate(inst.problem, cert).passed:
                failures.append((ring.kind, n, "verify"))
            elif tuple(cert.retraction) != _composed(plain.retraction, sx, sy):
                failures.append((ring.kind, n, "rho differs from the shifted radical rho"))
    detail = f"{2 * COMPLETED_PER_RING} instances over Q[t] and F5[t]"
    return not failures, "; ".join(filter(None, [detail, _bad("failures", failures)]))


# worked example name -> frozen sympy-derived retraction key
_ORACLE_KEYS = {
    "radical over Z": "retraction_radical",
    "nonradical, J = (y - x)": "retraction_golden_y_minus_x",
    "nonradical, J = (y + x - 1)": "retraction_golden_y_plus_x_minus_1",
    "completed square over Q[t]": "retraction_dany2_r0",
}


def _oracle_values() -> dict:
    return json.loads((Path(__file__).parent / "oracle" / "values.json").read_text())


def criterion_6():
    oracle, failures, checked = _oracle_values(), [], 0
    for ex in WORKED_EXAMPLES:
        problem = parse_problem(ex.text)
        cert = build_retraction(problem)
        rho = tuple(format_element(problem.ring, v) for v in cert.retraction)
        if cert.case != ex.expected_case or rho != ex.expected_retraction:
            failures.append((ex.name, cert.case, rho))
        elif not verify_certificate(problem, cert).passed:
            failures.append((ex.name, "verify"))
        if ex.name in _ORACLE_KEYS:
            frozen = oracle[_ORACLE_KEYS[ex.name]]
            frozen = frozen["rho"] if isinstance(frozen, dict) else frozen
            checked += 1
            if any(sympy.expand(sym(a) - sym(b)) != 0 for a, b in zip(rho, frozen)):
                failures.append((ex.name, "differs from the sympy oracle", frozen))
    detail = f"{len(WORKED_EXAMPLES)} examples, {checked} against frozen sympy values"
    return not failures, "; ".join(filter(None, [detail, _bad("mismatches", failures)]))


# names, labels and tags: bump the last number, or append one
_TEXT_KEYS = {"schema_version", "ring", "case", "orientation", "label", "name", "kind", "index", "divisor"}
# left alone: metadata that does not change the mathematical claim
_METADATA_KEYS = {"canonical", "probe_seed"}


def _bump(key, value):
    if re.fullmatch(r"-?\d+", value):
        return str(int(value) + 1)
    if key in _TEXT_KEYS:
        m = re.search(r"\d+(?!.*\d)", value)
        return value[: m.start()] + str(int(m.group()) + 1) + value[m.end() :] if m else value + "1"
    return f"({value}) + 1"


def _leaves(node, path=()):
    if isinstance(node, dict):
        for k, v in node.items():
            yield from _leaves(v, path + (k,))
    elif isinstance(node, list):
        for i, v in enumerate(node):
            yield from _leaves(v, path + (i,))
    else:
        yield path, node


def _key_of(path):
    return next((p for p in reversed(path) if isinstance(p, str)), "")


def _set(node, path, value):
    for p in path[:-1]:
        node = node[p]
    node[path[-1]] = value


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return run([str(a) for a in argv], out, err)


def mutations(data):
    """Every single-field +1 mutation of a certificate JSON document."""
    for path, value in _leaves(data):
        key = _key_of(path)
        if key in _METADATA_KEYS or not isinstance(value, str):
            continue
        mutated = json.loads(json.dumps(data))
        _set(mutated, path, _bump(key, value))
        yield path, mutated


def criterion_7():
    false_passes, total = [], 0
    with tempfile.TemporaryDirectory() as tmp:
        cert_path = Path(tmp) / "cert.json"
        for name, extra in (("radical", []), ("dany2", ["--all-primes"])):
            prob = FIXTURES / f"{name}.prob"
            if _cli("split", prob, "-o", cert_path, *extra) != 0 or _cli("verify", prob, cert_path) != 0:
                return False, f"{name}: unmutated certificate does not verify"
            data = json.loads(cert_path.read_text())
            mutated_path = Path(tmp) / "mutated.json"
            for path, mutated in mutations(data):
                total += 1
                mutated_path.write_text(json.dumps(mutated, indent=2))
                if _cli("verify", prob, mutated_path) != 3:
                    false_passes.append((name, path))
    detail = f"{total} mutations over the two running examples"
    return not false_passes and total > 0, "; ".join(filter(None, [detail, _bad("false passes", false_passes)]))


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _oracle_domain(inst) -> str:
    """Verdict from discriminants alone: T is a domain iff f1 is irreducible and
    disc(f2) is not a square in Q(sqrt(disc f1)), i.e. neither disc(f2) nor
    disc(f2)*disc(f1) is a rational square."""
    df = inst.f1.a * inst.f1.a - 4 * inst.f1.b
    dg = inst.f2.a * inst.f2.a - 4 * inst.f2.b
    if _is_square(df):
        return "ReducibleF1"
    if _is_square(dg) or _is_square(dg * df):
        return "NonDomain"
    return "Domain"


def criterion_8():
    rng = random.Random(20240608)
    failures, tally = [], {}
    for n in range(DOMAIN_COUNT):
        inst = domain_instance(rng)
        verdict = domain_test(inst.ring, inst.f1, inst.f2)
        tally[verdict.kind] = tally.get(verdict.kind, 0) + 1
        if verdict.kind != _oracle_domain(inst):
            failures.append((n, verdict.kind, _oracle_domain(inst)))
            continue
        if verdict.kind == "Domain":
            continue
        problem = ExtensionProblem(inst.ring, inst.f1, inst.f2, ())
        s, t = zero_divisors(problem, verdict)
        if not any(s.coords) or not any(t.coords) or any(t_mul(s, t).coords):
            failures.append((n, "zero-divisor pair", s.coords, t.coords))
    detail = f"{DOMAIN_COUNT} instances " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items()))
    return not failures, "; ".join(filter(None, [detail, _bad("failures", failures)]))


ERROR_EXITS = {
    1: [["frobnicate"], ["split", FIXTURES / "radical.prob"], []],
    2: [["analyze", p] for p in sorted((FIXTURES / "errors").glob("*.prob")) if p.name != "timeout.prob"],
    3: [["verify", FIXTURES / "radical.prob", FIXTURES / "errors" / n] for n in ("malformed.json", "garbage.json")],
    4: [["analyze", FIXTURES / "errors" / "timeout.prob", "--factor-budget", "2000"]],
}


def criterion_9():
    failures, runs = [], 0
    with tempfile.TemporaryDirectory() as tmp:
        for prob in sorted(FIXTURES.glob("*.prob")):
            text = prob.read_text()
            printed = format_problem(parse_problem(text))
            if format_problem(parse_problem(printed)) != printed:
                failures.append((prob.name, "problem text not stable"))
            cert_path = Path(tmp) / f"{prob.stem}.json"
            runs += 2
            if _cli("split", prob, "-o", cert_path) != 0 or _cli("verify", prob, cert_path) != 0:
                failures.append((prob.name, "split/verify"))
                continue
            raw = cert_path.read_text()
            if serialize.dumps(serialize.loads(raw)) != raw:
                failures.append((prob.name, "certificate JSON not byte-identical"))
        for code, argvs in ERROR_EXITS.items():
            for argv in argvs:
                runs += 1
                got = _cli(*argv)
                if got != code:
                    failures.append((argv, f"exit {got}, wanted {code}"))
    detail = f"{runs} CLI runs, exits 0-4 exercised"
    return not failures, "; ".join(filter(None, [detail, _bad("failures", failures)]))


CRITERIA = {
    1: ("radical suite", criterion_1),
    2: ("membership oracle equivalence", criterion_2),
    3: ("symbolic identities", criterion_3),
    4: ("nonradical suite", criterion_4),
    5: ("completing-the-square suite", criterion_5),
    6: ("worked examples", criterion_6),
    7: ("mutation robustness", criterion_7),
    8: ("domain-test soundness", criterion_8),
    9: ("CLI round trip and exit codes", criterion_9),
}


def evaluate(number: int) -> tuple[bool, str]:
    title, fn = CRITERIA[number]
    ok, detail = fn()
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"


def _check(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_1_radical_suite(capsys):
    _check(1, capsys)


def test_criterion_2_membership_routes_agree(capsys):
    _check(2, capsys)


def test_criterion_3_identities_expand_to_zero(capsys):
    _check(3, capsys)


def test_criterion_4_nonradical_suite(capsys):
    _check(4, capsys)


def test_criterion_5_completed_square_suite(capsys):
    _check(5, capsys)


def test_criterion_6_worked_examples(capsys):
    _check(6, capsys)


def test_criterion_7_mutations_exit_3(capsys):
    _check(7, capsys)


def test_criterion_8_domain_test_soundness(capsys):
    _check(8, capsys)


def test_criterion_9_cli_round_trip(capsys):
    _check(9, capsys)


if __name__ == "__main__":
    results = [evaluate(n) for n in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
