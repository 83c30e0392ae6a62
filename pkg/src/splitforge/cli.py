"""Command-line entry points.

Exit codes: 0 success, 1 usage, 2 input outside the supported hypotheses (or
unparsable), 3 verification failure or malformed certificate, 4 factorization
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import serialize
from .certificate import SplitCertificate
from .corpus import WORKED_EXAMPLES
from .errors import FactorizationTimeout, MalformedCertificate, SplitForgeError
from .problemfile import format_problem, parse_problem
from .serialize import RETRACTION_KEYS
from .splitting import build_certificates, domain_test
from .textfmt import format_bipoly, format_element
from .verify import verify_certificate

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY, EXIT_TIMEOUT = 0, 1, 2, 3, 4

__all__ = ["main", "run", "parse_problem", "format_problem"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="verification probe seed")
    common.add_argument("--factor-budget", type=int, default=None, metavar="N", help="integer factorization effort")
    common.add_argument("--all-primes", action="store_true", help="a certificate for every minimal prime containing J")

    parser = _Parser(prog="splitforge", description="Split quadratic extensions with checkable certificates.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("analyze", parents=[common], help="print the case verdict and certificates")
    p.add_argument("problem")
    p = sub.add_parser("split", parents=[common], help="write a certificate as JSON")
    p.add_argument("problem")
    p.add_argument("-o", "--output", required=True)
    p = sub.add_parser("verify", parents=[common], help="check a certificate against a problem")
    p.add_argument("problem")
    p.add_argument("certificate")
    sub.add_parser("demo", parents=[common], help="run the built-in worked examples")
    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


class _InputError(Exception):
    pass


def _retraction_text(cert: SplitCertificate) -> str:
    ring = cert.problem.ring
    return ", ".join(f"rho({k}) = {format_element(ring, v)}" for k, v in zip(RETRACTION_KEYS, cert.retraction))


def _analyze(args, out) -> int:
    problem = parse_problem(_read(args.problem))
    verdict = domain_test(problem.ring, problem.f1, problem.f2)
    certs = build_certificates(problem, args.all_primes, args.factor_budget, args.seed)
    reports = [verify_certificate(problem, c, args.seed) for c in certs]
    if args.json:
        payload = {
            "domain_test": verdict.kind,
            "certificates": [serialize.certificate_to_json(c) for c in certs],
            "verification": [r.overall for r in reports],
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        ring = problem.ring
        out.write(format_problem(problem))
        out.write(f"domain test: {verdict.kind}\n")
        primes = certs[-1].minimal_primes or certs[0].minimal_primes
        if primes:
            out.write("minimal primes:\n")
            for label, gens in primes:
                out.write(f"  {label}: " + ", ".join(f"{n} = {format_bipoly(ring, g)}" for n, g in gens) + "\n")
        for cert, rep in zip(certs, reports):
            tag = "" if cert.canonical else " (additional)"
            out.write(f"case: {cert.case}{tag}\n")
            out.write(f"  {_retraction_text(cert)}\n")
            out.write(f"  verification: {rep.overall}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def _split(args, out) -> int:
    problem = parse_problem(_read(args.problem))
    certs = build_certificates(problem, args.all_primes, args.factor_budget, args.seed)
    if args.all_primes:
        text = json.dumps([serialize.certificate_to_json(c) for c in certs], indent=2) + "\n"
    else:
        text = serialize.dumps(certs[0])
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    if not args.json:
        for cert in certs:
            out.write(f"{cert.case}: {_retraction_text(cert)}\n")
        out.write(f"wrote {len(certs)} certificate(s) to {args.output}\n")
    return EXIT_OK


def _load_certificates(text: str) -> list[SplitCertificate]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not valid JSON: {exc}") from None
    items = data if isinstance(data, list) else [data]
    if not items:
        raise MalformedCertificate("empty certificate list")
    return [serialize.certificate_from_json(item) for item in items]


def _verify(args, out) -> int:
    problem = parse_problem(_read(args.problem))
    certs = _load_certificates(_read(args.certificate))
    reports = [verify_certificate(problem, c, args.seed) for c in certs]
    if args.json:
        payload = [
            {
                "case": c.case,
                "overall": r.overall,
                "seed": str(r.seed),
                "checks": [{"name": ch.name, "status": "pass" if ch.passed else "fail", "detail": ch.detail} for ch in r.checks],
            }
            for c, r in zip(certs, reports)
        ]
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for c, r in zip(certs, reports):
            out.write(f"{c.case}\n{r.format()}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def _demo(args, out) -> int:
    rows = []
    ok = True
    for ex in WORKED_EXAMPLES:
        problem = parse_problem(ex.text)
        cert = build_certificates(problem, False, args.factor_budget, args.seed)[0]
        rho = tuple(format_element(problem.ring, v) for v in cert.retraction)
        verdict = verify_certificate(problem, cert, args.seed).overall
        match = cert.case == ex.expected_case and rho == ex.expected_retraction
        ok = ok and match and verdict == "pass"
        rows.append((ex.name, problem.ring.name, cert.case, rho, match, verdict))
    if args.json:
        out.write(
            json.dumps(
                [
                    {"example": n, "ring": r, "case": c, "retraction": list(rho), "matches_expected": m, "verification": v}
                    for n, r, c, rho, m, v in rows
                ],
                indent=2,
            )
            + "\n"
        )
    else:
        table = [("example", "ring", "case", "rho(1), rho(x), rho(y), rho(x*y)", "expected", "verify")]
        table += [(n, r, c, ", ".join(rho), "yes" if m else "NO", v) for n, r, c, rho, m, v in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
        for row in table:
            out.write("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


_COMMANDS = {"analyze": _analyze, "split": _split, "verify": _verify, "demo": _demo}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n{parser.format_usage()}")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    if args.command is None:
        err.write(parser.format_usage())
        return EXIT_USAGE
    if args.factor_budget is not None and args.factor_budget <= 0:
        err.write("splitforge: --factor-budget must be positive\n")
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, out)
    except FactorizationTimeout as exc:
        err.write(f"factorization budget exhausted: {exc}\n")
        return EXIT_TIMEOUT
    except MalformedCertificate as exc:
        err.write(f"malformed certificate: {exc}\n")
        return EXIT_VERIFY
    except _InputError as exc:
        err.write(f"{exc}\n")
        return EXIT_INPUT
    except SplitForgeError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
