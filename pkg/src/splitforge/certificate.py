"""Plain data carried between the splitting engine, the verifier and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .polyalg import BiPoly, MonicQuadratic
from .quotient import EliminationMap, Presentation

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ExtensionProblem:
    """S = T/J with T = R[x, y]/(f1, f2); an empty J means J = (0)."""

    ring: Any
    f1: MonicQuadratic
    f2: MonicQuadratic
    j_generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "f1", self.f1.with_var("x"))
        object.__setattr__(self, "f2", self.f2.with_var("y"))
        object.__setattr__(self, "j_generators", tuple(self.j_generators))

    def presentation(self) -> Presentation:
        return Presentation(self.ring, self.f1, self.f2)

    def __eq__(self, other):
        if not isinstance(other, ExtensionProblem):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.f1.a == other.f1.a
            and self.f1.b == other.f1.b
            and self.f2.a == other.f2.a
            and self.f2.b == other.f2.b
            and len(self.j_generators) == len(other.j_generators)
            and all(g == h for g, h in zip(self.j_generators, other.j_generators))
        )

    __hash__ = None


@dataclass(frozen=True)
class MinimalPrimeCert:
    """One minimal prime of T (or the zero ideal, for the free case).

    ``generators`` are ideal generators in R[x, y] (always starting with f1, f2);
    ``elimination`` maps T onto ``R[z]/(modulus)`` with kernel this prime, and
    is ``None`` for the zero ideal.
    """

    case: str  # "radical" | "completed-square" | "nonradical" | "reducible" | "free"
    label: str
    index: int
    generators: tuple  # ((name, BiPoly), ...)
    witnesses: tuple  # ((name, ring element), ...)
    elimination: Optional[EliminationMap]
    orientation: str = "xy"

    def generator_map(self) -> dict:
        return dict(self.generators)

    def witness(self, name: str):
        return dict(self.witnesses)[name]


@dataclass(frozen=True)
class SplitCertificate:
    problem: ExtensionProblem
    case: str
    witnesses: tuple  # ((name, ring element), ...)
    orientation: str
    minimal_primes: tuple  # ((label, ((name, BiPoly), ...)), ...)
    selected: MinimalPrimeCert
    retraction: tuple  # rho(1), rho(xbar), rho(ybar), rho(xbar*ybar)
    transcripts: tuple  # ((J generator, ((name, quotient), ...)), ...)
    identities: tuple  # ((name, BiPoly expansion), ...)
    probe_seed: int = 0
    canonical: bool = True
    schema_version: int = field(default=SCHEMA_VERSION)


def case_tag(prime: MinimalPrimeCert) -> str:
    if prime.case == "free":
        return "WholeRingFree"
    if prime.case == "radical":
        return f"Radical(r={prime.index})"
    if prime.case == "completed-square":
        return f"CompletedSquare(r={prime.index})"
    if prime.case == "nonradical":
        return f"Nonradical(j={prime.index})"
    return f"Reducible(k={prime.index})"
