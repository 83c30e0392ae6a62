"""Built-in worked examples run by ``splitforge demo``."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class WorkedExample:
    name: str
    text: str
    expected_case: str
    expected_retraction: tuple[str, str, str, str]


WORKED_EXAMPLES = (
    WorkedExample(
        "radical over Z",
        "ring: Z\nf1: x^2 - 18\nf2: y^2 - 8\nJ: 3*y - 2*x\n",
        "Radical(r=1)",
        ("1", "0", "0", "12"),
    ),
    WorkedExample(
        "nonradical, J = (y - x)",
        "ring: Z\nf1: x^2 - x - 1\nf2: y^2 - y - 1\nJ: y - x\n",
        "Nonradical(j=1)",
        ("1", "0", "0", "1"),
    ),
    WorkedExample(
        "nonradical, J = (y + x - 1)",
        "ring: Z\nf1: x^2 - x - 1\nf2: y^2 - y - 1\nJ: y + x - 1\n",
        "Nonradical(j=2)",
        ("1", "0", "1", "-1"),
    ),
    WorkedExample(
        "free, J = (0)",
        "ring: Q[t]\nf1: x^2 - 2*t*x + (t^2 - t)\nf2: y^2 - 2*y + (1 - 4*t)\n",
        "WholeRingFree",
        ("1", "0", "0", "0"),
    ),
    WorkedExample(
        "completed square over Q[t]",
        "ring: Q[t]\nf1: x^2 - 2*t*x + (t^2 - t)\nf2: y^2 - 2*y + (1 - 4*t)\nJ: x*y - x - t*y + 3*t\n",
        "CompletedSquare(r=0)",
        ("1", "t", "1", "-t"),
    ),
    WorkedExample(
        "reducible f1 over Z",
        "ring: Z\nf1: x^2 - 9\nf2: y^2 - 3\nJ: x - 3\n",
        "Reducible(k=0)",
        ("1", "3", "0", "0"),
    ),
)
