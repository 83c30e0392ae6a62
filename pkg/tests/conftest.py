import json
from pathlib import Path

import pytest
import sympy

TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"


@pytest.fixture(scope="session")
def oracle() -> dict:
    """Reference values frozen by tests/oracle/derive_values.py (sympy only)."""
    return json.loads((TESTS / "oracle" / "values.json").read_text())


def sym(text: str):
    """Parse either our canonical text or sympy's str() into a sympy expression."""
    return sympy.sympify(text.replace("^", "**"), locals={n: sympy.Symbol(n) for n in "txyz"})


def same(ours: str, theirs: str) -> bool:
    return sympy.expand(sym(ours) - sym(theirs)) == 0
