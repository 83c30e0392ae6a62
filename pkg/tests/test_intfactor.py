import pytest
import sympy

from splitforge.errors import FactorizationTimeout, ZeroInput
from splitforge.intfactor import default_budget, factorint, is_probable_prime


@pytest.mark.parametrize("n", [1, -1, 2, 12, -360, 97 * 97 * 101, 2**61 - 1, 10**12 + 39, 600851475143])
def test_factorint_matches_sympy(n):
    unit, fac = factorint(n)
    assert unit == (1 if n > 0 else -1)
    assert fac == sympy.factorint(abs(n))


def test_large_semiprime_found_by_rho():
    p, q = sympy.nextprime(10**9), sympy.nextprime(3 * 10**9)
    assert factorint(p * q)[1] == {p: 1, q: 1}


def test_budget_exhaustion():
    p, q = sympy.nextprime(10**18), sympy.nextprime(2 * 10**18)
    with pytest.raises(FactorizationTimeout):
        factorint(p * q, budget=500)


def test_zero_rejected():
    with pytest.raises(ZeroInput):
        factorint(0)


def test_primality_agrees_with_sympy():
    for n in range(-5, 3000):
        assert is_probable_prime(n) == sympy.isprime(n)
    assert is_probable_prime(2**127 - 1)
    assert not is_probable_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_budget_env(monkeypatch):
    monkeypatch.setenv("SPLITFORGE_FACTOR_BUDGET", "1234")
    assert default_budget() == 1234
