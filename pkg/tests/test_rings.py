from fractions import Fraction

import pytest

from splitforge.errors import (
    BothZero,
    DivisionByZero,
    EvenPrime,
    InseparableInput,
    NotDivisible,
    UnknownRing,
    ZeroInput,
)
from splitforge.rings import ZZ, Frac, Poly, PrimePolyRing, RationalPolyRing, ring_from_name

from conftest import same

Q = RationalPolyRing()
t = Q.gen()
F5 = PrimePolyRing(5)


def test_exact_div():
    assert ZZ.exact_div(12, 3) == 4
    with pytest.raises(NotDivisible):
        ZZ.exact_div(5, 2)
    assert Q.exact_div(t**2 - 1, t - 1) == t + 1
    with pytest.raises(DivisionByZero):
        ZZ.exact_div(1, 0)


def test_gcd_normalized():
    assert ZZ.gcd(2, 3) == 1
    assert ZZ.gcd(18, 8) == 2
    assert ZZ.gcd(-18, 8) == 2
    assert Q.gcd(t**2, t**3 + t**2) == t**2
    assert Q.gcd(2 * t + 2, Q(4) * (t + 1) ** 2) == t + 1
    with pytest.raises(BothZero):
        ZZ.gcd(0, 0)


def test_factor_integers():
    f = ZZ.factor(18)
    assert f.unit == 1 and dict(f.factors) == {2: 1, 3: 2}
    f = ZZ.factor(-5)
    assert f.unit == -1 and dict(f.factors) == {5: 1}
    with pytest.raises(ZeroInput):
        ZZ.factor(0)


def test_factor_polynomials():
    f = Q.factor(t**2 - 1)
    assert f.unit == 1
    assert sorted(str(p) for p, _ in f.factors) == sorted([str(t - 1), str(t + 1)])
    assert f.expand() == t**2 - 1
    g = F5.factor(F5(3) * F5.gen() ** 2 + F5(2))
    assert g.expand() == F5(3) * F5.gen() ** 2 + F5(2)


def test_is_square(oracle):
    assert ZZ.is_square(Frac(ZZ, 4, 9)) == Frac(ZZ, 2, 3)
    assert ZZ.is_square(Frac(ZZ, 5)) is None
    assert ZZ.is_square(Frac(ZZ, -4)) is None
    root = Q.is_square(Frac(Q, t**2, (t + 1) ** 2))
    assert root * root == Frac(Q, t**2, (t + 1) ** 2)
    assert same(f"({Q.format(root.num)})/({Q.format(root.den)})", oracle["sqrt_t2_over_t1_2"])


def test_is_square_free(oracle):
    assert ZZ.is_square_free(5)
    assert not ZZ.is_square_free(18)
    assert Q.is_square_free(t**2 - 2) is oracle["squarefree_t2_minus_2"]
    assert not Q.is_square_free((t + 1) ** 2 * t)


def test_inseparable_over_fp():
    s = F5.gen()
    with pytest.raises(InseparableInput):
        F5.is_square_free(s**5 + F5(1))


def test_sqrt_canonical_root():
    assert ZZ.sqrt(144) == 12
    assert ZZ.sqrt(-4) is None
    assert Q.sqrt(Q(4) * t**2) == 2 * t
    r = F5.sqrt(F5(4) * F5.gen() ** 2)
    assert r * r == F5(4) * F5.gen() ** 2
    assert r.lc in (1, 2)


def test_fraction_normalization():
    f = Frac(ZZ, 6, -4)
    assert (f.num, f.den) == (-3, 2)
    g = Frac(Q, 2 * t, Q(2) * t**2)
    assert g.den == t and g.num == 1


def test_poly_arithmetic_mod_p():
    s = F5.gen()
    assert (s + F5(4)) * (s + F5(1)) == s**2 + F5(4)
    assert Poly([7, 5], 5).coeffs == (2,)


def test_ring_names():
    assert ring_from_name("Z") is ZZ
    assert ring_from_name("Q[t]") == Q
    assert ring_from_name("F7[t]").p == 7
    with pytest.raises(EvenPrime):
        ring_from_name("F2[t]")
    with pytest.raises(UnknownRing):
        ring_from_name("F9[t]")
    with pytest.raises(UnknownRing):
        ring_from_name("R")


def test_rational_coefficients_kept_exact():
    h = Q(Fraction(1, 3)) * t
    assert h * 3 == t
