import pytest

from splitforge.errors import MixedPresentations
from splitforge.polyalg import BiPoly, MonicQuadratic
from splitforge.quotient import (
    Presentation,
    RadicalWitness,
    membership_by_psi,
    membership_in_Pr,
    membership_transcript,
    psi_eval,
    reduce_to_linear,
    replay,
    t_mul,
    zero_divisor_pair,
)
from splitforge.rings import ZZ

x, y = BiPoly.x(), BiPoly.y()
W = RadicalWitness(2, 3, 2)
RAD = Presentation(ZZ, MonicQuadratic(0, -18), MonicQuadratic(0, -8, "y"))
GOLD = Presentation(ZZ, MonicQuadratic(1, -1), MonicQuadratic(1, -1, "y"))


def _ints(t):
    return [int(c) for c in t.coords]


def test_t_mul(oracle):
    xb = RAD.element(0, 1)
    assert _ints(t_mul(xb, xb)) == [int(v) for v in oracle["tmul_x_x"]]
    p, q = RAD.element(0, -2, 3), RAD.element(0, 2, 3)
    assert _ints(t_mul(p, q)) == [int(v) for v in oracle["tmul_zero_pair"]]
    g = GOLD.element(0, 1)
    assert _ints(t_mul(g, g)) == [int(v) for v in oracle["tmul_golden_x_x"]]


def test_t_mul_mixed_presentations():
    with pytest.raises(MixedPresentations):
        t_mul(RAD.one(), GOLD.one())


def test_reduce_matches_t_mul():
    h = (y * 3 - x * 2) * (y * 3 + x * 2) + x**3 * y
    assert RAD.reduce(h) == t_mul(RAD.reduce(x**3), RAD.reduce(y))


def test_psi_eval(oracle):
    assert psi_eval(y * 3 + x * 2, 0, W).is_zero()
    assert psi_eval(x * y - 12, 1, W).is_zero()
    assert oracle["psi1_xy_minus_12"] == "0"
    assert list(psi_eval(BiPoly.const(1), 0, W).coords) == [1, 0]
    val = psi_eval(y * 3 + x * 2, 1, W)
    assert list(val.coords) == [0, 12] and oracle["psi1_3y_plus_2x"] == "12*z"


def test_reduce_to_linear():
    lnf = reduce_to_linear(x**2 - 18, 0, W)
    assert (lnf.v1, lnf.b1, lnf.v2) == (0, 0, 0)
    lnf = reduce_to_linear(y * 3 + x * 2, 0, W)
    assert (lnf.v1, lnf.b1, lnf.v2) == (3, 2, 0)
    h = x**2 * 4 - y**2 * 9
    lnf = reduce_to_linear(h, 0, W)
    assert (lnf.v1, lnf.b1, lnf.v2) == (0, 0, 0)
    quotients = dict((name, q) for name, q in lnf.transcript if not q.is_zero())
    assert quotients == {"f1": BiPoly.const(4), "f2": BiPoly.const(-9)}
    gens = {"f1": W.f1(), "f2": W.f2(), "f4": W.f4(0)}
    assert replay(lnf.transcript, gens) + lnf.linear_part() == h


def test_membership_examples():
    assert membership_in_Pr(y * 3 + x * 2, 0, W, ZZ)
    assert not membership_in_Pr(y * 3 + x * 2, 1, W, ZZ)
    for r in (0, 1):
        assert not membership_in_Pr(x, r, W, ZZ)
        assert membership_in_Pr(BiPoly(), r, W, ZZ) and membership_by_psi(BiPoly(), r, W)
    bumped = W.f3(0) + 1
    assert membership_in_Pr(bumped, 0, W, ZZ) == membership_by_psi(bumped, 0, W) is False


def test_transcript_replays():
    h = W.f4(1) * (x + y**2) + W.f3(1) * 5 - W.f1() * y
    tr = membership_transcript(h, 1, W, ZZ)
    gens = {"f1": W.f1(), "f2": W.f2(), "f3": W.f3(1), "f4": W.f4(1)}
    assert replay(tr, gens) == h


def test_zero_divisor_pair():
    p, q = zero_divisor_pair(W, ZZ)
    assert p and q
    assert _ints(p) == [0, -2, 3, 0] and _ints(q) == [0, 2, 3, 0]
    assert not t_mul(p, q)


def test_radical_identity(oracle):
    c, d = 2, 3
    h = (x**2 - 18) * (c * c) - (y**2 - 8) * (d * d) + (y * d - x * c) * (x * c + y * d)
    assert h.is_zero() and oracle["identity_cdu_2_3"] == "0"
