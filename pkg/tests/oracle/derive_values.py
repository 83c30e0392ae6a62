"""Recompute reference values with sympy alone and freeze them to values.json.

Run from the repository root:  python3 tests/oracle/derive_values.py

Nothing here imports splitforge; every value is obtained by generic
computer-algebra calls (exact division, Groebner reduction, factoring over
algebraic extensions, substitution and remainder).
"""

from __future__ import annotations

import json
from pathlib import Path

import sympy as sp

x, y, z, t = sp.symbols("x y z t")
OUT = Path(__file__).with_name("values.json")


def s(expr) -> str:
    return str(sp.expand(expr))


def reduce_mod(expr, gens, *vars_):
    return sp.reduced(sp.expand(expr), gens, *vars_, order="grlex")[1]


def basis_coords(expr, f1, f2):
    """Coordinates of expr mod (f1, f2) on 1, x, y, x*y."""
    r = sp.Poly(reduce_mod(expr, [f1, f2], x, y), x, y)
    return [s(r.coeff_monomial(m)) for m in (1, x, y, x * y)]


def rho_from_images(x_img, y_img, modulus):
    out = []
    for mono in (sp.Integer(1), x_img, y_img, x_img * y_img):
        r = sp.rem(sp.expand(mono), modulus, z)
        out.append(s(sp.Poly(r, z).coeff_monomial(1)))
    return out


def vanishes(h, x_img, y_img, modulus) -> bool:
    return sp.rem(sp.expand(h.subs({x: x_img, y: y_img}, simultaneous=True)), modulus, z) == 0


def root_in_ext(g_var, f_expr):
    """Roots of g over Q(alpha), alpha a root of f in x, written as p + q*x."""
    a = -sp.Poly(f_expr, x).coeff_monomial(x)
    disc = sp.discriminant(f_expr, x)
    sq = sp.sqrt(disc)
    if sq.is_rational:
        return None
    g_y = g_var
    fl = sp.factor_list(g_y, y, extension=sq)[1]
    lin = [fac for fac, _ in fl if sp.degree(fac, y) == 1]
    if not lin:
        return None
    k, sqrt_m = sq.as_coeff_Mul()
    roots = []
    for fac in lin:
        r = sp.expand(sp.solve(fac, y)[0])
        q = r.coeff(sqrt_m)
        # sqrt(disc) = k * sqrt_m = 2*x - a with x a root of f
        roots.append(sp.expand(r - q * sqrt_m + q * (2 * x - a) / k))
    roots.sort(key=lambda r: str(r))
    return [s(r) for r in roots]


def domain_verdict(f1, f2):
    if len(sp.factor_list(f1, x)[1]) > 1 or sp.degree(sp.factor_list(f1, x)[1][0][0], x) < 2:
        return "ReducibleF1"
    sq = sp.sqrt(sp.discriminant(f1, x))
    facs = sp.factor_list(f2, y, extension=sq)[1]
    return "NonDomain" if any(sp.degree(f, y) == 1 for f, _ in facs) else "Domain"


def radical_selection(J, c, d, u, sx=0, sy=0):
    for r in (0, 1):
        sign = (-1) ** (r + 1)
        xi, yi = d * z + sx, sign * c * z + sy
        if all(vanishes(h, xi, yi, z**2 - u) for h in J):
            return r, rho_from_images(xi, yi, z**2 - u)
    return None


def nonradical_selection(J, f_x, e, hm, hp):
    fz = f_x.subs(x, z)
    for j, gamma in ((1, e * z + hm), (2, -e * z + hp)):
        if all(vanishes(h, z, gamma, fz) for h in J):
            return j, rho_from_images(z, gamma, fz)
    return None


def main():
    v: dict = {}
    # ring-level
    tp = sp.Symbol("t", positive=True)
    v["sqrt_t2_over_t1_2"] = str(sp.sqrt(tp**2 / (tp + 1) ** 2))
    v["squarefree_t2_minus_2"] = all(e == 1 for _, e in sp.sqf_list(t**2 - 2)[1])
    # polynomial algebra
    q, rem = sp.div(4 * x**2 - 9 * y**2, x**2 - 18, x)
    v["divide_4x2_9y2"] = [s(q), s(rem)]
    v["ext_square_2_3_x"] = s(sp.rem(sp.expand((sp.Rational(2, 3) * x) ** 2), x**2 - 18, x))
    v["ext_square_half"] = s(sp.rem(sp.expand((sp.Rational(1, 2) + x / 2) ** 2), x**2 - 5, x))
    for val in (8, 4, 3):
        root = sp.sqrt(sp.Integer(val))
        ratio = sp.nsimplify(sp.sqrt(sp.Integer(val)) / sp.sqrt(18))
        if root.is_rational:
            v[f"sqrt_{val}_in_Q_sqrt18"] = [s(root), "0"]
        elif ratio.is_rational:
            v[f"sqrt_{val}_in_Q_sqrt18"] = ["0", s(ratio)]
        else:
            v[f"sqrt_{val}_in_Q_sqrt18"] = None
    v["root_g_y2y1_in_f_x2x1"] = root_in_ext(y**2 - y - 1, x**2 - x - 1)
    v["root_g_y2_8_in_f_x2_18"] = root_in_ext(y**2 - 8, x**2 - 18)
    v["root_g_y2_3_in_f_x2_2"] = root_in_ext(y**2 - 3, x**2 - 2)
    # quotient ring
    f1, f2 = x**2 - 18, y**2 - 8
    v["tmul_x_x"] = basis_coords(x * x, f1, f2)
    v["tmul_zero_pair"] = basis_coords((3 * y - 2 * x) * (3 * y + 2 * x), f1, f2)
    v["tmul_golden_x_x"] = basis_coords(x * x, x**2 - x - 1, y**2 - y - 1)
    v["psi1_xy_minus_12"] = s(sp.rem(sp.expand((3 * z) * (2 * z) - 12), z**2 - 2, z))
    v["psi1_3y_plus_2x"] = s(sp.rem(sp.expand(3 * (2 * z) + 2 * (3 * z)), z**2 - 2, z))
    # domain test
    v["domain_x2_2_y2_3"] = domain_verdict(x**2 - 2, y**2 - 3)
    v["domain_x2_18_y2_8"] = domain_verdict(x**2 - 18, y**2 - 8)
    v["domain_x2_9_y2_3"] = domain_verdict(x**2 - 9, y**2 - 3)
    # radical decomposition: c/d = sqrt(a2/a1) in lowest terms, u = a1/d^2
    for a1, a2 in ((18, 8), (2, 8), (5, 5)):
        ratio = sp.sqrt(sp.Rational(a2, a1))
        c, d = sp.fraction(ratio)
        v[f"radical_decompose_{a1}_{a2}"] = [s(c), s(d), s(sp.Rational(a1) / d**2)]
    # completed square
    a, b, cc, dd = 2 * t, t**2 - t, 2, 1 - 4 * t
    v["complete_square_dany2"] = [s(a**2 / 4 - b), s(sp.Integer(cc) ** 2 / 4 - dd)]
    # nonradical witnesses
    for name, (fa, fb, ga, gb) in {"golden": (1, -1, 1, -1), "g_3y": (1, -1, 3, 1)}.items():
        q = sp.Rational(ga**2 - 4 * gb, fa**2 - 4 * fb)
        e = sp.sqrt(q)
        v[f"nonradical_{name}"] = [s(e), s((ga - fa * e) / 2), s((ga + fa * e) / 2)]
    v["nonradical_h1h2_minus_g_plus_f"] = s((y - x) * (y + x - 1) - ((y**2 - y - 1) - (x**2 - x - 1)))
    v["nonradical_g_of_minus_x_plus_1_mod_f"] = s(sp.rem(sp.expand((-x + 1) ** 2 - (-x + 1) - 1), x**2 - x - 1, x))
    v["identity_cdu_2_3"] = s(4 * (x**2 - 18) - 9 * (y**2 - 8) + (3 * y - 2 * x) * (2 * x + 3 * y))
    # retractions for the worked examples
    sel = radical_selection([3 * y - 2 * x], 2, 3, 2)
    v["retraction_radical"] = {"r": sel[0], "rho": sel[1]}
    e, hm, hp = 1, 0, 1
    for key, J in (("retraction_golden_y_minus_x", y - x), ("retraction_golden_y_plus_x_minus_1", y + x - 1)):
        j, rho = nonradical_selection([J], x**2 - x - 1, e, hm, hp)
        v[key] = {"j": j, "rho": rho}
    # completed square over Q[t]: witnesses (c, d, u) = (2, 1, t), shifts (t, 1)
    for r in (0, 1):
        sign = (-1) ** (r + 1)
        v[f"retraction_dany2_r{r}"] = rho_from_images(z + t, sign * 2 * z + 1, z**2 - t)
    OUT.write_text(json.dumps(v, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(v)} values to {OUT}")


if __name__ == "__main__":
    main()
