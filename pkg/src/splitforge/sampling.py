"""Seeded random ring elements and polynomials for probes and generated suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .polyalg import BiPoly
from .rings import Poly


def random_element(ring, rng: random.Random, bound: int = 20, degree: int = 2):
    if ring.kind == "Z":
        return rng.randint(-bound, bound)
    n = rng.randint(0, degree)
    if ring.p is None:
        cs = [Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 1, 2, 3))) for _ in range(n + 1)]
    else:
        cs = [rng.randrange(ring.p) for _ in range(n + 1)]
    return Poly(cs, ring.p, ring.var)


def random_nonzero(ring, rng: random.Random, bound: int = 20, degree: int = 2):
    while True:
        v = random_element(ring, rng, bound, degree)
        if v:
            return v


def random_bipoly(ring, rng: random.Random, max_degree: int = 4, bound: int = 20, density: float = 0.6) -> BiPoly:
    terms = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            if rng.random() < density:
                terms[(i, j)] = ring(random_element(ring, rng, bound, 1))
    return BiPoly(terms)
