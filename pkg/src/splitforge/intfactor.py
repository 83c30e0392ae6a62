"""Integer factorization: trial division by small primes, then Pollard-Brent rho.

Effort is metered in "steps" (one trial division or one rho iteration each);
callers pass a budget and get :class:`FactorizationTimeout` when it runs out.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

from .errors import FactorizationTimeout, ZeroInput

TRIAL_LIMIT = 10**6
DEFAULT_BUDGET = 2_000_000
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def default_budget() -> int:
    env = os.environ.get("SPLITFORGE_FACTOR_BUDGET")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return DEFAULT_BUDGET


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class _Meter:
    __slots__ = ("left", "budget")

    def __init__(self, budget: int):
        self.left = budget
        self.budget = budget

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise FactorizationTimeout(f"factorization budget of {self.budget} steps exhausted")


def _brent(n: int, meter: _Meter) -> int:
    # returns a nontrivial factor of composite odd n
    for c in range(1, 1 << 30):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            meter.spend(r)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                meter.spend(min(m, r - k))
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                meter.spend()
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError("unreachable")


def factorint(n: int, budget: int | None = None) -> tuple[int, dict[int, int]]:
    """Return ``(unit, {prime: exponent})`` with ``unit * prod(p**e) == n``."""
    if n == 0:
        raise ZeroInput("cannot factor 0")
    meter = _Meter(default_budget() if budget is None else budget)
    unit = -1 if n < 0 else 1
    n = abs(n)
    factors: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        meter.spend()
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < TRIAL_LIMIT * TRIAL_LIMIT or is_probable_prime(m):
            # anything left below TRIAL_LIMIT**2 has no factor <= TRIAL_LIMIT
            factors[m] = factors.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _brent(m, meter)
        stack += [d, m // d]
    return unit, dict(sorted(factors.items()))
