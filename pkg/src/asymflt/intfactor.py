"""Integer factorization: trial division then Pollard-Brent under a time budget."""
from __future__ import annotations

import math
import random
import time
from functools import lru_cache

import sympy

TRIAL_BOUND = 10**6
DEFAULT_BUDGET_MS = 10_000


class FactorizationTimeout(RuntimeError):
    def __init__(self, cofactor: int, partial: dict):
        self.cofactor = cofactor
        self.partial = partial
        super().__init__(f"could not factor cofactor {cofactor} within budget")


@lru_cache(maxsize=1)
def _small_primes():
    return list(sympy.primerange(2, TRIAL_BOUND + 1))


def _brent(n: int, deadline: float, rng: random.Random) -> int | None:
    if n % 2 == 0:
        return 2
    while time.monotonic() < deadline:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            if time.monotonic() > deadline:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factor_integer(n: int, budget_ms: int = DEFAULT_BUDGET_MS) -> dict[int, int]:
    """Prime factorization of |n| (n != 0) as {p: e}."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    if n == 1:
        return out
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            if n == 1 or sympy.isprime(n):
                break
    if n > 1 and n <= TRIAL_BOUND ** 2 or sympy.isprime(n):
        if n > 1:
            out[n] = out.get(n, 0) + 1
        return out
    deadline = time.monotonic() + budget_ms / 1000
    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if sympy.isprime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent(m, deadline, rng)
        if d is None:
            raise FactorizationTimeout(m, out)
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def prime_divisors(n: int, budget_ms: int = DEFAULT_BUDGET_MS) -> list[int]:
    return sorted(factor_integer(n, budget_ms))
