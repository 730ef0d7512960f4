"""Finite fields F_p[t]/(g) used as residue fields of prime ideals.

Elements are tuples of length ``f`` holding coordinates in the basis
1, t, ..., t^(f-1).  Prime fields go through the same interface; the
hot paths special-case ``f == 1``.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterator, Sequence

from . import polynomials as P


class FiniteField:
    def __init__(self, p: int, modulus: Sequence[int]):
        modulus = P.reduce_mod(modulus, p)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.modulus = tuple(modulus)
        self.f = len(modulus) - 1
        self.q = p ** self.f

    def __repr__(self):
        return f"GF({self.p}^{self.f})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- construction
    @cached_property
    def zero(self):
        return (0,) * self.f

    @cached_property
    def one(self):
        return (1,) + (0,) * (self.f - 1)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.f - 1)

    def from_poly(self, coeffs: Sequence[int]):
        """Reduce an integer polynomial (constant term first) into the field."""
        if self.f == 1:
            return (P.poly_eval([c % self.p for c in coeffs], -self.modulus[0]) % self.p,)
        _, r = P.gf_divmod(list(coeffs), list(self.modulus), self.p)
        r = r + [0] * (self.f - len(r))
        return tuple(r[: self.f])

    def elements(self) -> Iterator[tuple]:
        for digits in itertools.product(range(self.p), repeat=self.f):
            yield tuple(reversed(digits))

    # -- arithmetic
    def is_zero(self, x) -> bool:
        return not any(x)

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x, y):
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple(-a % p for a in x)

    def mul(self, x, y):
        if self.f == 1:
            return (x[0] * y[0] % self.p,)
        prod = [0] * (2 * self.f - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        g = self.modulus
        for k in range(len(prod) - 1, self.f - 1, -1):
            c = prod[k] % self.p
            if c:
                for i in range(self.f):
                    prod[k - self.f + i] -= c * g[i]
        return tuple(c % self.p for c in prod[: self.f])

    def pow(self, x, n: int):
        if n < 0:
            return self.pow(self.inv(x), -n)
        if self.f == 1:
            return (pow(x[0], n, self.p),)
        result = self.one
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError("inverse of zero in residue field")
        if self.f == 1:
            return (pow(x[0], -1, self.p),)
        return self.pow(x, self.q - 2)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    # -- roots
    def is_square(self, x) -> bool:
        if self.is_zero(x) or self.p == 2:
            return True
        if self.f == 1:
            return pow(x[0], (self.p - 1) // 2, self.p) == 1
        return self.pow(x, (self.q - 1) // 2) == self.one

    def sqrt(self, x):
        """A square root of x, or None.  Tonelli-Shanks for odd q."""
        if self.is_zero(x):
            return self.zero
        if self.p == 2:
            return self.pow(x, self.q // 2)
        if not self.is_square(x):
            return None
        q = self.q
        s, m = 0, q - 1
        while m % 2 == 0:
            s += 1
            m //= 2
        z = next(e for e in self.elements() if not self.is_zero(e) and not self.is_square(e))
        c = self.pow(z, m)
        r = self.pow(x, (m + 1) // 2)
        t = self.pow(x, m)
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            r = self.mul(r, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return r

    def pth_root(self, x):
        """Inverse Frobenius; x^(q/p) is the unique p-th root in a perfect field."""
        return self.pow(x, self.q // self.p)

    def absolute_trace(self, x) -> int:
        acc = self.zero
        y = x
        for _ in range(self.f):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        return acc[0]

    def poly_eval(self, coeffs, x):
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def roots(self, coeffs) -> list:
        """Roots of a polynomial with coefficients in the field (constant first), by enumeration."""
        return [x for x in self.elements() if self.is_zero(self.poly_eval(coeffs, x))]
