"""Exact arithmetic in number fields given by a monic integral polynomial.

Elements live in the power basis of a root ``theta`` of the defining
polynomial and are stored as an integer numerator vector over a common
positive denominator.  Prime ideals are only constructed at rational
primes where ``Z[theta]`` is p-maximal (Dedekind's criterion); there the
power basis is a valid local basis and every local computation reduces
to integer arithmetic modulo p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Optional, Sequence

import sympy

from . import polynomials as P
from .finite_field import FiniteField


class NumberFieldError(Exception):
    pass


class Reducible(NumberFieldError):
    pass


class CannotCertify(NumberFieldError):
    pass


class NotPMaximal(NumberFieldError):
    def __init__(self, p, msg=None):
        self.p = p
        super().__init__(msg or f"Z[theta] is not {p}-maximal (Dedekind criterion fails)")


class ZeroInput(NumberFieldError):
    pass


@total_ordering
class _Infinity:
    """Valuation of zero.  Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("asymflt.INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

CERT_PRIME_BOUND = 200


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class IrreducibilityCertificate:
    kind: str  # "degree-one" | "eisenstein" | "mod-p-irreducible"
    prime: Optional[int] = None

    def verify(self, poly) -> bool:
        if self.kind == "degree-one":
            return P.degree(poly) == 1
        if self.kind == "eisenstein":
            return P.eisenstein_prime(poly, self.prime)
        if self.kind == "mod-p-irreducible":
            return P.is_irreducible_mod(poly, self.prime)
        return False

    def __str__(self):
        return self.kind if self.prime is None else f"{self.kind} at {self.prime}"


def _certify(poly) -> IrreducibilityCertificate:
    n = P.degree(poly)
    if n == 1:
        return IrreducibilityCertificate("degree-one")
    c0 = poly[0]
    if c0 != 0:
        for p in sympy.primefactors(abs(c0)):
            if P.eisenstein_prime(poly, p):
                return IrreducibilityCertificate("eisenstein", p)
    for p in sympy.primerange(2, CERT_PRIME_BOUND + 1):
        if P.is_irreducible_mod(poly, p):
            return IrreducibilityCertificate("mod-p-irreducible", p)
    x = sympy.Symbol("x")
    _, factors = sympy.factor_list(sympy.Poly(list(reversed(poly)), x))
    if len(factors) > 1 or factors[0][1] > 1:
        raise Reducible(f"{sympy.Poly(list(reversed(poly)), x).as_expr()} factors as {factors}")
    raise CannotCertify(f"no Eisenstein or mod-p certificate for p <= {CERT_PRIME_BOUND}")


class NumberField:
    """K = Q[x]/(f) for monic irreducible f with integer coefficients."""

    def __init__(self, defining_poly: Sequence[int], name: Optional[str] = None, certificate=None):
        poly = P.trim([int(c) for c in defining_poly])
        if P.degree(poly) < 1 or poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        self.defining_poly = tuple(poly)
        self.degree = len(poly) - 1
        self.name = name
        self.certificate = certificate if certificate is not None else _certify(poly)
        self._primes: dict[int, list[PrimeIdeal]] = {}

    def __repr__(self):
        return f"NumberField({self.name or list(self.defining_poly)})"

    def __eq__(self, other):
        return self is other or (isinstance(other, NumberField) and self.defining_poly == other.defining_poly)

    def __hash__(self):
        return hash(self.defining_poly)

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_primes"] = {}
        for key in [k for k in state if k.startswith("_cached_")]:
            del state[key]
        return state

    # -- elements
    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, (list, tuple)):
            coords = [Fraction(c) for c in x]
            if len(coords) > self.degree:
                raise ValueError("too many coordinates")
            coords += [Fraction(0)] * (self.degree - len(coords))
            return FieldElement.from_fractions(self, coords)
        return FieldElement.from_fractions(self, [Fraction(x)] + [Fraction(0)] * (self.degree - 1))

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    @cached_property
    def gen(self):
        if self.degree == 1:
            return self(-self.defining_poly[0])
        return self([0, 1])

    def from_int_poly(self, coeffs) -> "FieldElement":
        """Evaluate an integer polynomial at theta."""
        return FieldElement(self, self._reduce_int(list(coeffs)), 1)

    @cached_property
    def _reduction_table(self):
        n = self.degree
        f = self.defining_poly
        table = []
        cur = [-c for c in f[:n]]  # theta^n
        for _ in range(n, 2 * n - 1):
            table.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * f[i] for i, c in enumerate(cur)]
        return table

    def _reduce_int(self, coeffs):
        n = self.degree
        if n == 1:
            return (P.poly_eval(coeffs, -self.defining_poly[0]),)
        if len(coeffs) <= n:
            return tuple(coeffs) + (0,) * (n - len(coeffs))
        if len(coeffs) > 2 * n - 1:
            f = self.defining_poly
            coeffs = list(coeffs)
            for k in range(len(coeffs) - 1, 2 * n - 2, -1):
                c = coeffs[k]
                if c:
                    for i in range(n + 1):
                        coeffs[k - n + i] -= c * f[i]
            coeffs = coeffs[: 2 * n - 1]
        out = list(coeffs[:n])
        for k, row in enumerate(self._reduction_table, start=n):
            if k < len(coeffs) and coeffs[k]:
                c = coeffs[k]
                for i in range(n):
                    out[i] += c * row[i]
        return tuple(out)

    @cached_property
    def power_traces(self):
        """Tr(theta^i) for 0 <= i < n via Newton's identities."""
        n = self.degree
        f = self.defining_poly
        s = [n]
        for k in range(1, n):
            acc = -k * f[n - k]
            for i in range(1, k):
                acc -= f[n - i] * s[k - i]
            s.append(acc)
        return s

    @cached_property
    def poly_discriminant(self) -> int:
        x = sympy.Symbol("x")
        return int(sympy.discriminant(sympy.Poly(list(reversed(self.defining_poly)), x)))

    def is_rational_field(self) -> bool:
        return self.degree == 1

    def count_real_embeddings(self) -> int:
        return count_real_embeddings(self)

    def primes_above(self, p: int) -> list["PrimeIdeal"]:
        return [P_ for P_, _, _ in factor_rational_prime(self, p)]

    def to_document(self) -> dict:
        return {"defining_poly": list(self.defining_poly)}


def make_field(defining_poly: Sequence[int], name: Optional[str] = None) -> NumberField:
    return NumberField(defining_poly, name=name)


class FieldElement:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den

    @classmethod
    def from_fractions(cls, field, coords):
        den = 1
        for c in coords:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return cls(field, tuple(int(c * den) for c in coords), den)

    # -- basic protocol
    def coords(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def __repr__(self):
        if self.field.degree == 1:
            return str(Fraction(self.num[0], self.den))
        terms = []
        for i, c in enumerate(self.coords()):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*t" if i == 1 else f"{c}*t^{i}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.field == other.field

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return any(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return FieldElement(self.field, tuple(a + b for a, b in zip(self.num, other.num)), self.den)
        d = self.den * other.den
        return FieldElement(self.field, tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num)), d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, tuple(a * other for a in self.num), self.den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = self.field.degree
        if n == 1:
            return FieldElement(self.field, (self.num[0] * other.num[0],), self.den * other.den)
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, self.field._reduce_int(prod), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.field.degree
        if n == 1:
            return FieldElement(self.field, (self.den,), self.num[0])
        if self.is_rational():
            return FieldElement(self.field, (self.den,) + (0,) * (n - 1), self.num[0])
        # solve M y = e_0 with M the multiplication matrix of the numerator
        M = [[Fraction(v) for v in row] for row in _mult_matrix(self)]
        aug = [M[i] + [Fraction(1 if i == 0 else 0)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [v / pv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    fac = aug[r][col]
                    aug[r] = [a - fac * b for a, b in zip(aug[r], aug[col])]
        y = FieldElement.from_fractions(self.field, [aug[i][n] for i in range(n)])
        return y * self.den

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError
            return FieldElement(self.field, self.num, self.den * other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- invariants
    def norm(self) -> Fraction:
        return norm_and_trace(self)[0]

    def trace(self) -> Fraction:
        return norm_and_trace(self)[1]

    def is_integral(self) -> bool:
        if self.den == 1:
            return True
        return all(c.denominator == 1 for c in charpoly(self))


def _mult_matrix(x: FieldElement):
    """Integer matrix (rows) of multiplication by the numerator of x; column j = num * theta^j."""
    K = x.field
    n = K.degree
    cols = []
    cur = list(x.num)
    for j in range(n):
        cols.append(cur)
        shifted = [0] + cur
        cur = list(K._reduce_int(shifted))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _bareiss_det(M) -> int:
    M = [row[:] for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def norm_and_trace(x: FieldElement) -> tuple[Fraction, Fraction]:
    """(Norm, Trace) of x: determinant and trace of multiplication by x."""
    K = x.field
    n = K.degree
    tr = Fraction(sum(c * t for c, t in zip(x.num, K.power_traces)), x.den)
    if n == 1:
        nm = Fraction(x.num[0], x.den)
    else:
        nm = Fraction(_bareiss_det(_mult_matrix(x)), x.den ** n)
    return nm, tr


def charpoly(x: FieldElement) -> list[Fraction]:
    """Characteristic polynomial of multiplication by x (constant first), Faddeev-LeVerrier."""
    n = x.field.degree
    A = [[Fraction(v, x.den) for v in row] for row in _mult_matrix(x)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A M + c_{n-k+1} I
        AM = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        AMk = [[sum(A[i][l] * M[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(AMk[i][i] for i in range(n)) / k
    return coeffs


def count_real_embeddings(K: NumberField) -> int:
    return P.count_real_roots(list(K.defining_poly))


# ---------------------------------------------------------------- primes


def dedekind_p_maximal(poly, p: int) -> bool:
    facs = P.factor_mod(poly, p)
    rad = [1]
    for g, _ in facs:
        rad = P.gf_mul(rad, g, p)
    h, r = P.gf_divmod(poly, rad, p)
    assert r == [0]
    F = P.poly_sub(P.poly_mul(rad, h), list(poly))
    assert all(c % p == 0 for c in F)
    F = [c // p for c in F]
    d = P.gf_gcd(P.gf_gcd(P.reduce_mod(F, p), rad, p), h, p)
    return P.degree(d) == 0


class PrimeIdeal:
    """A prime of K above p, P = (p, g(theta)) with g an irreducible factor of f mod p."""

    def __init__(self, field: NumberField, p: int, g, e: int, factors):
        self.field = field
        self.p = p
        self.g = tuple(g)
        self.e = e
        self.f = len(self.g) - 1
        self._factors = factors  # full factorization of f mod p

    @property
    def residue_char(self) -> int:
        return self.p

    @property
    def norm(self) -> int:
        return self.p ** self.f

    @property
    def residue_map_data(self):
        return self.g

    def __repr__(self):
        if self.field.degree == 1:
            return f"({self.p})"
        return f"Prime(p={self.p}, e={self.e}, f={self.f}, g={list(self.g)})"

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and (self.p, self.g) == (other.p, other.g) and self.field == other.field

    def __hash__(self):
        return hash((self.p, self.g, self.field.defining_poly))

    def __getstate__(self):
        return {k: v for k, v in self.__dict__.items() if k in ("field", "p", "g", "e", "f", "_factors")}

    def sort_key(self):
        return (self.p, self.f, tuple(reversed(self.g)))

    @cached_property
    def residue_field(self) -> FiniteField:
        return FiniteField(self.p, list(self.g))

    @cached_property
    def anti_uniformizer(self) -> FieldElement:
        """beta in Z[theta] with beta*P in pO and beta not in pO; beta/p has valuation -1 at P only."""
        h, r = P.gf_divmod(list(self.field.defining_poly), list(self.g), self.p)
        assert r == [0]
        return self.field.from_int_poly(h)

    @cached_property
    def _beta_num(self):
        return self.anti_uniformizer.num

    @cached_property
    def away_unit(self) -> FieldElement:
        """eps with v_P(eps) = 0 and v_Q(eps) >= 1 at every other prime Q above p."""
        acc = [1]
        for g, e in self._factors:
            if tuple(g) != self.g:
                for _ in range(e):
                    acc = P.gf_mul(acc, g, self.p)
        return self.field.from_int_poly(acc)

    @cached_property
    def uniformizer(self) -> FieldElement:
        """pi with v_P(pi) = 1 and v_Q(pi) = 0 for the other primes Q above p."""
        K = self.field
        gP = K.from_int_poly(self.g)
        if self.e == 1:
            pi0 = K(self.p)
        else:
            pi0 = gP if valuation(gP, self) == 1 else gP + self.p
        others = [Q for Q in K.primes_above(self.p) if Q != self]
        term = gP * gP
        for Q in others:
            if valuation(pi0, Q) == 0:
                term = term * K.from_int_poly(Q.g)
        pi = pi0 + term if others else pi0
        assert valuation(pi, self) == 1
        assert all(valuation(pi, Q) == 0 for Q in others)
        return pi

    @property
    def local_generator(self) -> FieldElement:
        return self.uniformizer

    @cached_property
    def uniformizer_inverse(self) -> FieldElement:
        return self.uniformizer.inverse()

    # -- local maps
    def valuation(self, x) -> int:
        return valuation(x, self)

    def residue(self, x: FieldElement):
        """Image of x (v_P(x) >= 0) in the residue field F_p[t]/(g)."""
        p = self.p
        F = self.residue_field
        y, k = x, 0
        if y.den % p:
            return _reduce_p_integral(y, F)
        if len(self._factors) == 1:
            raise ValueError("element is not P-integral")
        bound = _vp(y.den, p) * max(e for _, e in self._factors) + 1
        eps = self.away_unit
        while y.den % p == 0:
            if k > bound:
                raise ValueError("element is not P-integral")
            y = y * eps
            k += 1
        r = _reduce_p_integral(y, F)
        return F.div(r, F.pow(_reduce_p_integral(eps, F), k))

    def lift(self, r) -> FieldElement:
        return self.field.from_int_poly(list(r))

    def divides(self, x) -> bool:
        return valuation(x, self) > 0

    def local_digits(self, x: FieldElement, n: int) -> tuple:
        """Canonical pi-adic digits of x modulo P^n (requires v_P(x) >= 0)."""
        out = []
        for _ in range(n):
            d = self.residue(x)
            out.append(d)
            x = (x - self.lift(d)) * self.uniformizer_inverse
        return tuple(out)


def _reduce_p_integral(y: FieldElement, F: FiniteField):
    p = F.p
    dinv = pow(y.den, -1, p)
    return F.from_poly([c * dinv % p for c in y.num])


def factor_rational_prime(K: NumberField, p: int) -> list[tuple[PrimeIdeal, int, int]]:
    """Primes of K above p as (P, e, f); raises NotPMaximal if Dedekind's criterion fails."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if p not in K._primes:
        poly = list(K.defining_poly)
        if not dedekind_p_maximal(poly, p):
            raise NotPMaximal(p)
        facs = P.factor_mod(poly, p)
        K._primes[p] = [PrimeIdeal(K, p, g, e, facs) for g, e in facs]
    return [(Q, Q.e, Q.f) for Q in K._primes[p]]


def valuation(x, Pr: PrimeIdeal):
    """v_P(x); INFINITY for x = 0."""
    if not isinstance(x, FieldElement):
        x = Pr.field(x)
    if x.is_zero():
        return INFINITY
    p = Pr.p
    if x.field.degree == 1:
        return _vp(x.num[0], p) - (_vp(x.den, p) if x.den % p == 0 else 0)
    v = -Pr.e * _vp(x.den, p) if x.den % p == 0 else 0
    num = list(x.num)
    while all(c % p == 0 for c in num):
        num = [c // p for c in num]
        v += Pr.e
    K = x.field
    beta = Pr._beta_num
    n = K.degree
    while True:
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(num):
            if a:
                for j, b in enumerate(beta):
                    if b:
                        prod[i + j] += a * b
        m = K._reduce_int(prod)
        if any(c % p for c in m):
            return v
        num = [c // p for c in m]
        v += 1


# ---------------------------------------------------------------- local squares


@dataclass(frozen=True)
class LocalSquare:
    is_square: bool
    witness: Optional[FieldElement] = None
    precision: Optional[int] = None  # witness^2 = x mod P^precision
    reason: str = ""

    def __bool__(self):
        return self.is_square


def is_local_square(x: FieldElement, Pr: PrimeIdeal) -> LocalSquare:
    """Decide whether x is a square in the completion K_P."""
    if x.is_zero():
        raise ZeroInput("is_local_square of zero")
    v = valuation(x, Pr)
    if v % 2:
        return LocalSquare(False, reason=f"odd valuation {v}")
    F = Pr.residue_field
    pi_half = Pr.uniformizer ** (v // 2)
    u = x * Pr.uniformizer_inverse ** v
    if Pr.p != 2:
        r = F.sqrt(Pr.residue(u))
        if r is None:
            return LocalSquare(False, reason="unit part is a non-square in the residue field")
        return LocalSquare(True, pi_half * Pr.lift(r), v + 1)
    e = Pr.e
    ok, y = _unit_square_mod_2e1(u, Pr)
    if not ok:
        return LocalSquare(False, reason=y)
    return LocalSquare(True, pi_half * y, v + 2 * e + 1)


def _unit_square_mod_2e1(u: FieldElement, Pr: PrimeIdeal):
    """Residue characteristic 2: is the unit u a square modulo P^(2e+1)?  Returns (True, root) or (False, why)."""
    F = Pr.residue_field
    e = Pr.e
    pi, pinv = Pr.uniformizer, Pr.uniformizer_inverse
    y = Pr.lift(F.sqrt(Pr.residue(u)))
    w = u / (y * y)
    while True:
        d = w - 1
        k = valuation(d, Pr)
        if k >= 2 * e + 1:
            return True, y
        if k < 2 * e:
            if k % 2:
                return False, f"unit part is 1 + (odd-valuation {k} term) below the 2e threshold"
            c = d * pinv ** k
            s = Pr.lift(F.sqrt(Pr.residue(c)))
            z = 1 + pi ** (k // 2) * s
        else:
            zbar = Pr.residue(d / 4)
            t = next((a for a in F.elements() if F.add(F.mul(a, a), a) == zbar), None)
            if t is None:
                return False, "Artin-Schreier equation t^2 + t = z has no residue solution"
            z = 1 + 2 * Pr.lift(t)
        y = y * z
        w = w / (z * z)


# ---------------------------------------------------------------- global square roots


@dataclass(frozen=True)
class NotFound:
    reason: str  # "proved-non-square" | "no-root-within-bound"
    detail: str = ""

    def __bool__(self):
        return False


def _polymulmod(a, b, f, m):
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % m
        if c:
            for i in range(n + 1):
                prod[k - n + i] -= c * f[i]
    return [c % m for c in prod[:n]]


def _ratrecon(a: int, m: int, bound: int):
    """a = r/s mod m with |r|, |s| <= bound, or None."""
    a %= m
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


DEFAULT_HEIGHT_BOUND = 10**6


def root_height_bound(x: FieldElement) -> int:
    """Height bound that any square root of x must satisfy, from the complex embeddings.

    The root of the integral element x*den^2 has coordinates in
    (1/index) Z, index^2 | disc(f), bounded through the inverse Vandermonde
    matrix.  Generous factor 2 against floating-point error.
    """
    import numpy as np

    K = x.field
    n = K.degree
    disc = abs(K.poly_discriminant) if n > 1 else 1
    if n == 1:
        return 2 * (math.isqrt(abs(x.num[0] * x.den)) + 1) * x.den
    roots = np.roots([float(c) for c in reversed(K.defining_poly)])
    V = np.vander(roots, n, increasing=True)
    X = np.array([float(c) * x.den for c in x.num])
    emb = np.sqrt(np.abs(V @ X)).max()
    cb = np.abs(np.linalg.inv(V)).sum(axis=1).max() * emb
    return 2 * (int(cb) + 2) * disc * x.den


def sqrt_in_field(x: FieldElement, height_bound: int = DEFAULT_HEIGHT_BOUND):
    """A square root of x in K, or NotFound with a reason tag.

    Lifts square roots modulo an unramified prime q (chosen with few
    factors of f mod q) to q^k, recombines by CRT over all sign choices
    and reconstructs rational coordinates of height <= height_bound.
    """
    if x.is_zero():
        return x
    K = x.field
    for Pr in _primes_above_2_if_maximal(K):
        if not is_local_square(x, Pr):
            return NotFound("proved-non-square", f"not a square at {Pr}")
    if K.degree == 1:
        r = x.to_rational()
        if r < 0:
            return NotFound("proved-non-square", "negative rational")
        a, b = math.isqrt(r.numerator), math.isqrt(r.denominator)
        if a * a == r.numerator and b * b == r.denominator:
            return K(Fraction(a, b))
        return NotFound("proved-non-square", "rational non-square")
    # work with the integral element n*den, whose root is den*sqrt(x)
    X = list(x.num)
    X = list(K._reduce_int([c * x.den for c in X]))
    f = list(K.defining_poly)
    disc = K.poly_discriminant
    normX = norm_and_trace(K(X))[0]
    best = None
    for q in sympy.primerange(3, 2000):
        if disc % q == 0 or normX.numerator % q == 0:
            continue
        facs = P.factor_mod(f, q)
        if any(k > 1 for _, k in facs):
            continue
        if best is None or len(facs) < len(best[1]):
            best = (q, facs)
        if len(facs) <= 2:
            break
    q, facs = best
    local_roots = []
    for g, _ in facs:
        F = FiniteField(q, g)
        r = F.sqrt(F.from_poly(X))
        if r is None:
            return NotFound("proved-non-square", f"non-square modulo a prime above {q}")
        local_roots.append((g, list(r)))
    target = 2 * height_bound * height_bound + 1
    k = 1
    while q ** k <= target:
        k *= 2
    mod = q ** k
    n = K.degree
    for signs in range(2 ** (len(local_roots) - 1)):
        # CRT in F_q[x]
        Y, M = [0], [1]
        for idx, (g, r) in enumerate(local_roots):
            if idx > 0 and (signs >> (idx - 1)) & 1:
                r = [-c % q for c in r]
            # Y' = Y + M * ((r - Y) * M^{-1} mod g)
            s, _, _ = P.gf_gcdex(M, g, q)
            diff = P.reduce_mod(P.poly_sub(r, Y), q)
            corr = P.gf_divmod(P.gf_mul(diff, s, q), g, q)[1]
            Y = P.reduce_mod(P.poly_add(Y, P.gf_mul(M, corr, q)), q)
            M = P.gf_mul(M, g, q)
        Y = (Y + [0] * n)[:n]
        # Newton lift y <- y - (y^2 - X)/(2y)
        inv2y, _, _ = P.gf_gcdex(P.reduce_mod([2 * c for c in Y], q), f, q)
        inv2y = (inv2y + [0] * n)[:n]
        prec = 1
        while prec < k:
            prec = min(2 * prec, k)
            m = q ** prec
            two_y = [2 * c % m for c in Y]
            for _ in range(2):  # refresh inverse of 2y to precision m
                t = _polymulmod(two_y, inv2y, f, m)
                t = [(-c) % m for c in t]
                t[0] = (t[0] + 2) % m
                inv2y = _polymulmod(inv2y, t, f, m)
            err = [(a - b) % m for a, b in zip(_polymulmod(Y, Y, f, m), (X + [0] * n)[:n])]
            Y = [(a - b) % m for a, b in zip(Y, _polymulmod(err, inv2y, f, m))]
        coords = [_ratrecon(c, mod, height_bound) for c in Y]
        if any(c is None for c in coords):
            continue
        y = K(coords) / x.den
        if y * y == x:
            return y
    return NotFound("no-root-within-bound", f"height bound {height_bound}")


def _primes_above_2_if_maximal(K):
    try:
        return K.primes_above(2)
    except NotPMaximal:
        return []


# ---------------------------------------------------------------- polynomials over K


def kpoly_trim(h):
    h = list(h)
    while len(h) > 1 and h[-1].is_zero():
        h.pop()
    return h


def kpoly_divmod(a, b):
    a = kpoly_trim(a)
    b = kpoly_trim(b)
    db = len(b) - 1
    lead_inv = b[-1].inverse()
    K = b[0].field
    q = [K.zero] * max(1, len(a) - db)
    r = a[:]
    while len(r) - 1 >= db and not (len(r) == 1 and r[0].is_zero()):
        c = r[-1] * lead_inv
        shift = len(r) - 1 - db
        q[shift] = c
        for i in range(db + 1):
            r[shift + i] = r[shift + i] - c * b[i]
        r = kpoly_trim(r[:-1]) if len(r) > 1 else [K.zero]
        if len(r) - 1 < db:
            break
    return kpoly_trim(q), kpoly_trim(r)


def kpoly_gcd(a, b):
    a, b = kpoly_trim(a), kpoly_trim(b)
    while not (len(b) == 1 and b[0].is_zero()):
        a, b = b, kpoly_divmod(a, b)[1]
    inv = a[-1].inverse()
    return [c * inv for c in a]


def roots_in_field(h: Sequence[FieldElement]) -> list[FieldElement]:
    """Distinct roots in K of a polynomial over K (constant term first), via Trager's norm method."""
    h = kpoly_trim(h)
    K = h[0].field
    if len(h) == 1:
        return []
    if K.degree == 1:
        x = sympy.Symbol("x")
        poly = sympy.Poly([c.to_rational() for c in reversed(h)], x, domain="QQ")
        return sorted({K(Fraction(int(r.p), int(r.q))) for r in poly.ground_roots()}, key=lambda e: e.coords())
    y, X = sympy.symbols("y X")
    fpoly = sympy.Poly(list(reversed(K.defining_poly)), y)
    theta = K.gen
    for shift in range(0, 20):
        # g(X) = h(X - shift*theta); roots of g are roots of h plus shift*theta
        g = _kpoly_shift(h, -shift * theta)
        expr = sum(sympy.Rational(c.numerator, c.denominator) * y**i * X**j
                   for j, cj in enumerate(g) for i, c in enumerate(cj.coords()))
        N = sympy.Poly(sympy.resultant(fpoly.as_expr(), expr, y), X)
        if sympy.degree(sympy.gcd(N, N.diff(X)), X) > 0:
            continue
        roots = set()
        for fac, _ in sympy.factor_list(N)[1]:
            if fac.degree() != K.degree:
                continue
            fk = [K(Fraction(str(c))) for c in reversed(fac.all_coeffs())]
            d = kpoly_gcd(g, fk)
            if len(d) == 2:
                roots.add(-d[0] / d[1] - shift * theta)
        return sorted(roots, key=lambda e: e.coords())
    raise NumberFieldError("could not find a squarefree norm shift")


def _kpoly_shift(h, c):
    """h(X + c)."""
    K = h[0].field
    out = [K.zero]
    for coeff in reversed(h):
        # out = out*(X + c) + coeff
        new = [K.zero] * (len(out) + 1)
        for i, a in enumerate(out):
            new[i + 1] = new[i + 1] + a
            new[i] = new[i] + a * c
        new[0] = new[0] + coeff
        out = new
    return kpoly_trim(out)
