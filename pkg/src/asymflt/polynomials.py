"""Dense polynomial helpers over Z, Q and F_p.

Polynomials are lists of coefficients with the constant term first.
Arithmetic mod p is delegated to :mod:`sympy.polys.galoistools`, which
wants the leading coefficient first; the ``_gf``/``_ungf`` pair converts.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gt


def trim(f: Sequence) -> list:
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    f = trim(f)
    if len(f) == 1 and f[0] == 0:
        return -1
    return len(f) - 1


def poly_add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def poly_sub(f, g):
    return poly_add(f, [-c for c in g])


def poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return trim(out)


def poly_compose(f, g):
    """f(g(x)) by Horner."""
    out = [0]
    for c in reversed(f):
        out = poly_add(poly_mul(out, g), [c])
    return out


def poly_eval(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def derivative(f):
    return trim([i * f[i] for i in range(1, len(f))]) if len(f) > 1 else [0]


def poly_divmod_q(f, g):
    """Division with remainder over Q (Fractions)."""
    f = [Fraction(c) for c in trim(f)]
    g = [Fraction(c) for c in trim(g)]
    dg = degree(g)
    if dg < 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(f) - dg)
    r = f[:]
    while degree(r) >= dg:
        dr = degree(r)
        c = r[dr] / g[dg]
        q[dr - dg] = c
        for i in range(dg + 1):
            r[dr - dg + i] -= c * g[i]
        r = trim(r)
    return trim(q), trim(r)


# ---------------------------------------------------------------- mod p


def _gf(f, p):
    return gt.gf_from_int_poly([int(c) for c in reversed(trim(f))], p)


def _ungf(f):
    return trim([int(c) for c in reversed(f)]) if f else [0]


def reduce_mod(f, p):
    return _ungf(_gf(f, p))


def factor_mod(f, p):
    """Monic irreducible factors of f mod p with multiplicities, sorted."""
    _, facs = gt.gf_factor(_gf(f, p), p, ZZ)
    out = [(_ungf(g), int(k)) for g, k in facs]
    out.sort(key=lambda t: (len(t[0]), list(reversed(t[0]))))
    return out


def is_irreducible_mod(f, p) -> bool:
    g = _gf(f, p)
    if len(g) - 1 != degree(f):
        return False
    return bool(gt.gf_irreducible_p(g, p, ZZ))


def gf_divmod(f, g, p):
    q, r = gt.gf_div(_gf(f, p), _gf(g, p), p, ZZ)
    return _ungf(q), _ungf(r)


def gf_gcd(f, g, p):
    return _ungf(gt.gf_gcd(_gf(f, p), _gf(g, p), p, ZZ))


def gf_gcdex(f, g, p):
    s, t, h = gt.gf_gcdex(_gf(f, p), _gf(g, p), p, ZZ)
    return _ungf(s), _ungf(t), _ungf(h)


def gf_mul(f, g, p):
    return _ungf(gt.gf_mul(_gf(f, p), _gf(g, p), p, ZZ))


def gf_pow_mod(f, n, g, p):
    return _ungf(gt.gf_pow_mod(_gf(f, p), n, _gf(g, p), p, ZZ))


def is_squarefree_mod(f, p) -> bool:
    return bool(gt.gf_sqf_p(_gf(f, p), p, ZZ))


# ---------------------------------------------------------------- certificates


def eisenstein_prime(f: Sequence[int], p: int) -> bool:
    f = trim(f)
    if f[-1] % p == 0:
        return False
    if any(c % p for c in f[:-1]):
        return False
    return f[0] % (p * p) != 0


# ---------------------------------------------------------------- Sturm


def sturm_chain(f):
    chain = [[Fraction(c) for c in trim(f)], [Fraction(c) for c in derivative(f)]]
    while degree(chain[-1]) > 0:
        _, r = poly_divmod_q(chain[-2], chain[-1])
        if degree(r) < 0:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(f) -> int:
    """Number of distinct real roots, by sign changes of the Sturm chain at -oo and +oo."""
    chain = sturm_chain(f)
    at_pos = [g[-1] for g in chain]
    at_neg = [g[-1] * (-1) ** degree(g) for g in chain]
    return _sign_changes(at_neg) - _sign_changes(at_pos)
