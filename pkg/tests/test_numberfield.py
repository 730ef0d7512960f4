from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from asymflt.numberfield import (
    INFINITY,
    NotFound,
    NotPMaximal,
    Reducible,
    charpoly,
    factor_rational_prime,
    is_local_square,
    make_field,
    roots_in_field,
    sqrt_in_field,
    valuation,
)

from oracles import charpoly_by_resultant, norm_by_resultant, split_valuation_qsqrt2, vp

small = st.integers(-40, 40)


def elem(K, coords):
    return K(list(coords))


def test_irreducibility_certificates():
    assert make_field([-2, 0, 1]).certificate.kind == "eisenstein"
    assert make_field([2, 0, -4, 0, 1]).certificate.prime == 2
    with pytest.raises(Reducible):
        make_field([-1, 0, 1])
    assert make_field([1, 0, 1]).count_real_embeddings() == 0
    assert make_field([2, 0, -4, 0, 1]).count_real_embeddings() == 4


def test_norm_trace_examples(K2):
    t = K2.gen
    assert ((1 + t).norm(), (1 + t).trace()) == (-1, 2)
    assert (t.norm(), t.trace()) == (-2, 0)


def test_dedekind_rejects_non_maximal_order():
    K = make_field([-8, -2, -1, 1])
    with pytest.raises(NotPMaximal):
        factor_rational_prime(K, 2)


def test_prime_factorization_shapes(K2, Z16p):
    assert [(e, f) for _, e, f in factor_rational_prime(K2, 2)] == [(2, 1)]
    assert [(e, f) for _, e, f in factor_rational_prime(K2, 7)] == [(1, 1), (1, 1)]
    assert [(e, f) for _, e, f in factor_rational_prime(K2, 3)] == [(1, 2)]
    assert [(e, f) for _, e, f in factor_rational_prime(Z16p, 2)] == [(4, 1)]
    for p in (3, 5, 7, 17, 31):
        assert sum(e * f for _, e, f in factor_rational_prime(Z16p, p)) == 4


def test_valuation_examples(K2):
    P = K2.primes_above(2)[0]
    assert valuation(K2(2), P) == 2
    assert valuation(16 * K2.gen, P) == 9
    assert valuation(K2.zero, P) is INFINITY


@pytest.mark.parametrize("poly", [[-2, 0, 1], [2, 0, -4, 0, 1], [-5, 0, 1], [-1, -1, 1]])
@given(data=st.data())
def test_norm_and_charpoly_match_resultants(poly, data):
    K = make_field(poly)
    coords = data.draw(st.lists(small, min_size=K.degree, max_size=K.degree))
    den = data.draw(st.integers(1, 12))
    x = K([Fraction(c, den) for c in coords])
    assert x.norm() == norm_by_resultant(poly, [Fraction(c, den) for c in coords])
    assert charpoly(x) == charpoly_by_resultant(poly, [Fraction(c, den) for c in coords])


@given(a=small, b=small, c=small, d=small)
def test_arithmetic_field_axioms(K2, a, b, c, d):
    x, y = K2([a, b]), K2([c, d])
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    if not y.is_zero():
        assert (x / y) * y == x
        assert y * y.inverse() == K2.one


@given(a=small, b=small)
def test_valuation_total_ramification_matches_norm(K2, Z16p, a, b):
    x = K2([a, b])
    if x.is_zero():
        return
    assert valuation(x, K2.primes_above(2)[0]) == vp(x.norm(), 2)
    z = Z16p([a, b, a - b, 3])
    assert valuation(z, Z16p.primes_above(2)[0]) == vp(z.norm(), 2)


@pytest.mark.parametrize("p", [7, 17, 23])
@given(a=small, b=small)
def test_split_prime_valuations_match_padic_embedding(K2, p, a, b):
    x = K2([a, b])
    if x.is_zero():
        return
    primes = K2.primes_above(p)
    # pair each prime with the p-adic root r of x^2 - 2 satisfying theta = r mod P
    got = sorted(valuation(x, P) for P in primes)
    want = sorted(split_valuation_qsqrt2(a, b, p, i) for i in range(2))
    assert got == want
    assert sum(got) == vp(x.norm(), p)


@given(a=small, b=small, c=st.integers(-5, 5), d=st.integers(-5, 5))
def test_valuation_is_additive(K2, a, b, c, d):
    x, y = K2([a, b]), K2([c, d])
    if x.is_zero() or y.is_zero():
        return
    for p in (2, 3, 7):
        for P in K2.primes_above(p):
            assert valuation(x * y, P) == valuation(x, P) + valuation(y, P)
            assert valuation(x / y, P) == valuation(x, P) - valuation(y, P)


def test_residue_and_lift_roundtrip(K2):
    for P in K2.primes_above(7) + K2.primes_above(3):
        F = P.residue_field
        for r in F.elements():
            assert P.residue(P.lift(r)) == r
        pi = P.uniformizer
        assert valuation(pi, P) == 1


def test_sqrt_examples(QQ, K2):
    assert sqrt_in_field(K2(2)) in (K2.gen, -K2.gen)
    res = sqrt_in_field(QQ(2))
    assert isinstance(res, NotFound) and res.reason == "proved-non-square"
    assert sqrt_in_field(QQ(49)) in (QQ(7), QQ(-7))


@given(a=small, b=small, c=small, d=small)
def test_sqrt_recovers_squares(Z16p, a, b, c, d):
    y = Z16p([a, b, c, d])
    s = sqrt_in_field(y * y)
    assert not isinstance(s, NotFound)
    assert s in (y, -y)


@given(a=small, b=small)
def test_sqrt_of_non_square_is_never_claimed(K2, a, b):
    x = K2([a, b]) * K2([1, 1])  # times the fundamental unit, norm -1
    s = sqrt_in_field(x * x * K2([1, 1]))
    if not x.is_zero():
        assert isinstance(s, NotFound)


def test_local_square_over_q(QQ):
    P = QQ.primes_above(2)[0]
    assert is_local_square(QQ(17), P).is_square
    assert not is_local_square(QQ(2), P).is_square
    assert not is_local_square(QQ(-1), P).is_square
    assert is_local_square(QQ(Fraction(9, 4)), P).is_square


@given(a=small, b=small, c=small)
def test_roots_in_field_finds_planted_roots(K2, a, b, c):
    r1, r2 = K2([a, b]), K2([c, 1])
    # (X - r1)(X - r2)(X^2 - 3): the quadratic factor has no roots in K
    quad = [-(r1 + r2), K2.one]
    quad = [r1 * r2] + quad
    h = [K2(-3) * quad[0], K2(-3) * quad[1], quad[0] - 3, quad[1], K2.one]
    roots = roots_in_field(h)
    assert sorted(map(repr, roots)) == sorted(map(repr, {r1, r2}))


def test_roots_in_field_simple(K2):
    t = K2.gen
    roots = roots_in_field([K2(-2), K2.zero, K2.one])
    assert set(roots) == {t, -t}


def test_field_pickles_without_prime_cache(K2):
    import pickle
    K2.primes_above(7)
    L = pickle.loads(pickle.dumps(K2))
    assert L == K2 and L._primes == {}
