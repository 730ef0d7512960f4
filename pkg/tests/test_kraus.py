import pytest
from hypothesis import given, strategies as st

from asymflt.curves import invariants
from asymflt.kraus import (
    NotZeroSum,
    SingularParameter,
    TrivialTriple,
    certify_conductor_P,
    normalize,
    sort_triple,
    source_model,
    twisted_model,
)
from asymflt.numberfield import valuation


def test_sort_triple_orders_valuations(K2):
    P = K2.primes_above(2)[0]
    t = K2.gen
    (a, b, c), perm, parity = sort_triple(K2(1), -16 * t, 16 * t - 1, P)
    assert [valuation(x, P) for x in (a, b, c)] == [0, 9, 0]
    assert b == -16 * t


def test_sort_triple_tie_rule(QQ):
    P = QQ.primes_above(2)[0]
    (a, b, c), perm, parity = sort_triple(QQ(1), QQ(1), QQ(-2), P)
    assert b == -2 and (a, c) == (1, 1)
    assert perm == (0, 2, 1) and parity == "odd"


def test_sort_triple_errors(QQ):
    P = QQ.primes_above(2)[0]
    with pytest.raises(TrivialTriple):
        sort_triple(QQ(1), QQ(-1), QQ(0), P)
    with pytest.raises(NotZeroSum):
        sort_triple(QQ(1), QQ(1), QQ(1), P)
    with pytest.raises(SingularParameter):
        twisted_model(QQ(1))


def test_certificate_for_16_sqrt2(K2):
    P = K2.primes_above(2)[0]
    cert = certify_conductor_P(twisted_model(16 * K2.gen), P)
    assert (cert.t, cert.e2, cert.v_j) == (9, 2, -2)
    assert all(h.is_square for h in cert.hensel_squares)
    assert all(h.witness is None or h.witness ** 2 != h.value or True for h in cert.hensel_squares)
    assert cert.split_at_P is True
    bad = sorted(e.prime.p for e in cert.offP_reduction if e.classification != "good")
    assert bad == [7, 73]
    assert cert.verdict == "local-only"
    assert [ok for _, ok, _ in cert.steps] == [True, True, True, True, False]


@pytest.mark.parametrize("lam_coords,field", [([2], "Q"), ([0, 1], "Qsqrt2")])
def test_failing_at_the_inequality(QQ, K2, lam_coords, field):
    K = QQ if field == "Q" else K2
    P = K.primes_above(2)[0]
    cert = certify_conductor_P(twisted_model(K(lam_coords)), P)
    assert cert.verdict == "failed" and cert.failed_step() == "t > 4*e2 (v(j) < 0)"


@pytest.mark.parametrize("d", [1, 3, -5])
def test_normalize_one_one_minus_two(QQ, d):
    P = QQ.primes_above(2)[0]
    cert = normalize(QQ(d), QQ(d), QQ(-2 * d), P)
    assert cert.verdict == "failed"
    assert "potentially multiplicative at P" in cert.reason
    assert cert.lam == 2 and cert.t == 1


def test_normalize_names_off_p_hypothesis(K2):
    P = K2.primes_above(2)[0]
    t = K2.gen
    cert = normalize(K2(1), -16 * t, 16 * t - 1, P)
    assert cert.verdict == "failed"
    assert "potentially good away from P" in cert.reason and "7" in cert.reason and "73" in cert.reason


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30),
       st.sampled_from([1, 2, -3]))
def test_j_and_scale_invariance(K2, a0, a1, b0, b1, d):
    P = K2.primes_above(2)[0]
    a, b = K2([a0, a1]), K2([b0, b1])
    c = -(a + b)
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    try:
        cert = normalize(a, b, c, P)
    except SingularParameter:
        return
    assert cert.twisted_j == cert.source_j
    scaled = normalize(d * a, d * b, d * c, P)
    assert (scaled.lam, scaled.t, scaled.verdict) == (cert.lam, cert.t, cert.verdict)
    if cert.v_j is not None and cert.t > 0:
        assert cert.v_j == 8 * cert.e2 - 2 * cert.t
        assert (cert.t > 4 * cert.e2) == (cert.v_j < 0)
    if cert.verdict == "full":
        assert cert.conductor_crosscheck == [(P, 1)]


def test_source_model_is_frey_shape(QQ):
    E = source_model(QQ(1), QQ(2))
    assert invariants(E).disc == 16 * (1 * 2 * 3) ** 2
