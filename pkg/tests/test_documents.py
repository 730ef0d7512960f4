import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from asymflt import documents as D
from asymflt.curves import WeierstrassModel
from asymflt.frey import check_solution
from asymflt.kraus import normalize
from asymflt.localred import tate_reduce
from asymflt.numberfield import FieldElement
from asymflt.scout import SearchBox, search_conductor_target

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10 ** 6)


@given(rationals)
def test_rational_round_trip(q):
    doc = D.rational_to_doc(q)
    assert D.rational_from_doc(json.loads(json.dumps(doc))) == q


@pytest.mark.parametrize("bad", [True, 1.5, "x/y", None])
def test_bad_rationals_rejected(bad):
    with pytest.raises(D.DocumentError):
        D.rational_from_doc(bad)


@given(rationals, rationals)
def test_element_round_trip(K2, a, b):
    x = FieldElement.from_fractions(K2, [a, b])
    assert D.element_from_doc(K2, json.loads(json.dumps(D.element_to_doc(x)))) == x


def test_element_too_many_coords(K2):
    with pytest.raises(D.DocumentError):
        D.element_from_doc(K2, [1, 2, 3])


def test_field_and_curve_round_trip(Z16p):
    E = WeierstrassModel.from_coefficients(Z16p, [[0, 1], 0, 1, [-3, 0, 1], 2])
    doc = json.loads(json.dumps(D.curve_to_doc(E)))
    E2 = D.curve_from_doc(doc)
    assert E2.field.defining_poly == Z16p.defining_poly
    assert [a.coords() for a in E2.ainvs] == [a.coords() for a in E.ainvs]


def test_prime_round_trip(K2):
    for P in K2.primes_above(7):
        assert D.prime_from_doc(K2, json.loads(json.dumps(D.prime_to_doc(P)))) == P


def _is_plain(x):
    if isinstance(x, dict):
        return all(isinstance(k, str) and _is_plain(v) for k, v in x.items())
    if isinstance(x, list):
        return all(_is_plain(v) for v in x)
    return x is None or isinstance(x, (bool, int, str))


def test_reports_are_plain_json(QQ, K2):
    E = WeierstrassModel.from_coefficients(QQ, [0, -1, 1, -10, -20])
    P2 = K2.primes_above(2)[0]
    docs = [
        D.reduction_to_doc(tate_reduce(E, QQ.primes_above(11)[0])),
        D.certificate_to_doc(normalize(K2(1), K2(1), K2(-2), P2)),
        D.search_report_to_doc(search_conductor_target(SearchBox(QQ, 2), [(QQ.primes_above(2)[0], 5)], jobs=1)),
        D.witness_to_doc(check_solution(K2(1), K2(0), K2(-1), 3, K2)),
    ]
    for doc in docs:
        assert _is_plain(doc)
        assert json.loads(json.dumps(doc)) == doc


def test_witness_round_trip(K2):
    w = check_solution(K2(1), K2(0), K2(-1), 5, K2)
    K, a, b, c, p = D.witness_inputs_from_doc(json.loads(json.dumps(D.witness_to_doc(w))))
    assert (a, b, c, p) == (w.a, w.b, w.c, w.p) and K.defining_poly == K2.defining_poly


def test_fractions_survive(QQ):
    x = QQ(Fraction(-7, 3))
    assert D.element_to_doc(x) == ["-7/3"]
