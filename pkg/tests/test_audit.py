import pytest

from asymflt.audit import (
    BadIndex,
    ClassDataRecord,
    MissingWitness,
    UnknownField,
    build_cyclotomic,
    build_real_cyclotomic,
    builtin_field,
    check_theorem1_hypotheses,
    check_theorem2_hypotheses,
    cyclotomic_tower_check,
    registry_lookup,
    registry_rows,
    theorem3_scorecard,
)
from asymflt.numberfield import make_field
from asymflt.quadform import narrow_class_number_real_quadratic


def status(items):
    return [i.status for i in items]


def test_real_cyclotomic_polynomials():
    assert build_real_cyclotomic(2).defining_poly == (0, 1)
    assert build_real_cyclotomic(3).defining_poly == (-2, 0, 1)
    assert build_real_cyclotomic(4).defining_poly == (2, 0, -4, 0, 1)
    with pytest.raises(BadIndex):
        build_real_cyclotomic(1)


def test_registry_polynomials_match_constructions():
    rows = {r["name"]: tuple(r["defining_poly"]) for r in registry_rows()}
    assert rows["Zeta16plus"] == build_real_cyclotomic(4).defining_poly
    assert rows["Zeta32plus"] == build_real_cyclotomic(5).defining_poly
    assert rows["Zeta16"] == build_cyclotomic(4).defining_poly
    assert rows["Zeta32"] == build_cyclotomic(5).defining_poly


@pytest.mark.parametrize("r", [3, 4, 5])
def test_cyclotomic_tower(r):
    chk = cyclotomic_tower_check(r)
    assert chk["eisenstein_at_2"] and chk["totally_ramified"]
    assert chk["sturm_real_roots"] == chk["degree"] == 2 ** (r - 2)


def test_registry_lookups(K2):
    z = registry_lookup("Zeta32")
    assert (z.parity_only, z.source) == ("odd", "paper-fact")
    assert registry_lookup(K2) == ClassDataRecord(h=1, h_plus=1, source="computed-quadform")
    with pytest.raises(UnknownField):
        registry_lookup(make_field([-2, 0, 0, 0, 0, 1]))
    with pytest.raises(UnknownField):
        registry_lookup("NoSuchField")


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 34, 79])
def test_registry_matches_cycle_count(m):
    D = m if m % 4 == 1 else 4 * m
    assert registry_lookup(make_field([-m, 0, 1])).h_plus == narrow_class_number_real_quadratic(D)


def test_record_invariants():
    with pytest.raises(ValueError):
        ClassDataRecord(h=2, h_plus=3, source="computed-quadform")
    with pytest.raises(ValueError):
        ClassDataRecord(h=1, source="hearsay")


def test_theorem1(QQ, K2):
    assert status(check_theorem1_hypotheses(QQ, 2)) == ["pass"] * 3
    assert status(check_theorem1_hypotheses(K2, 2)) == ["pass"] * 3
    assert status(check_theorem1_hypotheses(make_field([-3, 0, 1]), 2)) == ["pass", "pass", "fail"]
    with pytest.raises(MissingWitness):
        check_theorem1_hypotheses(QQ, 3)


def test_theorem1_odd_l_with_witness():
    # Q(sqrt -3) contains zeta_3 = (-1 + sqrt -3)/2, i.e. a root of x^2 + x + 1
    K = make_field([1, 1, 1])
    items = check_theorem1_hypotheses(K, 3, K.gen, ClassDataRecord(h=1, h_plus=1, source="asserted-literature"))
    assert status(items) == ["pass", "pass", "pass"]
    bad = check_theorem1_hypotheses(K, 3, K(1), ClassDataRecord(h=1, h_plus=1, source="asserted-literature"))
    assert bad[0].status == "fail"


def test_theorem2(K2, Z16p):
    assert status(check_theorem2_hypotheses(K2)) == ["pass", "pass", "pass"]
    assert status(check_theorem2_hypotheses(make_field([-3, 0, 1]))) == ["pass", "pass", "fail"]
    t = check_theorem2_hypotheses(Z16p)
    assert status(t) == ["pass", "pass", "unknown"]
    assert t[2].source == "paper-fact"


def test_real_subfield_narrow_parity_never_asserted():
    for name in ("Zeta16plus", "Zeta32plus"):
        rec = registry_lookup(name)
        assert rec.h_plus is None and rec.h_plus_is_odd() is None
        assert check_theorem1_hypotheses(builtin_field(name), 2)[2].status == "unknown"


@pytest.mark.parametrize("r", [3, 4, 5])
def test_theorem3_detour(r):
    card = theorem3_scorecard(r)
    assert card["asymptotic"] and card["effective"]
    assert [i["status"] for i in card["detour_theorem1_items"]] == ["pass"] * 3
    assert card["detour_theorem1_items"][1]["detail"].endswith(f"[({2 ** (r - 1)}, 1)]")
