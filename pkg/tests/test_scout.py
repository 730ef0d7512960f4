import math

import pytest
from hypothesis import given, strategies as st

from asymflt.curves import WeierstrassModel
from asymflt.localred import conductor
from asymflt.scout import (
    NoGoodPrimesInRange,
    SearchBox,
    _box_pairs_generic,
    box_model,
    box_pairs,
    enumerate_curves,
    hasse_contradiction_level,
    prefilter,
    search_conductor_target,
    trace_congruence_scan,
)

E11 = [0, -1, 1, -10, -20]


def test_enumeration_examples(QQ):
    assert len(list(enumerate_curves(SearchBox(QQ, 1)))) == 6
    assert list(enumerate_curves(SearchBox(QQ, 0))) == []
    full = [(m.a2, m.a4) for m in enumerate_curves(SearchBox(QQ, 3, "full-2-torsion"))]
    assert (2, -3) in full


def test_enumeration_is_lexicographic(K2):
    pairs = list(_box_pairs_generic(SearchBox(K2, 1)))
    assert pairs == sorted(pairs)
    for A, B in pairs:
        E = box_model(K2, A, B)
        assert any(B) and not E.is_singular()


@pytest.mark.parametrize("H", [1, 2, 3])
def test_fast_full_filter_matches_generic(QQ, K2, H):
    for K in (QQ, K2):
        box = SearchBox(K, H, "full-2-torsion")
        assert box_pairs(box) == list(_box_pairs_generic(box))
    box = SearchBox(QQ, 12, "full-2-torsion")
    assert box_pairs(box) == list(_box_pairs_generic(box))


@given(st.integers(-25, 25), st.integers(-25, 25), st.integers(-25, 25), st.integers(-25, 25))
def test_prefilter_never_rejects_the_true_conductor(K2, a0, a1, b0, b1):
    E = box_model(K2, (a0, a1), (b0, b1))
    if not any((b0, b1)) or E.is_singular():
        return
    cond = conductor(E)
    assert prefilter(E, cond)


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_prefilter_never_rejects_the_true_conductor_over_q(QQ, A, B):
    E = box_model(QQ, (A,), (B,))
    if B == 0 or E.is_singular():
        return
    assert prefilter(E, conductor(E))


def test_positive_control_conductor_24(QQ):
    P2, P3 = QQ.primes_above(2)[0], QQ.primes_above(3)[0]
    rep = search_conductor_target(SearchBox(QQ, 3, "full-2-torsion"), [(P2, 3), (P3, 1)], jobs=1)
    assert [(h["A"], h["B"]) for h in rep.hits] == [([2], [-3])]
    assert rep.hits[0]["second_pass"]["verified"]
    assert rep.unresolved == []


def test_search_agrees_with_brute_force_conductors(QQ):
    # brute force: every box model at height 12 whose conductor is 20
    box = SearchBox(QQ, 12)
    P2, P5 = QQ.primes_above(2)[0], QQ.primes_above(5)[0]
    expected = [(E.a2.coords(), E.a4.coords()) for E in enumerate_curves(box)
                if [(P.p, f) for P, f in conductor(E)] == [(2, 2), (5, 1)]]
    rep = search_conductor_target(box, [(P2, 2), (P5, 1)], jobs=1)
    assert len(rep.hits) == len(expected) == 3
    assert all(h["second_pass"]["verified"] for h in rep.hits)


def test_worker_count_does_not_change_output(QQ):
    P2, P3 = QQ.primes_above(2)[0], QQ.primes_above(3)[0]
    box = SearchBox(QQ, 12)
    one = search_conductor_target(box, [(P2, 5), (P3, 1)], jobs=1)
    two = search_conductor_target(box, [(P2, 5), (P3, 1)], jobs=2)
    assert one.hits
    assert one.hits == two.hits
    assert (one.filtered, one.prefiltered, one.classified) == (two.filtered, two.prefiltered, two.classified)


def test_trace_congruence_for_11a(QQ):
    E = WeierstrassModel.from_coefficients(QQ, E11)
    per, n = trace_congruence_scan(E, 5, 500)
    assert n >= 1
    assert 11 not in {Q.p for Q in per}
    small = {Q.p: v for Q, v in per.items() if Q.p <= 100}
    assert min(small.values()) == 1
    prev = math.inf
    for bound in (20, 60, 200, 500):
        cur = trace_congruence_scan(E, 5, bound)[1]
        assert cur <= prev
        prev = cur


def test_no_good_primes(QQ):
    E = WeierstrassModel.from_coefficients(QQ, [0, 0, 0, -1, 0])  # conductor 32
    with pytest.raises(NoGoodPrimesInRange):
        trace_congruence_scan(E, 3, 2)


def _level_oracle(N, l):
    B = math.isqrt(4 * N)
    best = max(v for v in (_v(1 + N - a, l) for a in range(-B, B + 1)))
    return best + 1


def _v(n, l):
    k = 0
    while n % l == 0:
        n //= l
        k += 1
    return k


def test_hasse_level_examples():
    assert hasse_contradiction_level(9, 2) == 5
    assert hasse_contradiction_level(2, 2) == 3
    assert hasse_contradiction_level(4, 3) == 3


@given(st.integers(2, 10 ** 4), st.sampled_from([2, 3, 5, 7]))
def test_hasse_level_matches_enumeration(N, l):
    n = hasse_contradiction_level(N, l)
    assert n == _level_oracle(N, l)
    assert n <= math.ceil(math.log((1 + math.sqrt(N)) ** 2 + 1e-9, l)) + 1
