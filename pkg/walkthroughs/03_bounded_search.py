"""Searching a coefficient box for curves of a given conductor.

Run with:  python3 walkthroughs/03_bounded_search.py
"""
# %% Positive control: conductor 24 over Q is reachable
from asymflt import SearchBox, WeierstrassModel, builtin_field, search_conductor_target, trace_congruence_scan
from asymflt.scout import hasse_contradiction_level

Q = builtin_field("Q")
P2, P3 = Q.primes_above(2)[0], Q.primes_above(3)[0]
rep = search_conductor_target(SearchBox(Q, 3, "full-2-torsion"), [(P2, 3), (P3, 1)], jobs=1)
print(rep.summary())
for h in rep.hits:
    print("  hit:", h["A"], h["B"], "verified by second classifier:", h["second_pass"]["verified"])

# %% Conductor 2 over Q: nothing in a small box
rep = search_conductor_target(SearchBox(Q, 40), [(P2, 1)], jobs=1)
print(rep.summary())

# %% Same question over Q(sqrt2), full 2-torsion only
K = builtin_field("Qsqrt2")
rep = search_conductor_target(SearchBox(K, 6, "full-2-torsion"), [(K.primes_above(2)[0], 1)], jobs=1)
print(rep.summary())

# %% The trace congruence on a curve of conductor 11
E = WeierstrassModel.from_coefficients(Q, [0, -1, 1, -10, -20])
per, n = trace_congruence_scan(E, 5, 200)
print(f"a_q = 1 + q mod 5^{n} at all {len(per)} good q up to 200")

# %% How deep a congruence the Hasse interval can tolerate
for N in (2, 3, 4, 9, 25, 101):
    print(f"  N = {N:3}: level {hasse_contradiction_level(N, 2)} for l = 2, {hasse_contradiction_level(N, 3)} for l = 3")
