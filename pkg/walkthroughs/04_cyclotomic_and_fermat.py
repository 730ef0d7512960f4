"""Real 2-power cyclotomic fields and a Fermat cube over Q(sqrt2).

Run with:  python3 walkthroughs/04_cyclotomic_and_fermat.py
"""
# %% The tower of real subfields
from asymflt import builtin_field, check_solution, frey_curve, property_check
from asymflt.audit import cyclotomic_tower_check, theorem3_scorecard
from asymflt.kraus import normalize
from asymflt.numberfield import FieldElement

for r in range(2, 7):
    chk = cyclotomic_tower_check(r)
    print(f"  r = {r}: degree {chk['degree']:2}, Eisenstein {chk['eisenstein_at_2']}, "
          f"real roots {chk['sturm_real_roots']:2}, (e, f) above 2 {chk['primes_above_2']}")

# %% Hypotheses for the degree-4 real field, directly and through the full cyclotomic field
card = theorem3_scorecard(4)
for item in card["theorem2_items"] + card["detour_theorem1_items"]:
    print(f"  {item['label']:32} {item['status']:8} [{item['source']}]")
print("effective:", card["effective"])

# %% A cubic solution in Q(sqrt2)
K = builtin_field("Qsqrt2")
a = FieldElement.from_fractions(K, [18, 17])
b = FieldElement.from_fractions(K, [18, -17])
w = check_solution(a, b, K(-42), 3, K)
E = frey_curve(w)
P = K.primes_above(2)[0]
print("Frey model:", E)
print("properties:", property_check(E, P).passed())

# %% Exponent 3 is far too small: the normalization stops early
A, B = a ** 3, b ** 3
cert = normalize(A, B, -(A + B), P)
print(cert.verdict, "at", repr(cert.failed_step()), f"(t = {cert.t}, 4e = {4 * cert.e2})")
