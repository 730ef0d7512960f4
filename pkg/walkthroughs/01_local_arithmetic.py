"""Local arithmetic in Q(sqrt2): primes, valuations, local squares, class numbers.

Run with:  python3 walkthroughs/01_local_arithmetic.py
"""
# %% The field and its primes
from asymflt import builtin_field, factor_rational_prime, is_local_square, valuation
from asymflt.numberfield import FieldElement
from asymflt.quadform import class_number_real_quadratic, form_cycles, narrow_class_number_real_quadratic

K = builtin_field("Qsqrt2")
theta = K.gen
print("defining polynomial (low degree first):", K.defining_poly)
for p in (2, 3, 7):
    print(f"  {p} =", " * ".join(f"{P}^{e}" for P, e, _ in factor_rational_prime(K, p)))

# %% Valuations at the ramified prime
P = K.primes_above(2)[0]
for x in (K(2), theta, 16 * theta, 1 + theta):
    print(f"  v_P({x}) = {valuation(x, P)}")

# %% Squares in the 2-adic completion
# 2-adic squareness is decided modulo P^(2e+1); e = 2 here.
for coords in ([1, 0], [-1, 0], [3, 2], [17, 0], [1, 4], [5, 0]):
    x = FieldElement.from_fractions(K, coords)
    ls = is_local_square(x, P)
    print(f"  {str(x):>12}: {'square' if ls else 'not a square'}  {ls.reason}")

# %% Wide and narrow class numbers from cycles of reduced forms
for D in (5, 8, 12, 13, 40, 60):
    cycles = form_cycles(D)
    print(f"  D = {D:3}: {len(cycles)} cycles, h+ = {narrow_class_number_real_quadratic(D)}, "
          f"h = {class_number_real_quadratic(D)}")
