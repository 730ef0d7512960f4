"""Following one parameter through the twist certificate.

The curve Y^2 = X(X+1)(X+lam) with lam = 16*sqrt2 passes every check at the
prime above 2, then fails away from it: lam - 1 has norm -511 = -7 * 73.

Run with:  python3 walkthroughs/02_twist_certificate.py
"""
# %%
from asymflt import builtin_field, conductor, tate_reduce, twisted_model
from asymflt.kraus import certify_conductor_P, normalize

K = builtin_field("Qsqrt2")
P = K.primes_above(2)[0]
lam = 16 * K.gen
E = twisted_model(lam)
print("model:", E)
print("Norm(lam - 1) =", (lam - 1).norm())

# %% The certificate, step by step
cert = certify_conductor_P(E, P)
for k, (name, ok, detail) in enumerate(cert.steps, 1):
    print(f"  {k}. {name:55} {'ok' if ok else 'FAILS'}   {detail}")
print("verdict:", cert.verdict, "-", cert.reason)

# %% What the local algorithm says at each bad prime
for Q, f in conductor(E):
    rd = tate_reduce(E, Q)
    print(f"  {Q}: {rd.kodaira:4} f = {f}  {rd.multiplicative_split or ''}")

# %% A triple that dies at the first step
cert = normalize(K(1), K(1), K(-2), P)
print("(1, 1, -2):", cert.verdict, "at", repr(cert.failed_step()))
