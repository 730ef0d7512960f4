"""Local reduction data and conductors via Tate's algorithm.

The algorithm works at any prime of a number field, residue
characteristic 2 and 3 included.  All divisions are by the uniformizer
of the prime, which is chosen to be a unit at the other primes above the
same rational prime, so intermediate models stay p-integral and residues
are plain coordinate reductions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .curves import WeierstrassModel, change_coordinates, invariants
from .intfactor import DEFAULT_BUDGET_MS, factor_integer
from .numberfield import INFINITY, PrimeIdeal, factor_rational_prime, is_local_square, valuation


class NotMultiplicative(ValueError):
    pass


@dataclass(frozen=True)
class ReductionData:
    prime: PrimeIdeal
    kodaira: str
    f_exponent: int
    vDelta_min: int
    multiplicative_split: str  # "split" | "nonsplit" | "n/a"
    tamagawa: int
    local_model: WeierstrassModel = field(compare=False, repr=False)
    tangent_split: Optional[bool] = field(default=None, compare=False, repr=False)

    @property
    def is_good(self) -> bool:
        return self.f_exponent == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.f_exponent == 1

    @property
    def is_additive(self) -> bool:
        return self.f_exponent >= 2

    def summary(self) -> tuple:
        return (self.kodaira, self.f_exponent, self.vDelta_min, self.multiplicative_split, self.tamagawa)


def _integral_at(E: WeierstrassModel, Pr: PrimeIdeal) -> WeierstrassModel:
    """Isomorphic model integral at every prime above p."""
    p = Pr.p
    k = 0
    for i, a in zip((1, 2, 3, 4, 6), E.ainvs):
        if not a.is_zero():
            v = valuation(a, Pr)
            if v < 0:
                k = max(k, -(v // i))
    model = change_coordinates(E, Pr.uniformizer_inverse ** k, 0, 0, 0) if k else E
    if all(a.den % p for a in model.ainvs):
        return model
    # remaining poles sit at the other primes above p; eps is a unit at Pr
    eps_inv = Pr.away_unit.inverse()
    for n in range(1, 65):
        trial = change_coordinates(model, eps_inv ** n, 0, 0, 0)
        if all(a.den % p for a in trial.ainvs):
            return trial
    raise RuntimeError("could not clear denominators at the primes above p")


def tate_reduce(E: WeierstrassModel, Pr: PrimeIdeal) -> ReductionData:
    """Kodaira symbol, conductor exponent and minimal discriminant valuation at Pr."""
    p = Pr.p
    F = Pr.residue_field
    pi = Pr.uniformizer
    pinv_pi = Pr.uniformizer_inverse

    def val(x):
        return INFINITY if x.is_zero() else valuation(x, Pr)

    def pdiv(x):
        return x.is_zero() or valuation(x, Pr) > 0

    def res(x):
        return Pr.residue(x)

    def lift(r):
        return Pr.lift(r)

    def preduce(x):
        return lift(res(x))

    def pinv(x):
        return lift(F.inv(res(x)))

    def proot(x, e):
        r = res(x)
        return lift(F.sqrt(r) if e == 2 else F.pth_root(r))

    def quadroots(a, b, c):
        a, b, c = res(a), res(b), res(c)
        if F.is_zero(a):
            return not F.is_zero(b) or F.is_zero(c)
        if p == 2:
            return bool(F.roots([c, b, a]))
        return F.is_square(F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c))))

    def cubicroots(b, c, d):
        return len(F.roots([res(d), res(c), res(b), F.one]))

    C = _integral_at(E, Pr)
    half = pinv(C.field(2)) if p != 2 else None
    c4, c6, _ = C.c4_c6_disc()
    tangent_split = None
    while True:
        a1, a2, a3, a4, a6 = C.ainvs
        b2, b4, b6, b8 = C.b_invariants()
        c4, c6, disc = C.c4_c6_disc()
        vD = val(disc)
        if vD == 0:
            kod, fp, cp = "I0", 0, 1
            break
        # move the singular point to (0, 0)
        if p == 2:
            if pdiv(b2):
                r = proot(a4, 2)
                t = proot(((r + a2) * r + a4) * r + a6, 2)
            else:
                temp = pinv(a1)
                r = temp * a3
                t = temp * (a4 + r * r)
        elif p == 3:
            r = proot(-b6, 3) if pdiv(b2) else -pinv(b2) * b4
            t = a1 * r + a3
        else:
            if pdiv(c4):
                r = -pinv(C.field(12)) * b2
            else:
                r = -pinv(12 * c4) * (c6 + b2 * c4)
            t = -half * (a1 * r + a3)
        C = change_coordinates(C, 1, preduce(r), 0, preduce(t))
        a1, a2, a3, a4, a6 = C.ainvs
        b2, b4, b6, b8 = C.b_invariants()
        assert pdiv(a3) and pdiv(a4) and pdiv(a6), "singular point not moved to the origin"

        if not pdiv(c4):
            tangent_split = quadroots(C.field.one, a1, -a2)
            cp = vD if tangent_split else (2 if vD % 2 == 0 else 1)
            kod, fp = f"I{vD}", 1
            break
        if val(a6) < 2:
            kod, fp, cp = "II", vD, 1
            break
        if val(b8) < 3:
            kod, fp, cp = "III", vD - 1, 2
            break
        if val(b6) < 3:
            cp = 3 if quadroots(C.field.one, a3 * pinv_pi, -a6 * pinv_pi ** 2) else 1
            kod, fp = "IV", vD - 2
            break

        if p == 2:
            s = proot(a2, 2)
            t = pi * proot(a6 * pinv_pi ** 2, 2)
        elif p == 3:
            s, t = a1, a3
        else:
            s, t = -a1 * half, -a3 * half
        C = change_coordinates(C, 1, 0, s, t)
        a1, a2, a3, a4, a6 = C.ainvs

        b = a2 * pinv_pi
        c = a4 * pinv_pi ** 2
        d = a6 * pinv_pi ** 3
        w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c
        x = 3 * c - b * b
        sw = (3 if pdiv(x) else 2) if pdiv(w) else 1
        if sw == 1:
            kod, fp, cp = "I0*", vD - 4, 1 + cubicroots(b, c, d)
            break
        if sw == 2:
            if p == 2:
                r = proot(c, 2)
            elif p == 3:
                r = c * pinv(b)
            else:
                r = (b * c - 9 * d) * pinv(2 * x)
            C = change_coordinates(C, 1, pi * preduce(r), 0, 0)
            ix = iy = 3
            mx = my = pi * pi
            while True:
                a1, a2, a3, a4, a6 = C.ainvs
                a2t, a3t = a2 * pinv_pi, a3 / my
                a4t, a6t = a4 / (pi * mx), a6 / (mx * my)
                if pdiv(a3t * a3t + 4 * a6t):
                    t = my * proot(a6t, 2) if p == 2 else my * preduce(-a3t * half)
                    C = change_coordinates(C, 1, 0, 0, t)
                    a1, a2, a3, a4, a6 = C.ainvs
                    my = my * pi
                    iy += 1
                    a2t, a3t = a2 * pinv_pi, a3 / my
                    a4t, a6t = a4 / (pi * mx), a6 / (mx * my)
                    if pdiv(a4t * a4t - 4 * a6t * a2t):
                        if p == 2:
                            r = mx * proot(a6t * pinv(a2t), 2)
                        else:
                            r = mx * preduce(-a4t * pinv(2 * a2t))
                        C = change_coordinates(C, 1, r, 0, 0)
                        mx = mx * pi
                        ix += 1
                    else:
                        cp = 4 if quadroots(a2t, a4t, a6t) else 2
                        break
                else:
                    cp = 4 if quadroots(C.field.one, a3t, -a6t) else 2
                    break
            kod, fp = f"I{ix + iy - 5}*", vD - ix - iy + 1
            break
        # triple root
        if p == 2:
            r = b
        elif p == 3:
            r = proot(-d, 3)
        else:
            r = -b * pinv(C.field(3))
        C = change_coordinates(C, 1, pi * preduce(r), 0, 0)
        a1, a2, a3, a4, a6 = C.ainvs
        a3t = a3 * pinv_pi ** 2
        a6t = a6 * pinv_pi ** 4
        if not pdiv(a3t * a3t + 4 * a6t):
            cp = 3 if quadroots(C.field.one, a3t, -a6t) else 1
            kod, fp = "IV*", vD - 6
            break
        t = -pi * pi * proot(a6t, 2) if p == 2 else pi * pi * preduce(-a3t * half)
        C = change_coordinates(C, 1, 0, 0, t)
        a1, a2, a3, a4, a6 = C.ainvs
        if val(a4) < 4:
            kod, fp, cp = "III*", vD - 7, 2
            break
        if val(a6) < 6:
            kod, fp, cp = "II*", vD - 8, 1
            break
        # non-minimal: divide through by pi
        C = change_coordinates(C, pi, 0, 0, 0)

    if fp == 1:
        split = "split" if _minus_c4_over_c6_is_square(C, Pr) else "nonsplit"
    else:
        split = "n/a"
        tangent_split = None
    return ReductionData(Pr, kod, fp, vD, split, cp, C, tangent_split)


def _minus_c4_over_c6_is_square(E: WeierstrassModel, Pr: PrimeIdeal) -> bool:
    c4, c6, _ = E.c4_c6_disc()
    return is_local_square(-c4 / c6, Pr).is_square


def potential_type_via_j(E: WeierstrassModel, Pr: PrimeIdeal) -> str:
    j = invariants(E).j
    if j.is_zero() or valuation(j, Pr) >= 0:
        return "potentially_good"
    return "potentially_multiplicative"


def split_multiplicative_test(E: WeierstrassModel, Pr: PrimeIdeal) -> str:
    rd = tate_reduce(E, Pr)
    if rd.f_exponent != 1:
        raise NotMultiplicative(f"reduction at {Pr} is {rd.kodaira}, not multiplicative")
    return rd.multiplicative_split


def bad_prime_candidates(E: WeierstrassModel, budget_ms: int = DEFAULT_BUDGET_MS) -> list[int]:
    """Rational primes below every prime where the model can have bad reduction."""
    disc = invariants(E).disc
    nrm = disc.norm()
    candidates = set(factor_integer(nrm.numerator, budget_ms))
    candidates |= set(factor_integer(nrm.denominator, budget_ms))
    for a in E.ainvs:
        candidates |= set(factor_integer(a.den, budget_ms))
    return sorted(candidates)


def local_data(E: WeierstrassModel, budget_ms: int = DEFAULT_BUDGET_MS) -> list[ReductionData]:
    out = []
    for p in bad_prime_candidates(E, budget_ms):
        for Pr, _, _ in factor_rational_prime(E.field, p):
            out.append(tate_reduce(E, Pr))
    out.sort(key=lambda rd: rd.prime.sort_key())
    return out


def conductor(E: WeierstrassModel, budget_ms: int = DEFAULT_BUDGET_MS) -> list[tuple[PrimeIdeal, int]]:
    """[(P, f_P)] over primes with positive conductor exponent, ordered by (p, f, generator)."""
    return [(rd.prime, rd.f_exponent) for rd in local_data(E, budget_ms) if rd.f_exponent > 0]


def conductor_norm(cond) -> int:
    n = 1
    for Pr, f in cond:
        n *= Pr.norm ** f
    return n
