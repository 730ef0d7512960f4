"""Fermat solutions and the Frey curve attached to them."""
from __future__ import annotations

from dataclasses import dataclass

import sympy

from .curves import WeierstrassModel, invariants, two_torsion_structure
from .intfactor import DEFAULT_BUDGET_MS, factor_integer
from .localred import potential_type_via_j
from .numberfield import FieldElement, NumberField, PrimeIdeal, factor_rational_prime, valuation


class NotASolution(ValueError):
    pass


class NonIntegralInput(ValueError):
    pass


class BadExponent(ValueError):
    pass


class TrivialWitness(ValueError):
    pass


@dataclass(frozen=True)
class FermatWitness:
    a: FieldElement
    b: FieldElement
    c: FieldElement
    p: int
    trivial: bool


def check_solution(a, b, c, p: int, K: NumberField = None) -> FermatWitness:
    if K is None:
        K = next(x.field for x in (a, b, c) if isinstance(x, FieldElement))
    a, b, c = K(a), K(b), K(c)
    if p < 3 or not sympy.isprime(p):
        raise BadExponent(f"exponent {p} is not an odd prime")
    for x in (a, b, c):
        if not x.is_integral():
            raise NonIntegralInput(f"{x} is not an algebraic integer")
    total = a ** p + b ** p + c ** p
    if not total.is_zero():
        raise NotASolution(f"a^p + b^p + c^p = {total}")
    return FermatWitness(a, b, c, p, a.is_zero() or b.is_zero() or c.is_zero())


def frey_curve(w: FermatWitness) -> WeierstrassModel:
    """Y^2 = X(X - a^p)(X + b^p)."""
    if w.trivial:
        raise TrivialWitness("abc = 0")
    A, B = w.a ** w.p, w.b ** w.p
    K = A.field
    return WeierstrassModel(K.zero, B - A, K.zero, -(A * B), K.zero)


@dataclass
class PropertyReport:
    full_two_torsion: bool
    torsion: str
    good_away: bool
    away_failures: list  # (prime, v_P(j))
    multiplicative_at_P: bool
    v_j_at_P: object

    def passed(self) -> dict:
        return {"(i)": self.full_two_torsion, "(ii)": self.good_away, "(iii)": self.multiplicative_at_P}


def property_check(E: WeierstrassModel, Pr: PrimeIdeal, budget_ms: int = DEFAULT_BUDGET_MS) -> PropertyReport:
    """(i) full 2-torsion, (ii) potentially good away from Pr, (iii) potentially multiplicative at Pr."""
    inv = invariants(E)
    torsion = two_torsion_structure(E)
    nrm = inv.disc.norm()
    rational_primes = set(factor_integer(nrm.numerator, budget_ms)) | set(factor_integer(nrm.denominator, budget_ms))
    failures = []
    for q in sorted(rational_primes):
        for Q, _, _ in factor_rational_prime(E.field, q):
            if Q == Pr or valuation(inv.disc, Q) == 0:
                continue
            if potential_type_via_j(E, Q) != "potentially_good":
                failures.append((Q, valuation(inv.j, Q)))
    vjP = valuation(inv.j, Pr) if not inv.j.is_zero() else None
    return PropertyReport(
        full_two_torsion=torsion == "full",
        torsion=torsion,
        good_away=not failures,
        away_failures=failures,
        multiplicative_at_P=potential_type_via_j(E, Pr) == "potentially_multiplicative",
        v_j_at_P=vjP,
    )
