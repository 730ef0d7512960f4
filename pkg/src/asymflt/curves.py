"""Weierstrass models over number fields."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .numberfield import (
    DEFAULT_HEIGHT_BOUND,
    FieldElement,
    NotFound,
    NumberField,
    PrimeIdeal,
    kpoly_divmod,
    roots_in_field,
    root_height_bound,
    sqrt_in_field,
    valuation,
)

log = logging.getLogger(__name__)


class Singular(ValueError):
    pass


class ZeroTwist(ValueError):
    pass


class BadReduction(ValueError):
    pass


class ResidueFieldTooLarge(ValueError):
    pass


MAX_RESIDUE_FIELD = 10**6


@dataclass(frozen=True)
class CurveInvariants:
    b2: FieldElement
    b4: FieldElement
    b6: FieldElement
    b8: FieldElement
    c4: FieldElement
    c6: FieldElement
    disc: FieldElement
    j: FieldElement


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    @classmethod
    def from_coefficients(cls, K: NumberField, ainvs) -> "WeierstrassModel":
        if len(ainvs) == 2:
            ainvs = [0, 0, 0, ainvs[0], ainvs[1]]
        return cls(*(K(a) for a in ainvs))

    @property
    def field(self) -> NumberField:
        return self.a1.field

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c4_c6_disc(self):
        b2, b4, b6, b8 = self.b_invariants()
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
        disc = -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return c4, c6, disc

    def discriminant(self) -> FieldElement:
        return self.c4_c6_disc()[2]

    def is_singular(self) -> bool:
        return self.discriminant().is_zero()

    def __repr__(self):
        return f"WeierstrassModel({list(self.ainvs)})"


def invariants(E: WeierstrassModel) -> CurveInvariants:
    b2, b4, b6, b8 = E.b_invariants()
    c4, c6, disc = E.c4_c6_disc()
    if disc.is_zero():
        raise Singular("discriminant is zero")
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, c4 * c4 * c4 / disc)


def change_coordinates(E: WeierstrassModel, u, r, s, t) -> WeierstrassModel:
    """Model for x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    K = E.field
    u, r, s, t = K(u), K(r), K(s), K(t)
    a1, a2, a3, a4, a6 = E.ainvs
    ui = u.inverse()
    ui2 = ui * ui
    ui3 = ui2 * ui
    return WeierstrassModel(
        (a1 + 2 * s) * ui,
        (a2 - s * a1 + 3 * r - s * s) * ui2,
        (a3 + r * a1 + 2 * t) * ui3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui2 * ui2,
        (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * ui3 * ui3,
    )


def quadratic_twist(E: WeierstrassModel, d) -> WeierstrassModel:
    """The twist by d of the completed-square model y^2 = x^3 + b2/4 x^2 + b4/2 x + b6/4."""
    K = E.field
    d = K(d)
    if d.is_zero():
        raise ZeroTwist("twist parameter must be non-zero")
    b2, b4, b6, _ = E.b_invariants()
    zero = K.zero
    return WeierstrassModel(zero, d * b2 / 4, zero, d * d * b4 / 2, d * d * d * b6 / 4)


def two_division_polynomial(E: WeierstrassModel) -> list[FieldElement]:
    """4x^3 + b2 x^2 + 2 b4 x + b6, constant term first."""
    b2, b4, b6, _ = E.b_invariants()
    return [b6, 2 * b4, b2, E.field(4)]


def two_torsion_structure(E: WeierstrassModel, height_bound: int = DEFAULT_HEIGHT_BOUND,
                          diagnostics: bool = False) -> str:
    """'trivial', 'Z/2' or 'full' from the K-rational roots of the 2-division cubic.

    With diagnostics=True an inconclusive square-root search is reported
    as 'unknown'; otherwise it counts as 'no further roots' with a warning.
    """
    if E.is_singular():
        raise Singular("discriminant is zero")
    cubic = two_division_polynomial(E)
    K = E.field
    if cubic[0].is_zero():
        root = K.zero
    else:
        roots = roots_in_field(cubic)
        if not roots:
            return "trivial"
        if len(roots) == 3:
            return "full"
        root = roots[0]
    quad, rem = kpoly_divmod(cubic, [-root, K.one])
    assert rem[0].is_zero()
    c, b, a = quad
    disc = b * b - 4 * a * c
    # the discriminant's root can be far taller than the default cap; the
    # embedding bound makes a miss impossible when a root exists
    s = sqrt_in_field(disc, max(height_bound, root_height_bound(disc)))
    if isinstance(s, NotFound):
        if s.reason == "no-root-within-bound":
            if diagnostics:
                return "unknown"
            log.warning("square-root search inconclusive for %s; treating as non-square", disc)
        return "Z/2"
    return "full"


def _residue_coeffs(E: WeierstrassModel, Pr: PrimeIdeal):
    for a in E.ainvs:
        if not a.is_zero() and valuation(a, Pr) < 0:
            raise BadReduction(f"model is not integral at {Pr}")
    return [Pr.residue(a) for a in E.ainvs]


def count_points_at(E: WeierstrassModel, Pr: PrimeIdeal) -> tuple[int, int]:
    """(N, a_P) for the reduction of an integral model with v_P(disc) = 0."""
    if Pr.norm > MAX_RESIDUE_FIELD:
        raise ResidueFieldTooLarge(f"residue field of size {Pr.norm}")
    disc = E.discriminant()
    if disc.is_zero() or valuation(disc, Pr) != 0:
        raise BadReduction(f"model does not have good reduction at {Pr}")
    F = Pr.residue_field
    a1, a2, a3, a4, a6 = _residue_coeffs(E, Pr)
    q = F.q
    count = 1
    if F.f == 1:
        p = F.p
        a1, a2, a3, a4, a6 = (c[0] for c in (a1, a2, a3, a4, a6))
        if p == 2:
            for x in range(2):
                rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2
                lin = (a1 * x + a3) % 2
                count += sum(1 for y in range(2) if (y * y + lin * y - rhs) % 2 == 0)
        else:
            chi = [0] + [-1] * (p - 1)
            for y in range(1, (p + 1) // 2):
                chi[y * y % p] = 1
            for x in range(p):
                rhs = (((x + a2) * x + a4) * x + a6) % p
                lin = (a1 * x + a3) % p
                count += 1 + chi[(lin * lin + 4 * rhs) % p]
    else:
        squares = {F.mul(y, y) for y in F.elements()}
        four = F.from_int(4)
        for x in F.elements():
            rhs = F.poly_eval([a6, a4, a2, F.one], x)
            lin = F.add(F.mul(a1, x), a3)
            if F.p == 2:
                if F.is_zero(lin):
                    count += 1
                else:
                    z = F.div(rhs, F.mul(lin, lin))
                    count += 2 if F.absolute_trace(z) == 0 else 0
            else:
                dsc = F.add(F.mul(lin, lin), F.mul(four, rhs))
                count += 1 if F.is_zero(dsc) else (2 if dsc in squares else 0)
    a = q + 1 - count
    assert a * a <= 4 * q, f"Hasse bound violated: a={a}, q={q}"
    return count, a


def hasse_bound(q: int) -> int:
    return math.isqrt(4 * q)


def model_from_roots(K: NumberField, roots) -> WeierstrassModel:
    """y^2 = (x - e1)(x - e2)(x - e3)."""
    e1, e2, e3 = (K(e) for e in roots)
    a2 = -(e1 + e2 + e3)
    a4 = e1 * e2 + e1 * e3 + e2 * e3
    a6 = -(e1 * e2 * e3)
    return WeierstrassModel(K.zero, a2, K.zero, a4, a6)

