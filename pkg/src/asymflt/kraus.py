"""Normalizing a zero-sum triple to Y^2 = X(X+1)(X+lam) and certifying conductor P.

Every check of the argument is recorded on a :class:`TwistCertificate`
in the order the argument makes it.  Hypothesis failures are verdicts,
not exceptions: over fields where curves of conductor P cannot exist the
interesting output is *where* a candidate dies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .curves import WeierstrassModel, invariants
from .intfactor import DEFAULT_BUDGET_MS, factor_integer
from .localred import conductor, potential_type_via_j, tate_reduce
from .numberfield import FieldElement, PrimeIdeal, factor_rational_prime, is_local_square, valuation


class NotZeroSum(ValueError):
    pass


class TrivialTriple(ValueError):
    pass


class SingularParameter(ValueError):
    pass


HENSEL_FACTORS = ("lam^2 - lam + 1", "1 - lam/2", "1 - 2*lam", "1 + lam")


@dataclass
class HenselCheck:
    expression: str
    value: FieldElement
    is_square: bool
    witness: Optional[FieldElement]


@dataclass
class OffPrimeEntry:
    prime: PrimeIdeal
    kodaira: str
    f_exponent: int
    classification: str  # good | multiplicative | additive
    v_j: object


@dataclass
class TwistCertificate:
    prime: PrimeIdeal
    sorted_triple: tuple
    permutation: tuple
    permutation_parity: str
    lam: FieldElement
    t: Optional[int] = None
    e2: Optional[int] = None
    v_j: Optional[int] = None
    hensel_squares: list = field(default_factory=list)
    split_at_P: Optional[bool] = None
    offP_reduction: list = field(default_factory=list)
    steps: list = field(default_factory=list)  # (name, passed, detail) in proof order
    verdict: str = "failed"
    reason: str = ""
    conductor_crosscheck: Optional[list] = None
    source_j: Optional[FieldElement] = None
    twisted_j: Optional[FieldElement] = None

    def failed_step(self) -> Optional[str]:
        return next((name for name, ok, _ in self.steps if not ok), None)


def _parity(perm) -> str:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return "even" if inversions % 2 == 0 else "odd"


def sort_triple(a, b, c, Pr: PrimeIdeal):
    """Permute so that ord(b) >= ord(c) >= ord(a); ties keep input order.

    Returns ((a', b', c'), perm, parity) where (a', b', c') = (orig[perm[0]], orig[perm[1]], orig[perm[2]]).
    """
    K = Pr.field
    a, b, c = K(a), K(b), K(c)
    if not (a + b + c).is_zero():
        raise NotZeroSum("a + b + c != 0")
    if a.is_zero() or b.is_zero() or c.is_zero():
        raise TrivialTriple("abc = 0")
    orig = (a, b, c)
    vals = [valuation(x, Pr) for x in orig]
    asc = sorted(range(3), key=lambda i: vals[i])  # stable
    perm = (asc[0], asc[2], asc[1])  # smallest -> a, middle -> c, largest -> b
    return tuple(orig[i] for i in perm), perm, _parity(perm)


def twisted_model(lam) -> WeierstrassModel:
    """Y^2 = X(X + 1)(X + lam)."""
    K = lam.field
    if lam.is_zero() or lam == K.one:
        raise SingularParameter(f"lam = {lam} gives a singular curve")
    return WeierstrassModel(K.zero, 1 + lam, K.zero, lam, K.zero)


def source_model(a, b) -> WeierstrassModel:
    """Y^2 = X(X - a)(X + b)."""
    K = a.field
    return WeierstrassModel(K.zero, b - a, K.zero, -(a * b), K.zero)


def hensel_expressions(lam):
    return [lam * lam - lam + 1, 1 - lam / 2, 1 - 2 * lam, 1 + lam]


def _classify(rd) -> str:
    return "good" if rd.f_exponent == 0 else "multiplicative" if rd.f_exponent == 1 else "additive"


def certify_conductor_P(E: WeierstrassModel, Pr: PrimeIdeal, cert: Optional[TwistCertificate] = None,
                        budget_ms: int = DEFAULT_BUDGET_MS) -> TwistCertificate:
    """Check, in proof order, that the model built from lam has conductor exactly Pr."""
    K = E.field
    lam = E.a4
    if cert is None:
        cert = TwistCertificate(Pr, (), (0, 1, 2), "even", lam)
    inv = invariants(E)
    cert.twisted_j = inv.j
    e2 = valuation(K(2), Pr)
    cert.e2 = e2
    t = valuation(lam, Pr)
    cert.t = t
    vj = valuation(inv.j, Pr) if not inv.j.is_zero() else None
    cert.v_j = vj

    def step(name, ok, detail=""):
        cert.steps.append((name, bool(ok), detail))
        return ok

    if not step("v(lam) = t > 0", t > 0, f"t = {t}"):
        return _finish(cert, "failed", "v(lam) = t > 0")
    # with t > 0, v(1 - lam) = 0 and v(j) = 8 e2 - 2t exactly
    assert vj == 8 * e2 - 2 * t
    if not step("t > 4*e2 (v(j) < 0)", t > 4 * e2, f"t = {t}, 4*e2 = {4 * e2}, v(j) = {vj}"):
        return _finish(cert, "failed", "t > 4*e2 (v(j) < 0)")
    all_sq = True
    for name, value in zip(HENSEL_FACTORS, hensel_expressions(lam)):
        ls = is_local_square(value, Pr)
        cert.hensel_squares.append(HenselCheck(name, value, ls.is_square, ls.witness))
        all_sq &= ls.is_square
    if not step("Hensel factors are P-adic squares", all_sq,
                ", ".join(f"{h.expression}: {h.is_square}" for h in cert.hensel_squares)):
        return _finish(cert, "failed", "Hensel factors are P-adic squares")
    gamma = -inv.c4 / inv.c6
    cert.split_at_P = is_local_square(gamma, Pr).is_square
    if not step("-c4/c6 is a P-adic square (split multiplicative at P)", cert.split_at_P):
        return _finish(cert, "failed", "-c4/c6 is a P-adic square (split multiplicative at P)")

    bad = []
    for p in _off_primes(inv.disc, Pr, budget_ms):
        for Q, _, _ in factor_rational_prime(K, p):
            if Q == Pr or valuation(inv.disc, Q) <= 0:
                continue
            rd = tate_reduce(E, Q)
            vjq = valuation(inv.j, Q) if not inv.j.is_zero() else None
            entry = OffPrimeEntry(Q, rd.kodaira, rd.f_exponent, _classify(rd), vjq)
            cert.offP_reduction.append(entry)
            if rd.f_exponent:
                bad.append(entry)
    if not step("good reduction away from P", not bad,
                "; ".join(f"{b.prime}: {b.classification} {b.kodaira}" for b in bad)):
        return _finish(cert, "local-only", "bad reduction away from P at " +
                       ", ".join(f"prime above {b.prime.p}" for b in bad))
    cert.conductor_crosscheck = conductor(E, budget_ms)
    assert cert.conductor_crosscheck == [(Pr, 1)], "full verdict but conductor disagrees"
    return _finish(cert, "full", "conductor is P")


def _off_primes(disc, Pr, budget_ms):
    n = disc.norm()
    ps = set(factor_integer(n.numerator, budget_ms)) | set(factor_integer(n.denominator, budget_ms))
    return sorted(ps)


def _finish(cert, verdict, reason):
    cert.verdict = verdict
    cert.reason = reason
    return cert


def normalize(a, b, c, Pr: PrimeIdeal, budget_ms: int = DEFAULT_BUDGET_MS) -> TwistCertificate:
    """sort_triple -> lam = -b/a -> twisted_model -> certify_conductor_P, with hypothesis checks first."""
    (sa, sb, sc), perm, parity = sort_triple(a, b, c, Pr)
    lam = -sb / sa
    cert = TwistCertificate(Pr, (sa, sb, sc), perm, parity, lam)
    src = source_model(sa, sb)
    cert.source_j = invariants(src).j
    violations = []
    if potential_type_via_j(src, Pr) != "potentially_multiplicative":
        violations.append("potentially multiplicative at P")
    off = []
    disc = invariants(src).disc
    for p in _off_primes(disc, Pr, budget_ms):
        for Q, _, _ in factor_rational_prime(Pr.field, p):
            if Q != Pr and potential_type_via_j(src, Q) != "potentially_good":
                off.append(Q)
    if off:
        violations.append("potentially good away from P (fails at primes above "
                          + ", ".join(str(Q.p) for Q in off) + ")")
    try:
        E = twisted_model(lam)
    except SingularParameter:
        return _finish(cert, "failed", "singular parameter")
    certify_conductor_P(E, Pr, cert, budget_ms)
    assert cert.twisted_j == cert.source_j
    if violations:
        return _finish(cert, "failed", "hypothesis violated: " + "; ".join(violations))
    return cert
