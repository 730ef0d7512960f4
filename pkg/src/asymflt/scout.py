"""Bounded searches for curves Y^2 = X(X^2 + AX + B) of a prescribed conductor,
and the trace congruence a_q = 1 + Nq mod l^n at good primes.
"""
from __future__ import annotations

import itertools
import math
import multiprocessing
import os
import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np
import sympy

from .curves import WeierstrassModel, change_coordinates, count_points_at, invariants
from .intfactor import DEFAULT_BUDGET_MS, FactorizationTimeout, factor_integer
from .localred import conductor, tate_reduce
from .numberfield import (
    DEFAULT_HEIGHT_BOUND,
    INFINITY,
    NotFound,
    NotPMaximal,
    NumberField,
    PrimeIdeal,
    dedekind_p_maximal,
    factor_rational_prime,
    root_height_bound,
    sqrt_in_field,
    valuation,
)

TORSION_FILTERS = ("any-2-torsion", "full-2-torsion")


class NoGoodPrimesInRange(ValueError):
    pass


@dataclass(frozen=True)
class SearchBox:
    field: NumberField
    height: int
    torsion_filter: str = "any-2-torsion"

    def __post_init__(self):
        if self.height < 0:
            raise ValueError("height must be non-negative")
        if self.torsion_filter not in TORSION_FILTERS:
            raise ValueError(f"torsion filter must be one of {TORSION_FILTERS}")

    @property
    def size(self) -> int:
        return (2 * self.height + 1) ** (2 * self.field.degree)

    def describe(self) -> dict:
        return {
            "field": self.field.to_document(),
            "height": self.height,
            "torsion_filter": self.torsion_filter,
            "models_in_box": self.size,
        }


def box_model(K: NumberField, A: Sequence[int], B: Sequence[int]) -> WeierstrassModel:
    """Y^2 = X(X^2 + A X + B) from integer power-basis coordinates."""
    zero = K.zero
    return WeierstrassModel(zero, K(list(A)), zero, K(list(B)), zero)


def _is_square_in(K, x) -> bool:
    if K.degree == 1:
        r = x.to_rational()
        if r < 0:
            return False
        return math.isqrt(r.numerator) ** 2 == r.numerator and math.isqrt(r.denominator) ** 2 == r.denominator
    return not isinstance(sqrt_in_field(x, max(DEFAULT_HEIGHT_BOUND, root_height_bound(x))), NotFound)


def _box_pairs_generic(box: SearchBox):
    K, H, d = box.field, box.height, box.field.degree
    rng = range(-H, H + 1)
    for coords in itertools.product(rng, repeat=2 * d):
        A, B = coords[:d], coords[d:]
        if not any(B):
            continue
        a, b = K(list(A)), K(list(B))
        disc = a * a - 4 * b
        if disc.is_zero():
            continue
        if box.torsion_filter == "full-2-torsion" and not _is_square_in(K, disc):
            continue
        yield A, B


def enumerate_curves(box: SearchBox) -> Iterator[WeierstrassModel]:
    """Nonsingular box models with B != 0 in lexicographic coordinate order."""
    for A, B in _box_pairs_generic(box):
        yield box_model(box.field, A, B)


# ---- fast path for the full-2-torsion filter -----------------------------

def _monogenic(K: NumberField) -> bool:
    d = abs(K.poly_discriminant)
    return all(dedekind_p_maximal(list(K.defining_poly), p)
               for p, e in factor_integer(d).items() if e >= 2)


def _split_root_pairs(box: SearchBox) -> Optional[list]:
    """Full-2-torsion box pairs via X^2 + AX + B = (X - r)(X - s), r, s in Z[theta].

    Needs K totally real and Z[theta] maximal so that r, s have integer
    coordinates bounded through the real embeddings.  Returns None when
    those conditions fail.
    """
    K, H, d = box.field, box.height, box.field.degree
    if K.count_real_embeddings() != d or not _monogenic(K):
        return None
    if d == 1:
        conj = np.array([[1.0]])
    else:
        roots = np.sort(np.roots(list(reversed([float(c) for c in K.defining_poly]))).real)
        conj = np.vander(roots, d, increasing=True)  # conj[i, j] = sigma_i(theta^j)
    emb = H * np.abs(conj).sum(axis=1).max()
    R = emb / 2 + math.sqrt(emb * emb / 4 + emb) + 1e-6
    inv = np.linalg.inv(conj)
    cbound = np.floor(np.abs(inv).sum(axis=1) * R + 1e-6).astype(int)
    grid = np.array(list(itertools.product(*(range(-c, c + 1) for c in cbound))), dtype=np.int64)
    grid = grid[(np.abs(grid.astype(float) @ conj.T) <= R + 1e-6).all(axis=1)]
    grid = grid[np.any(grid != 0, axis=1)]
    # structure constants: theta^i * theta^j in the power basis
    mult = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            mult[i, j] = K.from_int_poly([0] * (i + j) + [1]).num
    out = []
    n = len(grid)
    for i in range(n - 1):
        r, S = grid[i], grid[i + 1:]
        A = -(r + S)
        keep = (np.abs(A) <= H).all(axis=1)
        if not keep.any():
            continue
        S, A = S[keep], A[keep]
        B = np.einsum("i,kj,ijl->kl", r, S, mult)
        keep = (np.abs(B) <= H).all(axis=1)
        for a, b in zip(A[keep], B[keep]):
            out.append((tuple(int(x) for x in a), tuple(int(x) for x in b)))
    out.sort()
    return out


def box_pairs(box: SearchBox) -> list:
    """All (A, B) coordinate pairs surviving the box filters, sorted."""
    if box.torsion_filter == "full-2-torsion":
        fast = _split_root_pairs(box)
        if fast is not None:
            return fast
    return list(_box_pairs_generic(box))


# ---- target handling -----------------------------------------------------

def normalize_target(target) -> list:
    """A PrimeIdeal, or [(PrimeIdeal, exponent), ...], as a sorted exponent list."""
    if isinstance(target, PrimeIdeal):
        return [(target, 1)]
    out = sorted(((P, int(f)) for P, f in target), key=lambda pf: pf[0].sort_key())
    if any(f <= 0 for _, f in out):
        raise ValueError("target exponents must be positive")
    return out


def _twelfth_power_away(n: int, support: set) -> bool:
    n = abs(n)
    for p in support:
        while n % p == 0:
            n //= p
    return sympy.integer_nthroot(n, 12)[1]


def prefilter(E: WeierstrassModel, target: list) -> bool:
    """Necessary conditions for conductor == target, from valuations alone.

    Good reduction at Q forces v_Q(disc) = 0 mod 12 for any integral model,
    so the part of Norm(disc) prime to the target's residue characteristics
    is a 12th power.  Exponent-1 target primes need v(j) < 0.
    """
    inv = invariants(E)
    support = {P.p for P, _ in target}
    nrm = inv.disc.norm()
    if nrm.denominator != 1 or not _twelfth_power_away(nrm.numerator, support):
        return False
    for P, f in target:
        if f == 1 and (inv.j.is_zero() or valuation(inv.j, P) >= 0):
            return False
    return True


# ---- independent local classification ------------------------------------

def _residue_reps(P: PrimeIdeal, m: int):
    digits = [P.lift(r) for r in P.residue_field.elements()]
    pi = P.uniformizer
    powers = [pi ** i for i in range(m)]
    for combo in itertools.product(digits, repeat=m):
        yield sum((c * pw for c, pw in zip(combo, powers)), P.field.zero)


SEARCH_CAP = 1 << 14


def independent_classification(E: WeierstrassModel, Q: PrimeIdeal) -> str:
    """'good', 'multiplicative', 'additive' or 'undetermined' for an integral model.

    Residue characteristic >= 5 uses the (c4, c6, disc) minimality test.
    Characteristics 2 and 3 search coordinate changes directly.
    """
    for a in E.ainvs:
        if not a.is_zero() and valuation(a, Q) < 0:
            raise ValueError("model is not integral at the prime")
    inv = invariants(E)

    def v(x):
        return INFINITY if x.is_zero() else valuation(x, Q)

    vc4, vc6, vD = v(inv.c4), v(inv.c6), v(inv.disc)
    if vD == 0:
        return "good"
    if Q.p >= 5:
        k = min(vD // 12, vc4 // 4 if vc4 is not INFINITY else vD, vc6 // 6 if vc6 is not INFINITY else vD)
    else:
        k = None
        for kk in range(vD // 12, -1, -1):
            if kk == 0:
                k = 0
                break
            if Q.norm ** (6 * kk) > SEARCH_CAP:
                return "undetermined"
            if _integral_model_exists(E, Q, kk):
                k = kk
                break
    if vD - 12 * k == 0:
        return "good"
    if vc4 is not INFINITY and vc4 - 4 * k == 0:
        return "multiplicative"
    return "additive"


def _integral_model_exists(E, Q, k) -> bool:
    u = Q.uniformizer ** k
    for r in _residue_reps(Q, 2 * k):
        for s in _residue_reps(Q, k):
            for t in _residue_reps(Q, 3 * k):
                C = change_coordinates(E, u, r, s, t)
                if all(a.is_zero() or valuation(a, Q) >= 0 for a in C.ainvs):
                    return True
    return False


def verify_hit(E: WeierstrassModel, target: list, budget_ms: int = DEFAULT_BUDGET_MS) -> dict:
    """Second pass over every prime dividing disc, without Tate's algorithm."""
    want = {P: f for P, f in target}
    nrm = invariants(E).disc.norm()
    checks = []
    ok = True
    for p in sorted(factor_integer(nrm.numerator, budget_ms)):
        for Q, _, _ in factor_rational_prime(E.field, p):
            cls = independent_classification(E, Q)
            f = want.get(Q, 0)
            expected = "good" if f == 0 else "multiplicative" if f == 1 else "additive"
            agree = cls == expected
            ok &= agree
            checks.append({"prime": str(Q), "expected": expected, "found": cls, "agree": agree})
    for P in want:
        if all(c["prime"] != str(P) for c in checks):
            ok = False
            checks.append({"prime": str(P), "expected": "bad", "found": "good", "agree": False})
    return {"verified": ok, "checks": checks}


# ---- the search ----------------------------------------------------------

@dataclass
class SearchReport:
    box: dict
    target: list  # [(str(P), f)]
    enumerated: int
    filtered: int
    prefiltered: int
    classified: int
    unresolved: list
    hits: list
    wall_clock_s: float
    jobs: int

    @property
    def hit_count(self) -> int:
        return len(self.hits)

    def summary(self) -> str:
        return (f"{self.hit_count} hits, {len(self.unresolved)} unresolved "
                f"({self.filtered} models after filters, {self.prefiltered} past valuation prefilter, "
                f"{self.classified} conductors computed, {self.wall_clock_s:.1f}s on {self.jobs} jobs)")


def _process_slice(args):
    K, pairs, target, budget_ms = args
    prefiltered = classified = 0
    hits, unresolved = [], []
    for A, B in pairs:
        E = box_model(K, A, B)
        if not prefilter(E, target):
            continue
        prefiltered += 1
        try:
            cond = conductor(E, budget_ms)
        except FactorizationTimeout as exc:
            unresolved.append({"A": list(A), "B": list(B), "cofactor": str(exc.cofactor)})
            continue
        classified += 1
        if cond == target:
            hits.append((A, B))
    return prefiltered, classified, hits, unresolved


def _default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def search_conductor_target(box: SearchBox, target, jobs: Optional[int] = None,
                            budget_ms: int = DEFAULT_BUDGET_MS) -> SearchReport:
    """Every box model whose conductor is exactly the target.  Hits are re-verified."""
    start = time.monotonic()
    tgt = normalize_target(target)
    jobs = jobs or _default_jobs()
    pairs = box_pairs(box)
    nslices = max(1, min(len(pairs), 4 * jobs))
    step = -(-len(pairs) // nslices) if pairs else 1
    slices = [(box.field, pairs[i:i + step], tgt, budget_ms) for i in range(0, len(pairs), step)]
    if jobs > 1 and len(slices) > 1:
        with multiprocessing.get_context("spawn").Pool(jobs) as pool:
            results = pool.map(_process_slice, slices)
    else:
        results = [_process_slice(s) for s in slices]
    prefiltered = sum(r[0] for r in results)
    classified = sum(r[1] for r in results)
    unresolved = [u for r in results for u in r[3]]
    hits = []
    for r in results:
        for A, B in r[2]:
            E = box_model(box.field, A, B)
            hits.append({
                "A": list(A), "B": list(B),
                "conductor": [(str(P), f) for P, f in conductor(E, budget_ms)],
                "second_pass": verify_hit(E, tgt, budget_ms),
            })
    return SearchReport(
        box=box.describe(),
        target=[(str(P), f) for P, f in tgt],
        enumerated=box.size,
        filtered=len(pairs),
        prefiltered=prefiltered,
        classified=classified,
        unresolved=unresolved,
        hits=hits,
        wall_clock_s=time.monotonic() - start,
        jobs=jobs,
    )


# ---- trace congruences ---------------------------------------------------

def _vl(n: int, l: int) -> int:
    k = 0
    while n % l == 0:
        n //= l
        k += 1
    return k


def trace_congruence_scan(E: WeierstrassModel, l: int, q_bound: int):
    """({q: n}, min n) where n is the largest with a_q = 1 + Nq mod l^n, over good q with Nq <= q_bound."""
    K = E.field
    disc = invariants(E).disc
    per_prime = {}
    for p in sympy.primerange(2, q_bound + 1):
        try:
            primes = factor_rational_prime(K, p)
        except NotPMaximal:
            continue
        for Q, _, f in primes:
            if p ** f > q_bound:
                continue
            model = E
            if any(not a.is_zero() and valuation(a, Q) < 0 for a in E.ainvs) or valuation(disc, Q) != 0:
                rd = tate_reduce(E, Q)
                if rd.f_exponent:
                    continue
                model = rd.local_model
            N, a = count_points_at(model, Q)
            per_prime[Q] = _vl(a - 1 - Q.norm, l)
    if not per_prime:
        raise NoGoodPrimesInRange(f"no good primes of norm <= {q_bound}")
    return per_prime, min(per_prime.values())


def hasse_contradiction_level(Nq: int, l: int) -> int:
    """Smallest n with no integer a, |a| <= 2 sqrt(Nq), a = 1 + Nq mod l^n."""
    if Nq < 2:
        raise ValueError("Nq must be at least 2")
    bound = math.isqrt(4 * Nq)
    target = 1 + Nq
    n, m = 1, l
    while True:
        a0 = -bound + (target + bound) % m
        if a0 > bound:
            return n
        n += 1
        m *= l
