"""Narrow class numbers of real quadratic fields from cycles of reduced forms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import sympy


class NotFundamental(ValueError):
    pass


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return sympy.ntheory.factor_.core(abs(D)) == abs(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and sympy.ntheory.factor_.core(abs(m)) == abs(m)
    return False


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        """0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, decided in integers."""
        D = self.discriminant
        b, a2 = self.b, 2 * abs(self.a)
        if not (b > 0 and b * b < D):
            return False
        # sqrt(D) - b < 2|a|  <=>  sqrt(D) < 2|a| + b
        # 2|a| < sqrt(D) + b  <=>  2|a| - b < sqrt(D)
        return D < (a2 + b) ** 2 and (a2 - b < 0 or (a2 - b) ** 2 < D)

    def __iter__(self):
        yield from (self.a, self.b, self.c)


def _reduce_b(b: int, c: int, D: int) -> int:
    """The b' = -b mod 2c in the normalization window for c."""
    m = 2 * abs(c)
    s = math.isqrt(D)
    if abs(c) > s:
        # -|c| < b' <= |c|
        bp = (-b) % m
        if bp > abs(c):
            bp -= m
        return bp
    # sqrt(D) - 2|c| < b' < sqrt(D); D is not a square so b' <= floor(sqrt D)
    bp = (-b) % m
    return bp + ((s - bp) // m) * m


def rho(form: QuadForm) -> QuadForm:
    """One step of the reduction operator (a, b, c) -> (c, b', (b'^2 - D)/4c)."""
    D = form.discriminant
    a, b, c = form
    bp = _reduce_b(b, c, D)
    return QuadForm(c, bp, (bp * bp - D) // (4 * c))


def reduce_form(form: QuadForm, max_steps: int = 1000) -> tuple[QuadForm, int]:
    steps = 0
    while not form.is_reduced():
        if steps >= max_steps:
            raise RuntimeError(f"form did not reduce within {max_steps} steps")
        form = rho(form)
        steps += 1
    return form, steps


def reduced_forms(D: int) -> list[QuadForm]:
    """All reduced forms of discriminant D, in (b, a) ascending order."""
    s = math.isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b * b - D) % 4:
            continue
        ac = (b * b - D) // 4
        for a in range(1, abs(ac) + 1):
            if ac % a:
                continue
            for sa in (a, -a):
                form = QuadForm(sa, b, ac // sa)
                if form.is_reduced():
                    out.append(form)
    return out


def form_cycles(D: int, order: str = "ascending") -> list[list[QuadForm]]:
    forms = reduced_forms(D)
    if order == "descending":
        forms = forms[::-1]
    seen: set[QuadForm] = set()
    cycles = []
    for start in forms:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        cur = rho(start)
        while cur != start:
            if cur in seen or not cur.is_reduced():
                raise AssertionError("reduction operator is not a permutation of reduced forms")
            cycle.append(cur)
            seen.add(cur)
            cur = rho(cur)
        cycles.append(cycle)
    return cycles


def narrow_class_number_real_quadratic(D: int, order: str = "ascending") -> int:
    if D <= 0 or not is_fundamental_discriminant(D):
        raise NotFundamental(f"{D} is not a positive fundamental discriminant")
    return len(form_cycles(D, order))


def class_number_real_quadratic(D: int) -> int:
    """Wide class number: cycles merged under (a, b, c) ~ (-a, b, -c)."""
    if D <= 0 or not is_fundamental_discriminant(D):
        raise NotFundamental(f"{D} is not a positive fundamental discriminant")
    cycles = form_cycles(D)
    index = {form: i for i, cyc in enumerate(cycles) for form in cyc}
    parent = list(range(len(cycles)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, cyc in enumerate(cycles):
        a, b, c = cyc[0]
        parent[find(i)] = find(index[QuadForm(-a, b, -c)])
    return len({find(i) for i in range(len(cycles))})


def field_discriminant_of_sqrt(m: int) -> int:
    """Discriminant of Q(sqrt m) for squarefree m > 1."""
    return m if m % 4 == 1 else 4 * m
