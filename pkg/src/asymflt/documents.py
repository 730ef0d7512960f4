"""JSON documents for fields, elements, curves, witnesses and reports.

Every number is exact: integers stay integers and other rationals are
written as "num/den" strings.  Documents contain only lists, dicts,
strings, ints, bools and None, so json.loads(json.dumps(doc)) == doc.
"""
from __future__ import annotations

import json
from dataclasses import asdict
from fractions import Fraction

from .curves import WeierstrassModel
from .numberfield import FieldElement, NumberField, PrimeIdeal, factor_rational_prime, make_field


class DocumentError(ValueError):
    pass


def rational_to_doc(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_doc(x) -> Fraction:
    if isinstance(x, bool):
        raise DocumentError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError as exc:
            raise DocumentError(f"bad rational {x!r}") from exc
    raise DocumentError(f"expected an integer or 'num/den' string, got {x!r}")


def element_to_doc(x: FieldElement) -> list:
    return [rational_to_doc(c) for c in x.coords()]


def element_from_doc(K: NumberField, doc) -> FieldElement:
    """A coefficient list in the power basis, or a bare rational."""
    if isinstance(doc, list):
        if len(doc) > K.degree:
            raise DocumentError(f"{len(doc)} coordinates for a degree {K.degree} field")
        return FieldElement.from_fractions(K, [rational_from_doc(c) for c in doc] + [Fraction(0)] * (K.degree - len(doc)))
    return K(rational_from_doc(doc))


def field_to_doc(K: NumberField) -> dict:
    doc = {"defining_poly": list(K.defining_poly)}
    if K.name:
        doc["name"] = K.name
    return doc


def field_from_doc(doc) -> NumberField:
    try:
        poly = [int(c) for c in doc["defining_poly"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError("field document needs an integer 'defining_poly' list") from exc
    return make_field(poly, name=doc.get("name"))


def curve_to_doc(E: WeierstrassModel) -> dict:
    return {"field": field_to_doc(E.field), "a": [element_to_doc(a) for a in E.ainvs]}


def curve_from_doc(doc, K: NumberField = None) -> WeierstrassModel:
    K = K or field_from_doc(doc["field"])
    a = doc["a"]
    if len(a) not in (2, 5):
        raise DocumentError("curve document needs 5 (or 2, short form) coefficients")
    coeffs = [element_from_doc(K, x) for x in a]
    return WeierstrassModel.from_coefficients(K, coeffs)


def prime_to_doc(P: PrimeIdeal) -> dict:
    return {"p": P.p, "g": list(P.g), "e": P.e, "f": P.f, "label": str(P)}


def prime_from_doc(K: NumberField, doc) -> PrimeIdeal:
    for Q, _, _ in factor_rational_prime(K, doc["p"]):
        if list(Q.g) == list(doc["g"]):
            return Q
    raise DocumentError(f"no prime above {doc['p']} with generator {doc['g']}")


def witness_to_doc(w) -> dict:
    K = w.a.field
    return {"field": field_to_doc(K), "a": element_to_doc(w.a), "b": element_to_doc(w.b),
            "c": element_to_doc(w.c), "p": w.p}


def witness_inputs_from_doc(doc, K: NumberField = None):
    K = K or field_from_doc(doc["field"])
    return K, element_from_doc(K, doc["a"]), element_from_doc(K, doc["b"]), element_from_doc(K, doc["c"]), int(doc["p"])


def reduction_to_doc(rd) -> dict:
    return {
        "prime": prime_to_doc(rd.prime),
        "kodaira": rd.kodaira,
        "f_exponent": rd.f_exponent,
        "vDelta_min": rd.vDelta_min,
        "multiplicative_split": rd.multiplicative_split,
        "tamagawa": rd.tamagawa,
        "local_model": [element_to_doc(a) for a in rd.local_model.ainvs],
    }


def _value(x):
    if isinstance(x, FieldElement):
        return element_to_doc(x)
    if isinstance(x, PrimeIdeal):
        return prime_to_doc(x)
    if isinstance(x, Fraction):
        return rational_to_doc(x)
    if isinstance(x, (list, tuple)):
        return [_value(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _value(v) for k, v in x.items()}
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


def certificate_to_doc(cert) -> dict:
    return {
        "prime": prime_to_doc(cert.prime),
        "sorted_triple": _value(cert.sorted_triple),
        "permutation": list(cert.permutation),
        "permutation_parity": cert.permutation_parity,
        "lam": element_to_doc(cert.lam),
        "t": cert.t,
        "e2": cert.e2,
        "v_j": cert.v_j,
        "hensel_squares": [{"expression": h.expression, "value": element_to_doc(h.value), "is_square": h.is_square}
                           for h in cert.hensel_squares],
        "split_at_P": cert.split_at_P,
        "offP_reduction": [{"prime": prime_to_doc(e.prime), "kodaira": e.kodaira, "f_exponent": e.f_exponent,
                            "classification": e.classification, "v_j": _value(e.v_j)} for e in cert.offP_reduction],
        "steps": [{"step": name, "passed": ok, "detail": detail} for name, ok, detail in cert.steps],
        "verdict": cert.verdict,
        "reason": cert.reason,
        "conductor_crosscheck": None if cert.conductor_crosscheck is None else
        [[prime_to_doc(P), f] for P, f in cert.conductor_crosscheck],
    }


def search_report_to_doc(rep) -> dict:
    return {
        "box": rep.box,
        "target": [[P, f] for P, f in rep.target],
        "totals": {
            "enumerated": rep.enumerated,
            "filtered": rep.filtered,
            "prefiltered": rep.prefiltered,
            "classified": rep.classified,
            "unresolved": len(rep.unresolved),
        },
        "unresolved": _value(rep.unresolved),
        "hits": _value(rep.hits),
        "wall_clock_ms": int(rep.wall_clock_s * 1000),
        "jobs": rep.jobs,
    }


def audit_items_to_doc(items) -> list:
    return [asdict(i) for i in items]


def to_value(x):
    return _value(x)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
