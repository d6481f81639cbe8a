"""JSON interchange: coefficient files, system export, value encoding.

All documents carry ``"schema": "ghyper/1"``.  Complex scalars are encoded
as two-element [re, im] arrays; integers are kept as JSON integers so that
exact operator coefficients survive a round trip bit for bit.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import CoefficientFileError, DomainError
from .monomials import MonomialBasis, enumerate_monomials
from .operators import GkzSystem, LinearDifferentialOperator, OperatorTerm

SCHEMA = "ghyper/1"


def encode_number(z) -> list:
    """Complex scalar -> [re, im], preserving exact integers."""
    if isinstance(z, int):
        return [z, 0]
    z = complex(z)
    re = int(z.real) if z.real == int(z.real) else float(z.real)
    im = int(z.imag) if z.imag == int(z.imag) else float(z.imag)
    return [re, im]


def decode_number(value, *, context: str = "value"):
    """[re, im] or bare number -> int (when exact) or complex."""
    if isinstance(value, bool):
        raise CoefficientFileError(f"{context}: expected a number")
    if isinstance(value, (int, float)):
        re, im = value, 0
    elif (isinstance(value, list) and len(value) == 2
          and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                  for x in value)):
        re, im = value
    else:
        raise CoefficientFileError(
            f"{context}: expected a number or [re, im] pair, got {value!r}")
    if isinstance(re, int) and im == 0:
        return re
    return complex(re, im)


def coefficient_document(basis: MonomialBasis, a) -> dict:
    coeffs = {}
    for k, value in zip(basis.monomials, a):
        z = complex(value)
        if z != 0:
            coeffs[",".join(str(x) for x in k)] = encode_number(z)
    return {"schema": SCHEMA, "n": basis.n, "d": basis.d, "coeffs": coeffs}


def parse_coefficient_document(doc) -> tuple[MonomialBasis, np.ndarray]:
    """Read {"n", "d", "coeffs": {"k1,k2,...": [re, im]}}; absent keys are 0.

    Raises CoefficientFileError naming the offending key on any malformed
    entry (bad arity, negative entries, wrong total degree, bad value).
    """
    if not isinstance(doc, dict):
        raise CoefficientFileError("coefficient document must be an object")
    try:
        n = int(doc["n"])
        d = int(doc["d"])
    except (KeyError, TypeError, ValueError):
        raise CoefficientFileError(
            "coefficient document needs integer fields 'n' and 'd'") from None
    basis = enumerate_monomials(n, d)
    a = np.zeros(basis.size, dtype=complex)
    coeffs = doc.get("coeffs", {})
    if not isinstance(coeffs, dict):
        raise CoefficientFileError("'coeffs' must be an object")
    for key, value in coeffs.items():
        try:
            k = tuple(int(part) for part in key.split(","))
        except ValueError:
            raise CoefficientFileError(
                f"key {key!r}: entries must be integers") from None
        if len(k) != n:
            raise CoefficientFileError(
                f"key {key!r}: expected {n} comma-separated entries")
        if any(x < 0 for x in k):
            raise CoefficientFileError(f"key {key!r}: negative exponent")
        if sum(k) != d:
            raise CoefficientFileError(
                f"key {key!r}: total degree {sum(k)} != d = {d}")
        a[basis.index(k)] = complex(decode_number(value,
                                                  context=f"key {key!r}"))
    return basis, a


def load_coefficient_file(path) -> tuple[MonomialBasis, np.ndarray]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CoefficientFileError(f"{path}: invalid JSON ({exc})") from exc
    return parse_coefficient_document(doc)


def operator_document(op: LinearDifferentialOperator) -> dict:
    terms = []
    for term in op.terms:
        terms.append({
            "coeff_const": encode_number(term.coeff_const),
            "coeff_linear": {str(idx): encode_number(c)
                             for idx, c in term.coeff_linear},
            "derivative": list(term.derivative),
        })
    return {"terms": terms}


def operator_from_document(doc, num_vars: int) -> LinearDifferentialOperator:
    terms = []
    for i, tdoc in enumerate(doc.get("terms", [])):
        ctx = f"operator term {i}"
        deriv = tuple(int(x) for x in tdoc["derivative"])
        linear = tuple(sorted(
            (int(idx), decode_number(c, context=ctx))
            for idx, c in tdoc.get("coeff_linear", {}).items()))
        terms.append(OperatorTerm(
            coeff_const=decode_number(tdoc.get("coeff_const", 0),
                                      context=ctx),
            coeff_linear=linear,
            derivative=deriv,
        ))
    return LinearDifferentialOperator(num_vars=num_vars, terms=tuple(terms))


def system_document(system: GkzSystem) -> dict:
    basis = system.basis
    return {
        "schema": SCHEMA,
        "n": basis.n,
        "d": basis.d,
        "monomials": [list(k) for k in basis.monomials],
        "homogeneity": [encode_number(c) for c in system.homogeneity],
        "box_operators": [operator_document(op)
                          for op in system.box_operators],
        "euler_operators": [operator_document(op)
                            for op in system.euler_operators],
    }


def system_from_document(doc) -> GkzSystem:
    try:
        n, d = int(doc["n"]), int(doc["d"])
    except (KeyError, TypeError, ValueError):
        raise DomainError("system document needs integer 'n' and 'd'") \
            from None
    basis = enumerate_monomials(n, d)
    monomials = tuple(tuple(int(x) for x in k) for k in doc["monomials"])
    if monomials != basis.monomials:
        raise DomainError("system document monomials do not match the "
                          "fixed order for (n, d)")
    size = basis.size
    return GkzSystem(
        basis=basis,
        box_operators=tuple(operator_from_document(op, size)
                            for op in doc["box_operators"]),
        euler_operators=tuple(operator_from_document(op, size)
                              for op in doc["euler_operators"]),
        homogeneity=tuple(complex(decode_number(c, context="homogeneity"))
                          for c in doc["homogeneity"]),
    )


def dumps_canonical(doc) -> str:
    """Deterministic serialization: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": "))
