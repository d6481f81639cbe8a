"""Classical invariants of forms for the cases under test.

Values carry a weight w meaning inv(sigma_g a) = det(g)^w inv(a); the weight
is part of the contract and is exercised by the covariance tests.  All
computations run in exact rational arithmetic whenever every input entry is
an int or Fraction, and in complex floating point otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DecayError, DomainError, NormalizationError
from .monomials import MonomialBasis

#: frozen constant in disc = DISC_IJ_CONSTANT * (I^3 - 27 J^2) for binary
#: quartics with the plain-coefficient normalizations below; fixed
#: empirically against the Sylvester discriminant and locked by a
#: regression test.
DISC_IJ_CONSTANT = 256


@dataclass(frozen=True)
class InvariantValue:
    name: str
    value: complex
    weight: int


def _all_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def _det_exact(rows):
    """Determinant by exact fraction-free style elimination on Fractions."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if a[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def _det(rows, exact: bool):
    if exact:
        return _det_exact(rows)
    return complex(np.linalg.det(np.asarray(rows, dtype=complex)))


def quadratic_form_matrix(basis: MonomialBasis, a):
    """Q(a) with Q_ii = a_{2e_i}, Q_ij = a_{e_i+e_j}/2 (generic entries)."""
    if basis.d != 2:
        raise DomainError("the quadratic form matrix needs d = 2")
    n = basis.n
    exact = _all_exact(a)
    half = Fraction(1, 2) if exact else 0.5
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            k = [0] * n
            k[i] += 1
            k[j] += 1
            value = a[basis.index(tuple(k))]
            row.append(value if i == j else value * half)
        rows.append(row)
    return rows


def quadratic_det(basis: MonomialBasis, a) -> InvariantValue:
    """det Q(a); zero exactly when the quadric P(a; x) = 0 is singular.

    Weight 2: substituting x -> g x maps Q to g^T Q g.
    """
    rows = quadratic_form_matrix(basis, a)
    value = _det(rows, _all_exact(a))
    return InvariantValue(name="quadratic_det", value=value, weight=2)


def _dehomogenized_coefficients(basis: MonomialBasis, a):
    """Coefficients of p(t) = P(a; t, 1) in descending powers of t."""
    if basis.n != 2:
        raise DomainError("dehomogenization is defined for n = 2 only")
    d = basis.d
    return [a[basis.index((j, d - j))] for j in range(d, -1, -1)]


def sylvester_resultant(p_coeffs, q_coeffs, exact: bool):
    """Resultant of two univariate polynomials given in descending order.

    The declared degrees are len(coeffs) - 1; vanishing leading entries are
    honored (the determinant then picks up the usual degeneration to zero).
    """
    dp = len(p_coeffs) - 1
    dq = len(q_coeffs) - 1
    size = dp + dq
    zero = Fraction(0) if exact else 0.0
    rows = []
    for shift in range(dq):
        row = [zero] * size
        for idx, c in enumerate(p_coeffs):
            row[shift + idx] = c
        rows.append(row)
    for shift in range(dp):
        row = [zero] * size
        for idx, c in enumerate(q_coeffs):
            row[shift + idx] = c
        rows.append(row)
    return _det(rows, exact)


def binary_discriminant(basis: MonomialBasis, a) -> InvariantValue:
    """Discriminant of a binary d-form via Res(p, p') of p(t) = P(a; t, 1).

    Weight d(d-1).  A zero leading coefficient a_{(d,0)} cannot be
    normalized away; NormalizationError then carries the raw resultant.
    """
    coeffs = _dehomogenized_coefficients(basis, a)
    exact = _all_exact(a)
    d = basis.d
    deriv = [c * (d - i) for i, c in enumerate(coeffs[:-1])]
    resultant = sylvester_resultant(coeffs, deriv, exact)
    lead = coeffs[0]
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    if lead == 0:
        raise NormalizationError(
            "leading coefficient a_(d,0) is zero; cannot normalize the "
            "discriminant (raw resultant attached)",
            raw_resultant=resultant)
    if exact:
        value = Fraction(sign) * Fraction(resultant) / Fraction(lead)
    else:
        value = sign * resultant / lead
    return InvariantValue(name="binary_discriminant", value=value,
                          weight=d * (d - 1))


def binary_quartic_invariants(basis: MonomialBasis, a
                              ) -> tuple[InvariantValue, InvariantValue]:
    """The basic invariants (I, J) of a binary quartic, plain coefficients.

    With f = a0 x^4 + a1 x^3 y + a2 x^2 y^2 + a3 x y^3 + a4 y^4:

        I = a0 a4 - a1 a3 / 4 + a2^2 / 12          (degree 2, weight 4)
        J = a0 a2 a4 / 6 + a1 a2 a3 / 48
            - a0 a3^2 / 16 - a1^2 a4 / 16 - a2^3 / 216   (degree 3, weight 6)

    Validated, not assumed: unimodular invariance and the discriminant
    relation disc = DISC_IJ_CONSTANT * (I^3 - 27 J^2) are regression-tested.
    """
    if basis.n != 2 or basis.d != 4:
        raise DomainError("the (I, J) invariants need (n, d) = (2, 4)")
    exact = _all_exact(a)
    conv = Fraction if exact else (lambda num, den=1: num / den)
    a0, a1, a2, a3, a4 = (a[basis.index((4 - j, j))] for j in range(5))
    i_val = a0 * a4 - a1 * a3 * conv(1, 4) + a2 * a2 * conv(1, 12)
    j_val = (a0 * a2 * a4 * conv(1, 6) + a1 * a2 * a3 * conv(1, 48)
             - a0 * a3 * a3 * conv(1, 16) - a1 * a1 * a4 * conv(1, 16)
             - a2 * a2 * a2 * conv(1, 216))
    return (InvariantValue(name="quartic_I", value=i_val, weight=4),
            InvariantValue(name="quartic_J", value=j_val, weight=6))


def invariants_for(basis: MonomialBasis, a) -> list[InvariantValue]:
    """All invariants applicable at this (n, d)."""
    out = []
    if basis.d == 2:
        out.append(quadratic_det(basis, a))
    if basis.n == 2:
        try:
            out.append(binary_discriminant(basis, a))
        except NormalizationError:
            pass
        if basis.d == 4:
            out.extend(binary_quartic_invariants(basis, a))
    return out


@dataclass(frozen=True)
class ProbeResult:
    """Log-log slope of |J| along a path a(t) = a_star + t * delta."""

    exponent: float
    ts: tuple[float, ...]
    values: tuple[complex, ...]

    @property
    def abs_values(self) -> tuple[float, ...]:
        return tuple(abs(v) for v in self.values)


def singularity_probe(j_eval, a_star, delta, *, t0: float = 0.5,
                      steps: int = 7, min_points: int = 4) -> ProbeResult:
    """Fit log |J(a(t))| against log t on the schedule t = t0 * 2^-j.

    ``j_eval`` maps a coefficient vector to a complex value and may raise
    DecayError for points outside the decay-valid region; such points are
    dropped, and fewer than ``min_points`` surviving points is an error.
    A slope near -1/2 flags the determinant-power blow-up of the quadratic
    family; a slope near 0 means J is analytic along the path.
    """
    a_star = np.asarray(a_star, dtype=complex)
    delta = np.asarray(delta, dtype=complex)
    ts, values = [], []
    for j in range(steps):
        t = t0 * 2.0 ** (-j)
        try:
            values.append(complex(j_eval(a_star + t * delta)))
            ts.append(t)
        except DecayError:
            continue
    if len(ts) < min_points:
        raise DecayError(
            f"only {len(ts)} decay-valid probe points (need {min_points})")
    logs_t = np.log(np.asarray(ts))
    logs_v = np.log(np.abs(np.asarray(values)))
    slope = float(np.polyfit(logs_t, logs_v, 1)[0])
    return ProbeResult(exponent=slope, ts=tuple(ts), values=tuple(values))
