"""Closed form for quadratic exponents and an exact symbolic differentiator.

For d = 2 the integral is pi^(n/2) * det(-Q(a))^(-1/2) with Q the symmetric
matrix of the form (Q_ii = a_{2e_i}, Q_ij = a_{e_i+e_j}/2).  Functions of the
shape  sum_s p_s(a) * D(a)^(-(2s+1)/2),  D = det(-Q), with rational
polynomial p_s are closed under d/da_k, so annihilation by any operator with
degree <= 1 rational coefficients can be decided exactly: clear the common
power of D and test the resulting polynomial for identical vanishing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .monomials import MonomialBasis
from .operators import LinearDifferentialOperator


class RationalPoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    Keys are exponent tuples over a fixed number of variables; zero
    coefficients are never stored, so the zero polynomial is the empty dict.
    """

    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs=None):
        self.num_vars = num_vars
        self.coeffs: dict[tuple[int, ...], Fraction] = {}
        if coeffs:
            for mono, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[tuple(mono)] = c

    @classmethod
    def constant(cls, num_vars: int, value) -> "RationalPoly":
        return cls(num_vars, {(0,) * num_vars: Fraction(value)})

    @classmethod
    def variable(cls, num_vars: int, idx: int) -> "RationalPoly":
        mono = [0] * num_vars
        mono[idx] = 1
        return cls(num_vars, {tuple(mono): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            s = out.get(mono, Fraction(0)) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return RationalPoly(self.num_vars, out)

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(self.num_vars,
                            {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            scalar = Fraction(other)
            return RationalPoly(self.num_vars,
                                {m: c * scalar
                                 for m, c in self.coeffs.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono = tuple(x + y for x, y in zip(m1, m2))
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return RationalPoly(self.num_vars, out)

    __rmul__ = __mul__

    def diff(self, idx: int) -> "RationalPoly":
        out = {}
        for mono, c in self.coeffs.items():
            p = mono[idx]
            if p:
                lowered = list(mono)
                lowered[idx] = p - 1
                out[tuple(lowered)] = c * p
        return RationalPoly(self.num_vars, out)

    def eval(self, values):
        total = 0
        for mono, c in self.coeffs.items():
            term = c
            for v, p in zip(values, mono):
                if p:
                    term = term * v ** p
            total = total + term
        return total

    def __eq__(self, other):
        return (isinstance(other, RationalPoly)
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"RationalPoly({self.num_vars}, {self.coeffs!r})"


def _quadratic_entry_index(basis: MonomialBasis, i: int, j: int) -> int:
    k = [0] * basis.n
    k[i] += 1
    k[j] += 1
    return basis.index(tuple(k))


def neg_quadratic_det_poly(basis: MonomialBasis) -> RationalPoly:
    """det(-Q(a)) as an exact polynomial in the coefficients."""
    if basis.d != 2:
        raise DomainError("the quadratic determinant needs d = 2")
    n, size = basis.n, basis.size
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            idx = _quadratic_entry_index(basis, i, j)
            scale = Fraction(-1) if i == j else Fraction(-1, 2)
            entries[i][j] = RationalPoly(size, {}) + \
                (RationalPoly.variable(size, idx) * scale)
    return _det_poly(entries)


def _det_poly(entries) -> RationalPoly:
    n = len(entries)
    num_vars = entries[0][0].num_vars
    if n == 1:
        return entries[0][0]
    total = RationalPoly(num_vars)
    for j in range(n):
        minor = [[entries[r][c] for c in range(n) if c != j]
                 for r in range(1, n)]
        cofactor = entries[0][j] * _det_poly(minor)
        total = total + cofactor if j % 2 == 0 else total - cofactor
    return total


@dataclass(frozen=True)
class DetPowerSum:
    """sum_s parts[s](a) * det(a)^(-(2s+1)/2), all parts exact rational."""

    det: RationalPoly
    parts: dict[int, RationalPoly]

    def diff(self, idx: int) -> "DetPowerSum":
        ddet = self.det.diff(idx)
        out: dict[int, RationalPoly] = {}
        for s, p in self.parts.items():
            _accumulate(out, s, p.diff(idx))
            _accumulate(out, s + 1, p * ddet * Fraction(-(2 * s + 1), 2))
        return DetPowerSum(det=self.det, parts=_prune(out))

    def diff_multi(self, multi) -> "DetPowerSum":
        f = self
        for idx, power in enumerate(multi):
            for _ in range(power):
                f = f.diff(idx)
        return f

    def mul_poly(self, poly: RationalPoly) -> "DetPowerSum":
        return DetPowerSum(det=self.det,
                           parts=_prune({s: p * poly
                                         for s, p in self.parts.items()}))

    def __add__(self, other: "DetPowerSum") -> "DetPowerSum":
        if self.det != other.det:
            raise DomainError("incompatible determinant polynomials")
        out = dict(self.parts)
        for s, p in other.parts.items():
            _accumulate(out, s, p)
        return DetPowerSum(det=self.det, parts=_prune(out))

    def is_zero(self) -> bool:
        """Exact zero test: clear the common power of det and compare."""
        if not self.parts:
            return True
        smax = max(self.parts)
        total = RationalPoly(self.det.num_vars)
        for s, p in self.parts.items():
            factor = p
            for _ in range(smax - s):
                factor = factor * self.det
            total = total + factor
        return total.is_zero()

    def eval(self, a) -> complex:
        """Numeric value with the principal branch of the square root."""
        det_val = complex(self.det.eval([complex(x) for x in a]))
        total = 0.0 + 0.0j
        for s, p in self.parts.items():
            power = det_val ** (-(s + 0.5))  # principal branch
            total += complex(p.eval([complex(x) for x in a])) * power
        return total


def _accumulate(parts: dict, s: int, poly: RationalPoly) -> None:
    if s in parts:
        parts[s] = parts[s] + poly
    else:
        parts[s] = poly


def _prune(parts: dict) -> dict:
    return {s: p for s, p in parts.items() if not p.is_zero()}


def gaussian_symbol(basis: MonomialBasis) -> DetPowerSum:
    """det(-Q(a))^(-1/2); the closed form up to the constant pi^(n/2)."""
    det = neg_quadratic_det_poly(basis)
    one = RationalPoly.constant(basis.size, 1)
    return DetPowerSum(det=det, parts={0: one})


def apply_operator_symbolic(op: LinearDifferentialOperator,
                            f: DetPowerSum) -> DetPowerSum:
    """Apply an operator with exact rational coefficients to ``f``."""
    num_vars = f.det.num_vars
    total = DetPowerSum(det=f.det, parts={})
    for term in op.terms:
        g = f.diff_multi(term.derivative)
        coeff = RationalPoly.constant(num_vars, Fraction(term.coeff_const))
        for idx, c in term.coeff_linear:
            coeff = coeff + (RationalPoly.variable(num_vars, idx)
                             * Fraction(c))
        total = total + g.mul_poly(coeff)
    return total


def quadratic_matrix(basis: MonomialBasis, a) -> np.ndarray:
    """The symmetric matrix Q(a) with x^T Q x = P(a; x), complex entries."""
    if basis.d != 2:
        raise DomainError("the quadratic matrix needs d = 2")
    a = np.asarray(a, dtype=complex)
    n = basis.n
    q = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            idx = _quadratic_entry_index(basis, i, j)
            q[i, j] = a[idx] if i == j else a[idx] / 2.0
    return q


def gaussian_value(basis: MonomialBasis, a) -> complex:
    """pi^(n/2) det(-Q(a))^(-1/2), principal branch (positive at real
    negative-definite coefficient vectors)."""
    q = quadratic_matrix(basis, a)
    det = complex(np.linalg.det(-q))
    return math.pi ** (basis.n / 2.0) / np.sqrt(det)
