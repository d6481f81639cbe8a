"""Differential operators in coefficient space and their construction.

The annihilator system of J(a) consists of one binomial (box) operator
d^u - d^v per toric relation and, per axis i, the first-order Euler operator

    sum_k k_i a_k d/da_k + 1,

whose constant +1 encodes the homogeneity J(t.a) = (prod t_i)^(-1) J(a)
under the torus rescaling a_k -> a_k t^k (substitute x_i -> t_i x_i and pull
the Jacobian out of the integral).  Operators carry degree <= 1 polynomial
coefficients so they stay closed under the constructions used here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedOrderError
from .fd import MAX_ORDER, mixed_partial
from .monomials import MonomialBasis, ToricRelation, toric_relations


@dataclass(frozen=True)
class OperatorTerm:
    """coefficient(a) * d^derivative with coefficient = const + linear part.

    ``coeff_linear`` is a sorted tuple of (coefficient index, value) pairs;
    values may be exact ints/Fractions (kept exact for the symbolic oracle)
    or floats/complex.
    """

    coeff_const: object
    coeff_linear: tuple[tuple[int, object], ...]
    derivative: tuple[int, ...]

    def coefficient_at(self, a):
        val = self.coeff_const
        for idx, c in self.coeff_linear:
            val = val + c * a[idx]
        return val

    @property
    def order(self) -> int:
        return sum(self.derivative)


@dataclass(frozen=True)
class LinearDifferentialOperator:
    num_vars: int
    terms: tuple[OperatorTerm, ...]

    def __post_init__(self):
        seen = set()
        for term in self.terms:
            if len(term.derivative) != self.num_vars:
                raise DomainError("derivative multi-index length mismatch")
            if term.derivative in seen:
                raise DomainError("duplicate derivative multi-index in "
                                  "operator")
            seen.add(term.derivative)

    @property
    def order(self) -> int:
        return max((t.order for t in self.terms), default=0)

    def __add__(self, other: "LinearDifferentialOperator"):
        if self.num_vars != other.num_vars:
            raise DomainError("operators live on different spaces")
        merged: dict[tuple[int, ...], tuple[object, dict]] = {}
        for term in self.terms + other.terms:
            const, linear = merged.get(term.derivative, (0, {}))
            const = const + term.coeff_const
            for idx, c in term.coeff_linear:
                linear[idx] = linear.get(idx, 0) + c
            merged[term.derivative] = (const, linear)
        terms = []
        for deriv in sorted(merged):
            const, linear = merged[deriv]
            pairs = tuple(sorted((i, c) for i, c in linear.items() if c != 0))
            if const == 0 and not pairs:
                continue
            terms.append(OperatorTerm(coeff_const=const, coeff_linear=pairs,
                                      derivative=deriv))
        return LinearDifferentialOperator(num_vars=self.num_vars,
                                          terms=tuple(terms))


@dataclass(frozen=True)
class GkzSystem:
    basis: MonomialBasis
    box_operators: tuple[LinearDifferentialOperator, ...]
    euler_operators: tuple[LinearDifferentialOperator, ...]
    homogeneity: tuple[complex, ...]


def _unit_multi(size: int, idx: int, power: int = 1) -> tuple[int, ...]:
    m = [0] * size
    m[idx] = power
    return tuple(m)


def box_operator(rel: ToricRelation, basis: MonomialBasis
                 ) -> LinearDifferentialOperator:
    """The constant-coefficient binomial operator d^u - d^v."""
    rel.validate(basis)
    return LinearDifferentialOperator(
        num_vars=basis.size,
        terms=(
            OperatorTerm(coeff_const=1, coeff_linear=(), derivative=rel.u),
            OperatorTerm(coeff_const=-1, coeff_linear=(), derivative=rel.v),
        ),
    )


def euler_operator(axis: int, basis: MonomialBasis
                   ) -> LinearDifferentialOperator:
    """sum_k k_i a_k d/da_k + 1 for the 1-based axis i; annihilates J."""
    if not 1 <= axis <= basis.n:
        raise DomainError(f"axis must be in 1..{basis.n}, got {axis}")
    terms = [OperatorTerm(coeff_const=1, coeff_linear=(),
                          derivative=(0,) * basis.size)]
    for j, k in enumerate(basis.monomials):
        weight = k[axis - 1]
        if weight:
            terms.append(OperatorTerm(
                coeff_const=0,
                coeff_linear=((j, weight),),
                derivative=_unit_multi(basis.size, j),
            ))
    return LinearDifferentialOperator(num_vars=basis.size,
                                      terms=tuple(terms))


def gkz_system(basis: MonomialBasis) -> GkzSystem:
    """Full annihilator system: all box operators plus n Euler operators."""
    return GkzSystem(
        basis=basis,
        box_operators=tuple(box_operator(rel, basis)
                            for rel in toric_relations(basis)),
        euler_operators=tuple(euler_operator(i, basis)
                              for i in range(1, basis.n + 1)),
        homogeneity=(-1.0,) * basis.n,
    )


@dataclass(frozen=True)
class ApplyResult:
    """Residual of an operator applied to a function at a point."""

    value: complex
    error_estimate: float
    term_values: tuple[complex, ...]

    @property
    def scale(self) -> float:
        """Largest term magnitude; the natural normalizer for residuals."""
        return max((abs(t) for t in self.term_values), default=0.0)


def apply_operator(op: LinearDifferentialOperator, phi, a,
                   *, richardson: bool = True) -> ApplyResult:
    """Evaluate sum of coeff(a) * (d^m phi)(a) with FD mixed partials.

    ``phi`` maps coefficient vectors to complex numbers and must be
    evaluatable on the stencil neighborhood of ``a``.  Total derivative
    order is capped at 4; beyond that central differences are hopeless in
    double precision and callers should use the moment route instead.
    """
    if op.order > MAX_ORDER:
        raise UnsupportedOrderError(
            f"operator order {op.order} exceeds FD cap {MAX_ORDER}")
    a = np.asarray(a, dtype=complex)
    total = 0.0 + 0.0j
    err = 0.0
    term_values = []
    for term in op.terms:
        coeff = complex(term.coefficient_at(a))
        if coeff == 0:
            term_values.append(0.0 + 0.0j)
            continue
        deriv, deriv_err = mixed_partial(phi, a, term.derivative,
                                         richardson=richardson)
        term_values.append(coeff * deriv)
        total += coeff * deriv
        err += abs(coeff) * deriv_err
    return ApplyResult(value=total, error_estimate=err,
                       term_values=tuple(term_values))
