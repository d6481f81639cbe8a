"""The GL(n) structure on coefficient space.

Substituting x -> g x in the form induces the right action
sigma_g a = coefficients of P(a; g x), so sigma_{gh} = sigma_h o sigma_g.
Its infinitesimal version along a matrix X is the |A| x |A| matrix M_X with

    (M_X a) = coefficients of  grad_x P(a; x) . (X x),

and the change of variables x -> g^-1 x in the integral gives the covariance
J(sigma_g a) = det(g)^(-1) J(a).  Differentiating along exp(tX) turns that
into the first-order identity  sum_k (M_X a)_k dJ/da_k + tr(X) J = 0, which
is what lie_residual measures.  Lie algebra elements are plain n x n
array-likes; exact (int/Fraction) input yields exact matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import quadrature
from .errors import DomainError
from .fd import mixed_partial
from .monomials import MonomialBasis


@dataclass(frozen=True)
class InducedAction:
    """|A| x |A| matrix of an induced action on coefficient vectors.

    ``kind`` records the convention: 'group' matrices satisfy
    S_{gh} = S_h S_g (right action), 'infinitesimal' ones are d/dt at t=0
    of the group matrices along exp(tX).
    """

    matrix: np.ndarray
    kind: str


def _check_square(g, n: int):
    # object dtype preserves exact entries (Python int, Fraction)
    g = np.asarray(g, dtype=object)
    if g.shape != (n, n):
        raise DomainError(f"expected a {n}x{n} matrix, got shape {g.shape}")
    return g


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


def _multinomial(power: int, alpha) -> int:
    out = math.factorial(power)
    for x in alpha:
        out //= math.factorial(x)
    return out


def _expand_row_power(row, power: int):
    """(sum_j row[j] x_j)^power as {exponent tuple: coefficient}."""
    n = len(row)
    if power == 0:
        return {(0,) * n: 1}
    out = {}
    from .monomials import compositions
    for alpha in compositions(power, n):
        coeff = _multinomial(power, alpha)
        for rj, aj in zip(row, alpha):
            if aj:
                coeff = coeff * rj ** aj
        if coeff != 0:
            out[alpha] = coeff
    return out


def group_action_matrix(basis: MonomialBasis, g) -> InducedAction:
    """Matrix of sigma_g: column at k holds the coefficients of (g x)^k."""
    garr = _check_square(g, basis.n)
    rows = [list(garr[i]) for i in range(basis.n)]
    exact = all(_is_exact(v) for row in rows for v in row)
    size = basis.size
    mat = ([[0] * size for _ in range(size)] if exact
           else np.zeros((size, size), dtype=complex))
    for col, k in enumerate(basis.monomials):
        # product over i of (row_i . x)^{k_i}, accumulated sparsely
        partial = {(0,) * basis.n: 1}
        for i, ki in enumerate(k):
            if not ki:
                continue
            factor = _expand_row_power(rows[i], ki)
            merged = {}
            for m1, c1 in partial.items():
                for m2, c2 in factor.items():
                    mono = tuple(x + y for x, y in zip(m1, m2))
                    merged[mono] = merged.get(mono, 0) + c1 * c2
            partial = merged
        for mono, coeff in partial.items():
            row = basis.index(mono)
            if exact:
                mat[row][col] += coeff
            else:
                mat[row][col] += complex(coeff)
    return InducedAction(matrix=np.asarray(mat, dtype=object) if exact
                         else mat, kind="group")


def substitute(basis: MonomialBasis, g, a):
    """sigma_g a: coefficients of x -> P(a; g x), exact when inputs are.

    Right-action law: substitute(gh, a) == substitute(h, substitute(g, a)).
    """
    action = group_action_matrix(basis, g)
    mat = action.matrix
    if mat.dtype == object:
        exact_a = all(_is_exact(v) for v in a)
        if exact_a:
            return [sum(mat[r][c] * a[c] for c in range(basis.size))
                    for r in range(basis.size)]
        mat = np.vectorize(complex)(mat).astype(complex)
    a = np.asarray(a, dtype=complex)
    if a.shape != (basis.size,):
        raise DomainError(f"coefficient vector must have length {basis.size}")
    return mat @ a


def infinitesimal_action(basis: MonomialBasis, x_mat) -> InducedAction:
    """M_X = d/dt sigma_{exp(tX)} at t = 0, assembled exactly.

    The monomial a_k x^k contributes k_i X_ij to the matrix entry taking
    column k to row k - e_i + e_j; diagonal X reproduces the torus weights.
    """
    xarr = _check_square(x_mat, basis.n)
    rows = [list(xarr[i]) for i in range(basis.n)]
    exact = all(_is_exact(v) for row in rows for v in row)
    size = basis.size
    mat = ([[0] * size for _ in range(size)] if exact
           else np.zeros((size, size), dtype=complex))
    for col, k in enumerate(basis.monomials):
        for i, ki in enumerate(k):
            if not ki:
                continue
            for j in range(basis.n):
                c = rows[i][j]
                if c == 0:
                    continue
                shifted = list(k)
                shifted[i] -= 1
                shifted[j] += 1
                row = basis.index(tuple(shifted))
                if exact:
                    mat[row][col] += ki * c
                else:
                    mat[row][col] += ki * complex(c)
    return InducedAction(matrix=np.asarray(mat, dtype=object) if exact
                         else mat, kind="infinitesimal")


def chi0(basis: MonomialBasis, x_mat) -> complex:
    """Trace of the induced action on coefficient space: tr M_X.

    Equals sum over k in A of sum_i k_i X_ii.  (The trace of the dual action
    is its negative; the covariance residual below is convention-free.)
    """
    xarr = _check_square(x_mat, basis.n)
    total = 0
    for k in basis.monomials:
        for i, ki in enumerate(k):
            if ki:
                total = total + ki * xarr[i][i]
    return total


def beta_character(basis: MonomialBasis, x_mat) -> complex:
    """Informational character chi0(X) - tr(X) paired with chi0 by the
    covariance convention used here."""
    xarr = _check_square(x_mat, basis.n)
    trace = sum(xarr[i][i] for i in range(basis.n))
    return chi0(basis, x_mat) - trace


def matrix_exp(x_mat) -> np.ndarray:
    """exp(X) by scaling-and-squaring on the Taylor series (small n)."""
    x = np.asarray(x_mat, dtype=complex)
    norm = np.max(np.abs(x)) * x.shape[0]
    squarings = max(0, int(math.ceil(math.log2(norm / 0.25))) if norm > 0.25
                    else 0)
    y = x / (2 ** squarings)
    term = np.eye(x.shape[0], dtype=complex)
    total = term.copy()
    for order in range(1, 30):
        term = term @ y / order
        total += term
        if np.max(np.abs(term)) < 1e-20:
            break
    for _ in range(squarings):
        total = total @ total
    if np.allclose(total.imag, 0.0):
        total = total.real
    return total


def lie_residual(basis: MonomialBasis, x_mat, a, j_eval=None, *,
                 method: str = "moment",
                 config: quadrature.QuadratureConfig | None = None) -> complex:
    """sum_k (M_X a)_k dJ/da_k + tr(X) J(a); zero when J is the integral.

    ``method`` picks how the partials are obtained: 'moment' integrates
    x^k exp(P) directly (one batched grid pass), 'fd' central-differences
    the supplied ``j_eval``.  For diagonal X this reduces to the Euler
    residual of the annihilator system.
    """
    xarr = _check_square(x_mat, basis.n)
    a = np.asarray(a, dtype=complex)
    m_x = infinitesimal_action(basis, xarr).matrix
    if m_x.dtype == object:
        m_x = np.vectorize(complex)(m_x).astype(complex)
    ma = m_x @ a
    trace = complex(sum(xarr[i][i] for i in range(basis.n)))

    if method == "moment":
        j_val, partials = quadrature.derivative_moments(basis, a, config)
        j_value = j_val.value
        grad = np.array([p.value for p in partials])
    elif method == "fd":
        if j_eval is None:
            raise DomainError("method='fd' requires a J evaluator")
        j_value = j_eval(a)
        grad = np.empty(basis.size, dtype=complex)
        for k in range(basis.size):
            multi = [0] * basis.size
            multi[k] = 1
            grad[k], _ = mixed_partial(j_eval, a, multi)
    else:
        raise DomainError(f"unknown method {method!r}")
    return complex(ma @ grad + trace * j_value)
