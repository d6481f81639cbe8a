"""Pure-numpy quadrature kernel: tensor-product sums over a mapped grid.

Same contract as the compiled kernel ghyper._kernel_cy.  For each requested
moment exponent row e, accumulates

    sum over the n-fold tensor grid of  w * x^e * exp(P(a; x))

together with the L1 mass sum |w * x^e| * exp(Re P), which downstream code
uses as the convergence scale.  Summation order is fixed (numpy pairwise
reduction over a fixed axis layout), so results are reproducible run to run.
"""

from __future__ import annotations

import numpy as np


def kernel_name() -> str:
    return "python"


def tensor_sums(xs, ws, exps, avals, moms):
    """Quadrature sums for every moment row.

    Parameters
    ----------
    xs, ws : float64 arrays (N,), mapped nodes and positive weights (one
        axis; the same rule is used for every axis).
    exps : int64 array (|A|, n), exponent vectors of the polynomial.
    avals : complex128 array (|A|,), coefficients.
    moms : int64 array (m, n), moment exponent rows (a zero row gives the
        plain integral).

    Returns
    -------
    (values, l1) : complex128 array (m,), float64 array (m,).
    """
    xs = np.asarray(xs, dtype=np.float64)
    ws = np.asarray(ws, dtype=np.float64)
    exps = np.asarray(exps, dtype=np.int64)
    avals = np.asarray(avals, dtype=np.complex128)
    moms = np.asarray(moms, dtype=np.int64)
    n = exps.shape[1]
    pmax = int(max(exps.max(initial=0), moms.max(initial=0)))
    # pows[p] = xs**p, shared by the polynomial and the moment factors
    pows = np.empty((pmax + 1, xs.size), dtype=np.float64)
    pows[0] = 1.0
    for p in range(1, pmax + 1):
        pows[p] = pows[p - 1] * xs

    if n == 1:
        return _sums_1d(pows, ws, exps, avals, moms)
    if n == 2:
        return _sums_2d(pows, ws, exps, avals, moms)
    if n == 3:
        return _sums_3d(pows, ws, exps, avals, moms)
    raise ValueError(f"tensor kernel supports n <= 3, got n={n}")


def _sums_1d(pows, ws, exps, avals, moms):
    poly = avals @ pows[exps[:, 0]]
    f = np.exp(poly) * ws
    fabs = np.exp(poly.real) * ws
    mfac = pows[moms[:, 0]]
    values = mfac @ f
    l1 = np.abs(mfac) @ fabs
    return values, l1


def _sums_2d(pows, ws, exps, avals, moms):
    poly = np.einsum("k,ki,kj->ij", avals,
                     pows[exps[:, 0]], pows[exps[:, 1]], optimize=True)
    weight = np.outer(ws, ws)
    f = np.exp(poly) * weight
    fabs = np.exp(poly.real) * weight
    m0 = pows[moms[:, 0]]
    m1 = pows[moms[:, 1]]
    values = np.einsum("qi,qj,ij->q", m0, m1, f, optimize=True)
    l1 = np.einsum("qi,qj,ij->q", np.abs(m0), np.abs(m1), fabs, optimize=True)
    return values, l1


def _sums_3d(pows, ws, exps, avals, moms):
    # Slice along the first axis to bound memory at O(N^2) per slice; the
    # slice loop order is fixed, so the reduction stays deterministic.
    npts = ws.size
    m = moms.shape[0]
    values = np.zeros(m, dtype=np.complex128)
    l1 = np.zeros(m, dtype=np.float64)
    p1 = pows[exps[:, 1]]
    p2 = pows[exps[:, 2]]
    m1 = pows[moms[:, 1]]
    m2 = pows[moms[:, 2]]
    weight = np.outer(ws, ws)
    for i in range(npts):
        coeff = avals * pows[exps[:, 0], i]
        poly = np.einsum("k,kj,kl->jl", coeff, p1, p2, optimize=True)
        f = np.exp(poly) * weight
        fabs = np.exp(poly.real) * weight
        sub = np.einsum("qj,ql,jl->q", m1, m2, f, optimize=True)
        sub_abs = np.einsum("qj,ql,jl->q", np.abs(m1), np.abs(m2), fabs,
                            optimize=True)
        mom0 = pows[moms[:, 0], i]
        values += ws[i] * mom0 * sub
        l1 += ws[i] * np.abs(mom0) * sub_abs
    return values, l1
