# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled quadrature kernel: tensor-product sums over a mapped grid.

Same contract as ghyper._kernel_py.tensor_sums.  Accumulation is blocked per
grid axis (innermost axis summed into a scratch accumulator, then folded one
level up), which keeps the rounding error near the pairwise-summation level
while the summation order stays fixed and reproducible.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, fabs, sin

cnp.import_array()


def kernel_name():
    return "compiled"


def tensor_sums(xs, ws, exps, avals, moms):
    """See ghyper._kernel_py.tensor_sums for the contract."""
    xs_arr = np.ascontiguousarray(xs, dtype=np.float64)
    ws_arr = np.ascontiguousarray(ws, dtype=np.float64)
    exps_arr = np.ascontiguousarray(exps, dtype=np.int64)
    avals_arr = np.ascontiguousarray(avals, dtype=np.complex128)
    moms_arr = np.ascontiguousarray(moms, dtype=np.int64)

    cdef Py_ssize_t n = exps_arr.shape[1]
    cdef Py_ssize_t npts = xs_arr.shape[0]
    cdef Py_ssize_t na = exps_arr.shape[0]
    cdef Py_ssize_t m = moms_arr.shape[0]
    if n < 1 or n > 3:
        raise ValueError(f"tensor kernel supports n <= 3, got n={n}")

    cdef long long pmax = 0
    cdef cnp.int64_t[:, ::1] ee = exps_arr
    cdef cnp.int64_t[:, ::1] mm = moms_arr
    cdef Py_ssize_t i, j
    for i in range(na):
        for j in range(n):
            if ee[i, j] > pmax:
                pmax = ee[i, j]
    for i in range(m):
        for j in range(n):
            if mm[i, j] > pmax:
                pmax = mm[i, j]

    pow_table = np.empty((pmax + 1, npts), dtype=np.float64)
    cdef double[:, ::1] pw = pow_table
    cdef double[::1] xv = xs_arr
    cdef Py_ssize_t p
    for i in range(npts):
        pw[0, i] = 1.0
    for p in range(1, pmax + 1):
        for i in range(npts):
            pw[p, i] = pw[p - 1, i] * xv[i]

    values = np.zeros(m, dtype=np.complex128)
    l1 = np.zeros(m, dtype=np.float64)
    cdef double[::1] out_re = np.zeros(m)
    cdef double[::1] out_im = np.zeros(m)
    cdef double[::1] out_l1 = np.zeros(m)
    are = np.ascontiguousarray(avals_arr.real)
    aim = np.ascontiguousarray(avals_arr.imag)

    if n == 1:
        _sums_1d(pw, ws_arr, ee, are, aim, mm, out_re, out_im, out_l1)
    elif n == 2:
        _sums_2d(pw, ws_arr, ee, are, aim, mm, out_re, out_im, out_l1)
    else:
        _sums_3d(pw, ws_arr, ee, are, aim, mm, out_re, out_im, out_l1)

    for i in range(m):
        values[i] = complex(out_re[i], out_im[i])
        l1[i] = out_l1[i]
    return values, l1


cdef void _sums_1d(double[:, ::1] pw, double[::1] ws,
                   cnp.int64_t[:, ::1] ee, double[::1] are, double[::1] aim,
                   cnp.int64_t[:, ::1] mm,
                   double[::1] out_re, double[::1] out_im,
                   double[::1] out_l1) noexcept:
    cdef Py_ssize_t npts = ws.shape[0]
    cdef Py_ssize_t na = ee.shape[0]
    cdef Py_ssize_t m = mm.shape[0]
    cdef Py_ssize_t i, t, q
    cdef double pre, pim, ex, fre, fim, fab, w, mono, mq
    for i in range(npts):
        pre = 0.0
        pim = 0.0
        for t in range(na):
            mono = pw[ee[t, 0], i]
            pre += are[t] * mono
            pim += aim[t] * mono
        ex = exp(pre)
        w = ws[i]
        fre = ex * cos(pim) * w
        fim = ex * sin(pim) * w
        fab = ex * w
        for q in range(m):
            mq = pw[mm[q, 0], i]
            out_re[q] += mq * fre
            out_im[q] += mq * fim
            out_l1[q] += fabs(mq) * fab


cdef void _sums_2d(double[:, ::1] pw, double[::1] ws,
                   cnp.int64_t[:, ::1] ee, double[::1] are, double[::1] aim,
                   cnp.int64_t[:, ::1] mm,
                   double[::1] out_re, double[::1] out_im,
                   double[::1] out_l1) noexcept:
    cdef Py_ssize_t npts = ws.shape[0]
    cdef Py_ssize_t na = ee.shape[0]
    cdef Py_ssize_t m = mm.shape[0]
    scratch = np.zeros((5, max(na, m)), dtype=np.float64)
    cdef double[:, ::1] sc = scratch
    cdef Py_ssize_t i, j, t, q
    cdef double pre, pim, ex, fre, fim, fab, w, mono, mq, wi
    for i in range(npts):
        wi = ws[i]
        for t in range(na):
            sc[0, t] = pw[ee[t, 0], i]      # polynomial partial products
        for q in range(m):
            sc[1, q] = pw[mm[q, 0], i]      # moment partial products
            sc[2, q] = 0.0                  # row accumulators
            sc[3, q] = 0.0
            sc[4, q] = 0.0
        for j in range(npts):
            pre = 0.0
            pim = 0.0
            for t in range(na):
                mono = sc[0, t] * pw[ee[t, 1], j]
                pre += are[t] * mono
                pim += aim[t] * mono
            ex = exp(pre)
            w = wi * ws[j]
            fre = ex * cos(pim) * w
            fim = ex * sin(pim) * w
            fab = ex * w
            for q in range(m):
                mq = sc[1, q] * pw[mm[q, 1], j]
                sc[2, q] += mq * fre
                sc[3, q] += mq * fim
                sc[4, q] += fabs(mq) * fab
        for q in range(m):
            out_re[q] += sc[2, q]
            out_im[q] += sc[3, q]
            out_l1[q] += sc[4, q]


cdef void _sums_3d(double[:, ::1] pw, double[::1] ws,
                   cnp.int64_t[:, ::1] ee, double[::1] are, double[::1] aim,
                   cnp.int64_t[:, ::1] mm,
                   double[::1] out_re, double[::1] out_im,
                   double[::1] out_l1) noexcept:
    cdef Py_ssize_t npts = ws.shape[0]
    cdef Py_ssize_t na = ee.shape[0]
    cdef Py_ssize_t m = mm.shape[0]
    scratch = np.zeros((10, max(na, m)), dtype=np.float64)
    cdef double[:, ::1] sc = scratch
    cdef Py_ssize_t i, j, k, t, q
    cdef double pre, pim, ex, fre, fim, fab, w, mono, mq, wi, wij
    for i in range(npts):
        wi = ws[i]
        for t in range(na):
            sc[0, t] = pw[ee[t, 0], i]
        for q in range(m):
            sc[1, q] = pw[mm[q, 0], i]
            sc[2, q] = 0.0                  # plane accumulators
            sc[3, q] = 0.0
            sc[4, q] = 0.0
        for j in range(npts):
            wij = wi * ws[j]
            for t in range(na):
                sc[5, t] = sc[0, t] * pw[ee[t, 1], j]
            for q in range(m):
                sc[6, q] = sc[1, q] * pw[mm[q, 1], j]
                sc[7, q] = 0.0              # line accumulators
                sc[8, q] = 0.0
                sc[9, q] = 0.0
            for k in range(npts):
                pre = 0.0
                pim = 0.0
                for t in range(na):
                    mono = sc[5, t] * pw[ee[t, 2], k]
                    pre += are[t] * mono
                    pim += aim[t] * mono
                ex = exp(pre)
                w = wij * ws[k]
                fre = ex * cos(pim) * w
                fim = ex * sin(pim) * w
                fab = ex * w
                for q in range(m):
                    mq = sc[6, q] * pw[mm[q, 2], k]
                    sc[7, q] += mq * fre
                    sc[8, q] += mq * fim
                    sc[9, q] += fabs(mq) * fab
            for q in range(m):
                sc[2, q] += sc[7, q]
                sc[3, q] += sc[8, q]
                sc[4, q] += sc[9, q]
        for q in range(m):
            out_re[q] += sc[2, q]
            out_im[q] += sc[3, q]
            out_l1[q] += sc[4, q]
