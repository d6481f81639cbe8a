"""Exact integer linear algebra on Python ints (arbitrary precision).

Row reduction is Hermite-style: repeated Euclidean row operations with a
minimum-magnitude pivot, tracking the unimodular transform.  Everything here
is deterministic; no floating point is involved, so no overflow is possible.
"""

from __future__ import annotations

import math


def gcd_vector(v) -> int:
    """gcd of the absolute values of the entries (0 for the zero vector)."""
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    return g


def _normalize_sign(v):
    """Flip signs so the first nonzero entry is positive (deterministic)."""
    for x in v:
        if x != 0:
            return v if x > 0 else [-a for a in v]
    return v


def row_echelon_with_transform(mat):
    """Reduce ``mat`` to integer row echelon form by unimodular row operations.

    Returns (H, U, rank) with U @ mat == H, U unimodular, and the last
    ``len(mat) - rank`` rows of H identically zero.
    """
    work = [list(row) for row in mat]
    m = len(work)
    ncols = len(work[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if work[i][c] != 0]
            if not nz:
                break
            ip = min(nz, key=lambda i: (abs(work[i][c]), i))
            if ip != r:
                work[r], work[ip] = work[ip], work[r]
                U[r], U[ip] = U[ip], U[r]
            clean = True
            for i in range(r + 1, m):
                if work[i][c] == 0:
                    continue
                q = work[i][c] // work[r][c]
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                if work[i][c] != 0:
                    clean = False
            if clean:
                break
        if r < m and work[r][c] != 0:
            r += 1
    return work, U, r


def size_reduce(vectors):
    """Lagrange-style size reduction of a lattice basis (deterministic).

    Repeatedly subtracts the nearest-integer projection of each vector on
    every other one while that strictly shrinks its Euclidean norm.  Basis
    property is preserved (elementary unimodular operations); the result
    has much shorter vectors, which downstream keeps the derivative order
    of the binomial operators low.
    """
    vecs = [list(v) for v in vectors]

    def dot(x, y):
        return sum(a * b for a, b in zip(x, y))

    changed = True
    while changed:
        changed = False
        for i in range(len(vecs)):
            for j in range(len(vecs)):
                if i == j:
                    continue
                den = dot(vecs[j], vecs[j])
                if den == 0:
                    continue
                num = dot(vecs[i], vecs[j])
                # nearest integer to num/den, ties toward zero
                c = (2 * num + den) // (2 * den) if num >= 0 else \
                    -((-2 * num + den) // (2 * den))
                if c == 0:
                    continue
                candidate = [a - c * b for a, b in zip(vecs[i], vecs[j])]
                if dot(candidate, candidate) < dot(vecs[i], vecs[i]):
                    vecs[i] = candidate
                    changed = True
    return vecs


def kernel_basis_of_columns(mat):
    """Primitive Z-basis of {v : mat @ v = 0} for an integer matrix.

    The lattice of integer kernel vectors is saturated, and the returned
    vectors are a basis of it, hence automatically primitive; the basis is
    size-reduced and signs are normalized so each vector's first nonzero
    entry is positive.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    transposed = [[mat[i][j] for i in range(nrows)] for j in range(ncols)]
    _, U, rank = row_echelon_with_transform(transposed)
    kernel = []
    for v in size_reduce(U[rank:ncols]):
        v = _normalize_sign(v)
        g = gcd_vector(v)
        if g > 1:  # cannot happen for a saturated lattice; keep it safe
            v = [a // g for a in v]
        kernel.append(tuple(v))
    return kernel


def integer_rank(mat) -> int:
    """Rank of an integer matrix, computed exactly."""
    _, _, rank = row_echelon_with_transform(mat)
    return rank


def det_int(mat) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
