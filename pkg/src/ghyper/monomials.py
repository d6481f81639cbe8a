"""Monomial bases of fixed total degree and their integer toric relations.

A basis collects every exponent vector k in Z^n with k_i >= 0 and sum(k) = d,
ordered by descending graded reverse-lexicographic order.  The n x |A| matrix
whose columns are these vectors has an integer kernel; each primitive kernel
vector m splits into nonnegative parts m = u - v with A@u = A@v, the toric
relations realized downstream as binomial differential operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, SizeLimitError
from .intlinalg import gcd_vector, integer_rank, kernel_basis_of_columns

DEFAULT_BASIS_CAP = 10_000


def basis_size(n: int, d: int) -> int:
    """Number of degree-d monomials in n variables: C(n+d-1, d)."""
    return math.comb(n + d - 1, d)


def compositions(d: int, n: int):
    """Yield all tuples of n nonnegative integers summing to d."""
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in compositions(d - first, n - 1):
            yield (first,) + rest


def _grevlex_descending_key(k):
    # Descending grevlex == ascending lexicographic order of reversed tuples.
    return tuple(reversed(k))


@dataclass(frozen=True)
class MonomialBasis:
    """The ordered exponent set for (n, d) and its integer matrix."""

    n: int
    d: int
    monomials: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.monomials)

    @cached_property
    def a_matrix(self) -> tuple[tuple[int, ...], ...]:
        """n x |A| integer matrix; column j is the exponent vector j."""
        return tuple(
            tuple(k[i] for k in self.monomials) for i in range(self.n)
        )

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {k: j for j, k in enumerate(self.monomials)}

    def index(self, k) -> int:
        """Position of exponent vector ``k`` in the fixed order."""
        try:
            return self._index[tuple(k)]
        except KeyError:
            raise DomainError(f"{tuple(k)} is not a degree-{self.d} "
                              f"monomial in {self.n} variables") from None

    def __iter__(self):
        return iter(self.monomials)


def enumerate_monomials(n: int, d: int, *,
                        max_size: int = DEFAULT_BASIS_CAP) -> MonomialBasis:
    """Complete, duplicate-free, deterministically ordered basis for (n, d).

    Raises DomainError for n or d < 1 and SizeLimitError when the closed-form
    count C(n+d-1, d) exceeds ``max_size``.
    """
    if n < 1 or d < 1:
        raise DomainError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    count = basis_size(n, d)
    if count > max_size:
        raise SizeLimitError(
            f"basis for (n={n}, d={d}) has {count} monomials, "
            f"exceeding the cap {max_size}")
    monomials = sorted(compositions(d, n), key=_grevlex_descending_key)
    return MonomialBasis(n=n, d=d, monomials=tuple(monomials))


@dataclass(frozen=True)
class ToricRelation:
    """A pair of disjoint nonnegative multi-indices with A@u == A@v."""

    u: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def order(self) -> int:
        """Total derivative order of the corresponding binomial operator."""
        return max(sum(self.u), sum(self.v))

    def validate(self, basis: MonomialBasis) -> None:
        """Check every invariant exactly; raises DomainError on violation."""
        u, v = self.u, self.v
        if len(u) != basis.size or len(v) != basis.size:
            raise DomainError("relation length does not match basis size")
        if any(x < 0 for x in u) or any(x < 0 for x in v):
            raise DomainError("relation parts must be nonnegative")
        if any(x > 0 and y > 0 for x, y in zip(u, v)):
            raise DomainError("relation parts must have disjoint supports")
        if gcd_vector([x - y for x, y in zip(u, v)]) != 1:
            raise DomainError("relation u - v must be primitive")
        for row in basis.a_matrix:
            if sum(r * x for r, x in zip(row, u)) != \
                    sum(r * x for r, x in zip(row, v)):
                raise DomainError("A@u != A@v")


def kernel_basis(basis: MonomialBasis) -> list[tuple[int, ...]]:
    """Primitive Z-basis of the integer kernel of the A-matrix."""
    return kernel_basis_of_columns([list(r) for r in basis.a_matrix])


def a_matrix_rank(basis: MonomialBasis) -> int:
    return integer_rank([list(r) for r in basis.a_matrix])


def toric_relations(basis: MonomialBasis) -> list[ToricRelation]:
    """Sign-split each kernel basis vector m into m = u - v."""
    relations = []
    for m in kernel_basis(basis):
        u = tuple(x if x > 0 else 0 for x in m)
        v = tuple(-x if x < 0 else 0 for x in m)
        relations.append(ToricRelation(u=u, v=v))
    return relations


def veronese_point(x, basis: MonomialBasis) -> np.ndarray:
    """The vector (x^k)_{k in A} for a point x in C^n."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (basis.n,):
        raise DomainError(f"expected {basis.n} coordinates, got {x.shape}")
    out = np.empty(basis.size, dtype=complex)
    for j, k in enumerate(basis.monomials):
        val = 1.0 + 0.0j
        for xi, ki in zip(x, k):
            if ki:
                val *= xi ** ki
        out[j] = val
    return out


def basis_document(basis: MonomialBasis, relations=None) -> dict:
    """JSON-ready document with the basis and (optionally) its relations."""
    doc = {
        "schema": "ghyper/1",
        "n": basis.n,
        "d": basis.d,
        "monomials": [list(k) for k in basis.monomials],
    }
    if relations is not None:
        doc["relations"] = [{"u": list(r.u), "v": list(r.v)}
                            for r in relations]
    return doc


def basis_from_document(doc: dict) -> tuple[MonomialBasis, list[ToricRelation]]:
    """Inverse of basis_document; validates every relation invariant."""
    try:
        n, d = int(doc["n"]), int(doc["d"])
        monomials = tuple(tuple(int(x) for x in k) for k in doc["monomials"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed basis document: {exc}") from exc
    expected = enumerate_monomials(n, d)
    if monomials != expected.monomials:
        raise DomainError("monomial list does not match the fixed "
                          "grevlex order for (n, d)")
    relations = []
    for rel in doc.get("relations", []):
        relation = ToricRelation(u=tuple(int(x) for x in rel["u"]),
                                 v=tuple(int(x) for x in rel["v"]))
        relation.validate(expected)
        relations.append(relation)
    return expected, relations
