import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghyper import (DomainError, SizeLimitError, enumerate_monomials,
                    kernel_basis, toric_relations, veronese_point)
from ghyper.monomials import (ToricRelation, a_matrix_rank, basis_document,
                              basis_from_document, basis_size)


def brute_force_monomials(n, d):
    return {k for k in itertools.product(range(d + 1), repeat=n)
            if sum(k) == d}


def test_enumerate_2_2_exhaustive():
    basis = enumerate_monomials(2, 2)
    assert basis.monomials == ((2, 0), (1, 1), (0, 2))
    assert basis.size == 3
    assert basis.a_matrix == ((2, 1, 0), (0, 1, 2))


def test_enumerate_1_4_single():
    basis = enumerate_monomials(1, 4)
    assert basis.monomials == ((4,),)


def test_enumerate_3_3_matches_brute_force():
    basis = enumerate_monomials(3, 3)
    assert basis.size == 10
    assert set(basis.monomials) == brute_force_monomials(3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6))
def test_basis_invariants(n, d):
    basis = enumerate_monomials(n, d)
    assert basis.size == math.comb(n + d - 1, d)
    assert len(set(basis.monomials)) == basis.size
    for col in range(basis.size):
        assert sum(row[col] for row in basis.a_matrix) == d
    # deterministic: a second enumeration gives the identical ordering
    assert enumerate_monomials(n, d).monomials == basis.monomials


def test_index_lookup():
    basis = enumerate_monomials(2, 2)
    assert basis.index((1, 1)) == 1
    with pytest.raises(DomainError):
        basis.index((2, 1))


def test_domain_and_cap_errors():
    with pytest.raises(DomainError):
        enumerate_monomials(0, 2)
    with pytest.raises(DomainError):
        enumerate_monomials(2, 0)
    with pytest.raises(SizeLimitError):
        enumerate_monomials(30, 30)
    assert basis_size(30, 30) > 10_000


def test_kernel_2_2():
    basis = enumerate_monomials(2, 2)
    kern = kernel_basis(basis)
    assert kern == [(1, -2, 1)]


def test_kernel_1_4_empty():
    assert kernel_basis(enumerate_monomials(1, 4)) == []


def test_kernel_2_3_rank_two():
    basis = enumerate_monomials(2, 3)
    kern = kernel_basis(basis)
    assert len(kern) == basis.size - a_matrix_rank(basis) == 2
    # brute-force oracle: every small integer kernel vector lies in the span
    brute = []
    rows = basis.a_matrix
    for m in itertools.product(range(-2, 3), repeat=basis.size):
        if any(m) and all(sum(r * x for r, x in zip(row, m)) == 0
                          for row in rows):
            brute.append(m)
    assert brute, "sanity: the brute-force set must be nonempty"
    basis_mat = np.array(kern, dtype=float).T
    for m in brute:
        coeffs, *_ = np.linalg.lstsq(basis_mat, np.array(m, float),
                                     rcond=None)
        assert np.allclose(basis_mat @ coeffs, m, atol=1e-9)
        assert np.allclose(coeffs, np.round(coeffs), atol=1e-9)


@pytest.mark.parametrize("n,d", [(2, 2), (2, 4), (3, 2), (2, 6)])
def test_kernel_exactness_and_primitivity(n, d):
    basis = enumerate_monomials(n, d)
    for m in kernel_basis(basis):
        for row in basis.a_matrix:
            assert sum(r * x for r, x in zip(row, m)) == 0
        assert math.gcd(*(abs(x) for x in m)) == 1


def test_sign_split_example():
    basis = enumerate_monomials(2, 2)
    rel = toric_relations(basis)[0]
    assert rel.u == (1, 0, 1)
    assert rel.v == (0, 2, 0)


def test_empty_kernel_gives_no_relations():
    assert toric_relations(enumerate_monomials(1, 6)) == []


@pytest.mark.parametrize("n,d", [(2, 2), (2, 4), (3, 2)])
def test_relation_invariants(n, d):
    basis = enumerate_monomials(n, d)
    for rel in toric_relations(basis):
        rel.validate(basis)  # raises on any violated invariant


def test_veronese_examples():
    basis = enumerate_monomials(2, 2)
    assert np.allclose(veronese_point([1, 1], basis), [1, 1, 1])
    assert np.allclose(veronese_point([2, 0], basis), [4, 0, 0])


def test_veronese_exponent_bookkeeping():
    # y^u and y^v both equal x^(A@u) = x^(A@v): check against the direct
    # power computation, which is the independent bookkeeping oracle.
    rng = np.random.default_rng(3)
    for n, d in [(2, 2), (2, 4), (3, 2)]:
        basis = enumerate_monomials(n, d)
        relations = toric_relations(basis)
        for _ in range(10):
            x = rng.uniform(0.5, 2.0, n) * np.exp(
                1j * rng.uniform(0, 2 * np.pi, n))
            y = veronese_point(x, basis)
            for rel in relations:
                au = [sum(u * k[i] for u, k in zip(rel.u, basis.monomials))
                      for i in range(n)]
                av = [sum(v * k[i] for v, k in zip(rel.v, basis.monomials))
                      for i in range(n)]
                assert au == av
                direct = np.prod([xi ** e for xi, e in zip(x, au)])
                yu = np.prod(y ** np.asarray(rel.u))
                yv = np.prod(y ** np.asarray(rel.v))
                assert abs(yu - direct) <= 1e-10 * abs(direct)
                assert abs(yv - direct) <= 1e-10 * abs(direct)


@pytest.mark.parametrize("n,d", [(2, 2), (2, 4), (3, 2)])
def test_binomial_vanishing_property(n, d):
    basis = enumerate_monomials(n, d)
    relations = toric_relations(basis)
    rng = np.random.default_rng(11)
    for _ in range(100):
        radius = np.exp(rng.uniform(np.log(0.5), np.log(2.0), n))
        x = radius * np.exp(1j * rng.uniform(0, 2 * np.pi, n))
        y = veronese_point(x, basis)
        for rel in relations:
            yu = np.prod(y ** np.asarray(rel.u))
            yv = np.prod(y ** np.asarray(rel.v))
            assert abs(yu - yv) <= 1e-12 * max(abs(yu), abs(yv))


def test_relation_validate_rejects_bad():
    basis = enumerate_monomials(2, 2)
    with pytest.raises(DomainError):
        ToricRelation(u=(1, 1, 0), v=(0, 1, 1)).validate(basis)  # overlap
    with pytest.raises(DomainError):
        ToricRelation(u=(2, 0, 2), v=(0, 4, 0)).validate(basis)  # gcd 2
    with pytest.raises(DomainError):
        ToricRelation(u=(1, 0, 0), v=(0, 1, 0)).validate(basis)  # A u != A v


def test_json_document_round_trip():
    basis = enumerate_monomials(2, 4)
    relations = toric_relations(basis)
    doc = basis_document(basis, relations)
    assert doc["schema"] == "ghyper/1"
    basis2, relations2 = basis_from_document(doc)
    assert basis2 == basis
    assert relations2 == relations


def test_document_rejects_wrong_order():
    doc = basis_document(enumerate_monomials(2, 2))
    doc["monomials"] = list(reversed(doc["monomials"]))
    with pytest.raises(DomainError):
        basis_from_document(doc)
