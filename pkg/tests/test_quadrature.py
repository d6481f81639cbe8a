import math

import numpy as np
import pytest

from ghyper import (DecayError, DomainError, OddDegreeError, decay_check,
                    enumerate_monomials, gaussian_value, integrate,
                    lie_residual, moment, moment_batch)
from ghyper.quadrature import (QuadratureConfig, derivative_moments,
                               require_decay, sphere_samples)
from ghyper.verify import default_config, sample_coefficients


def test_decay_gaussian_valid(basis22):
    report = decay_check(basis22, [-1, 0, -1])
    assert report.valid
    assert report.worst_value == pytest.approx(-1.0, abs=1e-9)


def test_decay_indefinite_invalid(basis22):
    # at (1,-1)/sqrt(2) the real part is +1/4
    report = decay_check(basis22, [-1, -2.5, -1])
    assert not report.valid
    assert report.worst_value == pytest.approx(0.25, abs=1e-3)
    with pytest.raises(DecayError):
        require_decay(basis22, [-1, -2.5, -1])


def test_decay_quartic_anchor(basis24):
    report = decay_check(basis24, [-1, 0, -2, 0, -1])
    assert report.valid
    assert report.worst_value == pytest.approx(-1.0, abs=1e-9)


def test_odd_degree_rejected():
    basis = enumerate_monomials(2, 3)
    with pytest.raises(OddDegreeError):
        decay_check(basis, [-1, 0, 0, -1])


def test_dimension_cap():
    basis = enumerate_monomials(4, 2)
    a = np.zeros(basis.size)
    a[[0, 1, 2, 3]] = -1  # placeholder values; the cap fires first
    with pytest.raises(DomainError):
        moment_batch(basis, a, [(0, 0, 0, 0)])


def test_sphere_samples_unit_norm():
    for n in (1, 2, 3):
        pts = sphere_samples(n, 64)
        assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)


def test_gaussian_product(basis22):
    result = integrate(basis22, [-1, 0, -1])
    assert result.converged
    assert abs(result.value - math.pi) <= 1e-8 * math.pi


def test_quartic_1d_gamma(basis14):
    result = integrate(basis14, [-1.0])
    truth = math.gamma(0.25) / 2
    assert abs(result.value - truth) <= 1e-7 * truth


def test_correlated_gaussian(basis22):
    result = integrate(basis22, [-1, -1, -1])
    truth = math.pi / math.sqrt(0.75)
    assert abs(result.value - truth) <= 1e-8 * truth


def test_moment_examples(basis22):
    a = [-1, 0, -1]
    odd = moment(basis22, a, (1, 0))
    assert abs(odd.value) <= 1e-12 * math.pi
    second = moment(basis22, a, (2, 0))
    assert abs(second.value - math.pi / 2) <= 1e-8 * math.pi
    zero = moment(basis22, a, (0, 0))
    direct = integrate(basis22, a)
    assert zero.value == direct.value


def test_moment_cap(basis22):
    with pytest.raises(DomainError):
        moment(basis22, [-1, 0, -1], (9, 0))  # |e| = 9 > 4*d = 8


def test_moment_requires_decay(basis22):
    with pytest.raises(DecayError):
        integrate(basis22, [-1, -2.5, -1])


def test_fd_vs_moment_property(basis22):
    from ghyper.fd import mixed_partial
    rng = np.random.default_rng(5)
    config = default_config(2)
    a = sample_coefficients(basis22, rng, config)
    j_val, partials = derivative_moments(basis22, a, config)

    def phi(point):
        return integrate(basis22, point, config).value

    for k in range(basis22.size):
        multi = [0] * basis22.size
        multi[k] = 1
        fd_val, _ = mixed_partial(phi, a, multi)
        scale = max(abs(partials[k].value), abs(j_val.value))
        assert abs(fd_val - partials[k].value) <= 1e-4 * scale


def test_integration_by_parts_euler(basis24):
    rng = np.random.default_rng(6)
    config = default_config(2)
    a = sample_coefficients(basis24, rng, config)
    j_val, partials = derivative_moments(basis24, a, config)
    for axis in range(2):
        total = sum(k[axis] * ai * p.value
                    for k, ai, p in zip(basis24.monomials, a, partials))
        assert abs(total + j_val.value) <= 1e-5 * abs(j_val.value)


def test_divergence_identity_random_x(basis22):
    rng = np.random.default_rng(7)
    config = default_config(2)
    a = sample_coefficients(basis22, rng, config)
    j_mag = abs(integrate(basis22, a, config).value)
    for _ in range(3):
        x_mat = rng.normal(size=(2, 2))
        residual = lie_residual(basis22, x_mat, a, config=config)
        assert abs(residual) <= 1e-5 * j_mag


def test_axis_permutation_symmetry(basis24):
    rng = np.random.default_rng(8)
    a = sample_coefficients(basis24, rng)
    swapped = np.empty_like(a)
    for idx, k in enumerate(basis24.monomials):
        swapped[basis24.index((k[1], k[0]))] = a[idx]
    v1 = integrate(basis24, a).value
    v2 = integrate(basis24, swapped).value
    assert abs(v1 - v2) <= 1e-12 * abs(v1)


def test_rational_stretch_map(basis22):
    config = QuadratureConfig(map="rational-stretch", nodes_per_axis=17,
                              refinement_levels=7,
                              relative_tolerance=1e-10)
    result = integrate(basis22, [-1, 0, -1], config)
    assert abs(result.value - math.pi) <= 1e-8 * math.pi


def test_nonconvergence_flagged(basis22):
    config = QuadratureConfig(nodes_per_axis=8, refinement_levels=2,
                              relative_tolerance=1e-15)
    result = integrate(basis22, [-1, 0, -1], config)
    assert not result.converged
    assert result.error_estimate > 1e-15 * math.pi
    assert result.levels_used == 2


def test_determinism_bitwise(basis24):
    rng = np.random.default_rng(9)
    a = sample_coefficients(basis24, rng)
    r1 = integrate(basis24, a)
    r2 = integrate(basis24, a)
    assert r1.value == r2.value
    assert r1.error_estimate == r2.error_estimate


def test_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(nodes_per_axis=4)
    with pytest.raises(DomainError):
        QuadratureConfig(refinement_levels=1)
    with pytest.raises(DomainError):
        QuadratureConfig(map="legendre")
    with pytest.raises(DomainError):
        QuadratureConfig(relative_tolerance=0.0)


def test_coefficient_vector_validation(basis22):
    with pytest.raises(DomainError):
        integrate(basis22, [-1, 0])
    with pytest.raises(DomainError):
        integrate(basis22, [np.nan, 0, -1])


def test_gaussian_closed_form_cross_check(basis32):
    rng = np.random.default_rng(10)
    a = sample_coefficients(basis32, rng, default_config(3))
    result = integrate(basis32, a, default_config(3))
    closed = gaussian_value(basis32, a)
    assert abs(result.value - closed) <= 1e-6 * abs(closed)


def test_moment_cap_configurable(basis22):
    # total degree 9 > default 4*d = 8, allowed when the cap is raised
    result = moment(basis22, [-1, 0, -1], (6, 3), max_total=12)
    assert abs(result.value) <= 1e-10  # odd in y


@pytest.mark.parametrize("n,d", [(1, 4), (2, 2), (2, 4)])
def test_euler_residual_ten_random_vectors(n, d):
    basis = enumerate_monomials(n, d)
    config = default_config(n)
    rng = np.random.default_rng([12, n, d])
    for _ in range(10):
        a = sample_coefficients(basis, rng, config)
        j_val, partials = derivative_moments(basis, a, config)
        for axis in range(n):
            total = sum(k[axis] * ai * p.value
                        for k, ai, p in zip(basis.monomials, a, partials))
            assert abs(total + j_val.value) <= 1e-4 * abs(j_val.value)


def test_convergence_discriminant_consistency():
    # contrapositive of the singular-locus claim: at decay-valid a whose
    # normalized discriminant is not small, the engine must converge
    from ghyper import binary_discriminant, quadratic_det
    rng = np.random.default_rng(13)
    for n, d, inv in [(2, 2, quadratic_det), (2, 4, binary_discriminant)]:
        basis = enumerate_monomials(n, d)
        config = default_config(n)
        for _ in range(10):
            a = sample_coefficients(basis, rng, config)
            unit = a / np.linalg.norm(a)
            disc = abs(complex(inv(basis, list(unit)).value))
            result = integrate(basis, a, config)
            if disc >= 0.1:
                assert result.converged, (n, d, disc)
            if not result.converged:
                assert disc < 0.1, (n, d, disc)
