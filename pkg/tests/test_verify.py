import json

import numpy as np
import pytest

from ghyper import DecayError
from ghyper.quadrature import decay_check
from ghyper.verify import (anchor_coefficients, default_config,
                           reports_json, run_suite, sample_coefficients,
                           verify_theorem1, verify_theorem2,
                           verify_theorem4)


def test_anchor_coefficients_expansion(basis24, basis32):
    # -(x^2+y^2)^2 = -x^4 - 2x^2y^2 - y^4
    assert np.array_equal(anchor_coefficients(basis24),
                          np.array([-1, 0, -2, 0, -1], dtype=complex))
    # -(x^2+y^2+z^2) in grevlex order (2,0,0),(1,1,0),(0,2,0),(1,0,1),...
    assert np.array_equal(anchor_coefficients(basis32),
                          np.array([-1, 0, -1, 0, 0, -1], dtype=complex))


def test_sampling_is_decay_valid_and_deterministic(basis24):
    config = default_config(2)
    a1 = sample_coefficients(basis24, np.random.default_rng(42), config)
    a2 = sample_coefficients(basis24, np.random.default_rng(42), config)
    assert np.array_equal(a1, a2)
    assert decay_check(basis24, a1, config).valid
    assert np.linalg.norm(a1 - anchor_coefficients(basis24)) <= 0.2 + 1e-12


def test_verify_theorem1_report_structure(basis22):
    a = sample_coefficients(basis22, np.random.default_rng(0))
    report = verify_theorem1(basis22, a, label={"seed": 0, "sample": 0})
    assert report.passed
    names = {c.name for c in report.checks}
    assert {"dJ_da0_fd_vs_moment", "euler_axis1", "euler_axis2",
            "box0_structural", "box0_fd",
            "closed_form_gaussian"} <= names
    doc = report.to_dict()
    for check in doc["checks"]:
        assert set(check) == {"name", "status", "residual", "scale",
                              "tolerance", "note"}
    assert doc["case"]["n"] == 2 and doc["case"]["d"] == 2
    assert "config_sha256" in doc["environment"]


def test_verify_theorem1_rejects_invalid(basis22):
    with pytest.raises(DecayError):
        verify_theorem1(basis22, np.array([-1, -2.5, -1], dtype=complex))


def test_verify_theorem4_report(basis22):
    a = sample_coefficients(basis22, np.random.default_rng(1))
    report = verify_theorem4(basis22, a, trials=3,
                             rng=np.random.default_rng(7))
    assert report.passed
    names = [c.name for c in report.checks]
    assert "binomial_vanishing_rel0" in names
    assert "lie_residual_E12" in names
    assert sum(1 for n in names if n.startswith("covariance_trial")) == 3
    assert sum(1 for n in names if n.startswith("sl_invariance_trial")) == 3


def test_verify_theorem2_families():
    quad = verify_theorem2("quadratic", n=2)
    assert quad.passed
    exponents = {c.name: c.residual for c in quad.checks}
    assert -0.55 <= exponents["discriminant_approach_exponent"] <= -0.45
    assert -0.05 <= exponents["off_discriminant_exponent"] <= 0.05
    quartic = verify_theorem2("binary-quartic")
    assert quartic.passed


def test_report_determinism_bytes(basis22):
    a = sample_coefficients(basis22, np.random.default_rng(3))
    r1 = verify_theorem1(basis22, a, label={"seed": 3, "sample": 0})
    r2 = verify_theorem1(basis22, a, label={"seed": 3, "sample": 0})
    b1 = reports_json([r1], suite="thm1", seed=3)
    b2 = reports_json([r2], suite="thm1", seed=3)
    assert b1 == b2
    doc = json.loads(b1)
    assert doc["schema"] == "ghyper/1"
    assert doc["passed"] is True


def test_run_suite_restricted_cases():
    reports = run_suite("thm1", seed=0, samples=1, cases=[(2, 2)])
    assert len(reports) == 1
    assert reports[0].case["n"] == 2
    assert reports[0].passed
    reports4 = run_suite("thm4", seed=0, samples=1, cases=[(1, 4)])
    assert len(reports4) == 1
    assert reports4[0].passed


def test_run_suite_same_samples_across_suites():
    r1 = run_suite("thm1", seed=5, samples=1, cases=[(2, 2)])
    r4 = run_suite("thm4", seed=5, samples=1, cases=[(2, 2)])
    assert r1[0].case["a"] == r4[0].case["a"]


def test_thm2_suite():
    reports = run_suite("thm2", seed=0)
    assert len(reports) == 3
    assert all(r.passed for r in reports)
