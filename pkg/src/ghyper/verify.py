"""Verification suites: executable forms of the structural claims about J.

Suite thm1 checks membership in the annihilator system (differentiation
under the integral sign, Euler residuals, binomial box residuals by finite
differences).  Suite thm4 checks the group side (binomial vanishing on the
monomial-map image, gl(n) first-order residuals, determinant covariance and
unimodular invariance).  Suite thm2 probes the singularity locus: |J| blows
up like det^(-1/2) toward the discriminant and stays analytic off it.

Every check records residual, scale and the tolerance it was judged at;
reports are pure functions of (seed, config) so repeated runs serialize to
identical bytes.  Pass criteria are relative except where the target is 0
by symmetry, in which case the integral's own magnitude is the scale.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import jsonio
from .errors import DecayError, DomainError, StencilError
from .fd import mixed_partial
from .gaussian import gaussian_value
from .glaction import infinitesimal_action, matrix_exp, substitute
from .invariants import binary_discriminant, singularity_probe
from .kernel import active_kernel_name
from .monomials import (MonomialBasis, compositions, enumerate_monomials,
                        veronese_point)
from .operators import GkzSystem, apply_operator, gkz_system
from .quadrature import (QuadratureConfig, derivative_moments, integrate,
                         require_decay)

# Frozen tolerances (from the double-precision error model of the central
# differences and the quadrature a-posteriori behavior).
TOL_FD = 1e-4        # finite-difference-based identities
TOL_MOMENT = 1e-5    # moment-route identities
TOL_GROUP = 1e-5     # group covariance / invariance defects
TOL_EXACT = 1e-12    # identities that are exact up to roundoff
TOL_CLOSED_FORM = 1e-5

STANDARD_CASES = ((1, 4), (1, 6), (2, 2), (2, 4), (3, 2))
FD_MAX_ORDER = 4

PROBE_WINDOW_ON = (-0.55, -0.45)
PROBE_WINDOW_OFF = (-0.05, 0.05)


def default_config(n: int) -> QuadratureConfig:
    """Verifier quadrature settings per dimension.

    The loose relative tolerances exploit the double-exponential rule's
    superexponential convergence: the level that first meets them is one
    refinement past machine-accurate, so values are far more accurate than
    the stopping threshold suggests (cheaply for n = 3).
    """
    if n == 1:
        return QuadratureConfig(nodes_per_axis=17, refinement_levels=7,
                                relative_tolerance=1e-9)
    if n == 2:
        return QuadratureConfig(nodes_per_axis=17, refinement_levels=6,
                                relative_tolerance=1e-8)
    if n == 3:
        return QuadratureConfig(nodes_per_axis=17, refinement_levels=5,
                                relative_tolerance=3e-8)
    raise DomainError(f"no verifier config for n={n}")


def probe_config(n: int = 2) -> QuadratureConfig:
    """Settings for singularity probes (near-degenerate, wide integrands)."""
    if n == 3:
        return QuadratureConfig(nodes_per_axis=17, refinement_levels=6,
                                relative_tolerance=1e-3)
    return QuadratureConfig(nodes_per_axis=17, refinement_levels=8,
                            relative_tolerance=1e-5)


def config_digest(config: QuadratureConfig) -> str:
    payload = json.dumps(asdict(config), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CheckRecord:
    name: str
    status: str              # "pass" | "fail" | "skip"
    residual: float
    scale: float
    tolerance: float
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status,
                "residual": float(self.residual),
                "scale": float(self.scale),
                "tolerance": float(self.tolerance), "note": self.note}


@dataclass
class VerificationReport:
    suite: str
    case: dict
    checks: list[CheckRecord] = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "case": self.case,
                "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks],
                "environment": self.environment}


def _relative_check(name, residual, scale, tolerance, note="") -> CheckRecord:
    scale = max(float(scale), np.finfo(float).tiny)
    status = "pass" if residual <= tolerance * scale else "fail"
    return CheckRecord(name=name, status=status, residual=float(residual),
                       scale=float(scale), tolerance=float(tolerance),
                       note=note)


def _case_dict(basis: MonomialBasis, a=None, label=None) -> dict:
    case = {"n": basis.n, "d": basis.d}
    if a is not None:
        case["a"] = [[float(z.real), float(z.imag)]
                     for z in np.asarray(a, dtype=complex)]
    if label:
        case.update(label)
    return case


def _environment(config: QuadratureConfig) -> dict:
    return {"schema": jsonio.SCHEMA,
            "quadrature": asdict(config),
            "config_sha256": config_digest(config),
            "kernel": active_kernel_name()}


def anchor_coefficients(basis: MonomialBasis) -> np.ndarray:
    """Coefficients of -(x_1^2 + ... + x_n^2)^(d/2), a strictly decaying
    anchor for rejection sampling (d must be even)."""
    if basis.d % 2:
        raise DomainError("anchors exist for even d only")
    half = basis.d // 2
    a = np.zeros(basis.size, dtype=complex)
    for beta in compositions(half, basis.n):
        coeff = math.factorial(half)
        for x in beta:
            coeff //= math.factorial(x)
        k = tuple(2 * x for x in beta)
        a[basis.index(k)] = -float(coeff)
    return a


def sample_coefficients(basis: MonomialBasis, rng,
                        config: QuadratureConfig | None = None,
                        *, perturbation: float = 0.2,
                        max_tries: int = 100) -> np.ndarray:
    """Random decay-valid coefficients near the negative-definite anchor."""
    from .quadrature import decay_check
    config = config or default_config(basis.n)
    anchor = anchor_coefficients(basis)
    for _ in range(max_tries):
        z = rng.standard_normal(basis.size) + 1j * rng.standard_normal(
            basis.size)
        norm = np.linalg.norm(z)
        if norm > 0:
            z *= perturbation * rng.uniform() / norm
        a = anchor + z
        if decay_check(basis, a, config).valid:
            return a
    raise DecayError(f"no decay-valid sample found in {max_tries} tries "
                     f"around the (n={basis.n}, d={basis.d}) anchor")


def verify_theorem1(basis: MonomialBasis, a,
                    config: QuadratureConfig | None = None, *,
                    system: GkzSystem | None = None,
                    label=None) -> VerificationReport:
    """Annihilator-system membership at one coefficient vector.

    Runs (i) the FD-vs-moment cross-check of dJ/da_k for every k, (ii) the
    Euler residual on every axis via the moment route, (iii) FD residuals
    of every box operator of total order <= 4 (higher orders are covered
    structurally and by the moment identities), and for d = 2 the closed
    form cross-check.
    """
    config = config or default_config(basis.n)
    a = np.asarray(a, dtype=complex)
    require_decay(basis, a, config)
    system = system or gkz_system(basis)
    report = VerificationReport(suite="thm1",
                                case=_case_dict(basis, a, label),
                                environment=_environment(config))

    j_val, partials = derivative_moments(basis, a, config)
    j_mag = abs(j_val.value)
    grad = np.array([p.value for p in partials])

    def phi(point):
        return integrate(basis, point, config).value

    # (i) differentiation under the integral sign, coefficient by coefficient
    for k in range(basis.size):
        multi = [0] * basis.size
        multi[k] = 1
        try:
            fd_val, _ = mixed_partial(phi, a, multi)
        except StencilError as exc:
            report.checks.append(CheckRecord(
                name=f"dJ_da{k}_fd_vs_moment", status="skip", residual=0.0,
                scale=j_mag, tolerance=TOL_FD, note=str(exc)))
            continue
        report.checks.append(_relative_check(
            f"dJ_da{k}_fd_vs_moment", abs(fd_val - grad[k]),
            max(abs(grad[k]), j_mag), TOL_FD))

    # (ii) Euler residuals (moment route): sum_k k_i a_k dJ/da_k + J = 0
    for axis in range(basis.n):
        weights = np.array([k[axis] for k in basis.monomials], dtype=float)
        terms = weights * a * grad
        residual = abs(terms.sum() + j_val.value)
        report.checks.append(_relative_check(
            f"euler_axis{axis + 1}", residual, j_mag, TOL_MOMENT))

    # (iii) box operator residuals by finite differences, order <= 4
    for idx, op in enumerate(system.box_operators):
        structural = _box_structural_defect(basis, op)
        report.checks.append(CheckRecord(
            name=f"box{idx}_structural", status="pass" if structural == 0
            else "fail", residual=float(structural), scale=1.0,
            tolerance=0.0, note="A@u == A@v, exact integers"))
        if op.order > FD_MAX_ORDER:
            report.checks.append(CheckRecord(
                name=f"box{idx}_fd", status="skip", residual=0.0, scale=1.0,
                tolerance=TOL_FD,
                note=f"order {op.order} > {FD_MAX_ORDER}; covered "
                     "structurally and by the moment identities"))
            continue
        try:
            applied = apply_operator(op, phi, a)
        except StencilError as exc:
            report.checks.append(CheckRecord(
                name=f"box{idx}_fd", status="skip", residual=0.0, scale=1.0,
                tolerance=TOL_FD, note=str(exc)))
            continue
        report.checks.append(_relative_check(
            f"box{idx}_fd", abs(applied.value), applied.scale, TOL_FD))

    if basis.d == 2:
        closed = gaussian_value(basis, a)
        report.checks.append(_relative_check(
            "closed_form_gaussian", abs(j_val.value - closed), abs(closed),
            TOL_CLOSED_FORM))
    return report


def _box_structural_defect(basis: MonomialBasis, op) -> int:
    by_sign = {1: None, -1: None}
    for term in op.terms:
        key = 1 if term.coeff_const == 1 else -1
        by_sign[key] = term.derivative
    u, v = by_sign[1], by_sign[-1]
    defect = 0
    for row in basis.a_matrix:
        lhs = sum(r * x for r, x in zip(row, u))
        rhs = sum(r * x for r, x in zip(row, v))
        defect += abs(lhs - rhs)
    return defect


def verify_theorem4(basis: MonomialBasis, a,
                    config: QuadratureConfig | None = None, *,
                    trials: int = 20, veronese_trials: int = 100,
                    rng=None, label=None) -> VerificationReport:
    """Group-structure suite at one coefficient vector.

    (i) binomial vanishing on random monomial-map points per toric
    relation, (ii) first-order gl(n) residuals for the full E_ij basis via
    the moment route, (iii) det(g) J(sigma_g a) = J(a) for random real g
    near the identity, (iv) the same with det g = 1.  When sigma_g a fails
    the decay check, g is pulled toward the identity (up to 8 halvings of
    the generator) before the trial is skipped.
    """
    from .monomials import toric_relations
    from .quadrature import decay_check
    config = config or default_config(basis.n)
    rng = rng if rng is not None else np.random.default_rng(0)
    a = np.asarray(a, dtype=complex)
    require_decay(basis, a, config)
    report = VerificationReport(suite="thm4",
                                case=_case_dict(basis, a, label),
                                environment=_environment(config))

    # (i) binomial vanishing on the monomial-map image
    relations = toric_relations(basis)
    for ridx, rel in enumerate(relations):
        worst = 0.0
        for _ in range(veronese_trials):
            radius = np.exp(rng.uniform(np.log(0.5), np.log(2.0), basis.n))
            phase = rng.uniform(0.0, 2.0 * np.pi, basis.n)
            x = radius * np.exp(1j * phase)
            y = veronese_point(x, basis)
            yu = np.prod(y ** np.asarray(rel.u))
            yv = np.prod(y ** np.asarray(rel.v))
            defect = abs(yu - yv) / max(abs(yu), abs(yv))
            worst = max(worst, defect)
        report.checks.append(_relative_check(
            f"binomial_vanishing_rel{ridx}", worst, 1.0, TOL_EXACT,
            note=f"{veronese_trials} random points, annulus 0.5<=|x|<=2"))

    # (ii) gl(n) basis residuals via one batched moment pass
    j_val, partials = derivative_moments(basis, a, config)
    j_mag = abs(j_val.value)
    grad = np.array([p.value for p in partials])
    for i in range(basis.n):
        for j in range(basis.n):
            x_mat = [[1 if (r, c) == (i, j) else 0 for c in range(basis.n)]
                     for r in range(basis.n)]
            m_x = infinitesimal_action(basis, x_mat).matrix
            m_x = np.vectorize(complex)(m_x).astype(complex)
            trace = 1.0 if i == j else 0.0
            residual = abs((m_x @ a) @ grad + trace * j_val.value)
            report.checks.append(_relative_check(
                f"lie_residual_E{i + 1}{j + 1}", residual, j_mag, TOL_FD))

    # (iii)+(iv) group-level covariance and unimodular invariance
    for kind in ("covariance", "sl_invariance"):
        for trial in range(trials):
            x_mat = rng.uniform(-0.15, 0.15, (basis.n, basis.n))
            if kind == "sl_invariance":
                x_mat -= np.trace(x_mat) / basis.n * np.eye(basis.n)
            name = f"{kind}_trial{trial}"
            placed = False
            for _ in range(9):
                g = matrix_exp(x_mat)
                a_g = substitute(basis, g, a)
                if decay_check(basis, a_g, config).valid:
                    placed = True
                    break
                x_mat = x_mat / 2.0
            if not placed:
                report.checks.append(CheckRecord(
                    name=name, status="skip", residual=0.0, scale=j_mag,
                    tolerance=TOL_GROUP,
                    note="decay failed after 8 halvings of the generator"))
                continue
            j_g = integrate(basis, a_g, config).value
            det_g = float(np.linalg.det(g))
            residual = abs(det_g * j_g - j_val.value)
            report.checks.append(_relative_check(
                name, residual, j_mag, TOL_GROUP,
                note=f"det(g) = {det_g!r}"))
    return report


def _quadratic_probe_vectors(n: int):
    """(a_star on the discriminant, step direction, off-discriminant pair)."""
    basis = enumerate_monomials(n, 2)
    if n == 2:
        a_on = np.array([-1.0, -2.0, -1.0], dtype=complex)
        delta_on = np.zeros(basis.size, dtype=complex)
        delta_on[basis.index((1, 1))] = 1.0
        a_off = np.array([-1.0, 0.0, -1.0], dtype=complex)
        delta_off = np.zeros(basis.size, dtype=complex)
        delta_off[basis.index((1, 1))] = 0.5
    elif n == 3:
        a_on = np.zeros(basis.size, dtype=complex)
        a_on[basis.index((2, 0, 0))] = -1.0
        a_on[basis.index((0, 2, 0))] = -1.0
        delta_on = np.zeros(basis.size, dtype=complex)
        delta_on[basis.index((0, 0, 2))] = -1.0
        a_off = anchor_coefficients(basis)
        delta_off = np.zeros(basis.size, dtype=complex)
        delta_off[basis.index((1, 1, 0))] = 0.3
    else:
        raise DomainError("quadratic probes are provided for n in {2, 3}")
    return basis, a_on, delta_on, a_off, delta_off


def verify_theorem2(family: str = "quadratic",
                    config: QuadratureConfig | None = None, *,
                    n: int = 2, label=None) -> VerificationReport:
    """Singularity-locus suite for one closed family.

    quadratic: the probe toward a rank-deficient quadric must fit the
    det^(-1/2) exponent (window [-0.55, -0.45]); an off-discriminant probe
    must fit ~0.  binary-quartic: |J| must grow monotonically along the
    last four probe points toward a degenerate quartic (qualitative; no
    closed form is asserted).
    """
    if family == "quadratic":
        basis, a_on, d_on, a_off, d_off = _quadratic_probe_vectors(n)
        config = config or probe_config(basis.n)

        def j_eval(point):
            return integrate(basis, point, config).value

        report = VerificationReport(
            suite="thm2", case=_case_dict(basis, label=dict(
                {"family": family}, **(label or {}))),
            environment=_environment(config))
        on = singularity_probe(j_eval, a_on, d_on)
        report.checks.append(CheckRecord(
            name="discriminant_approach_exponent",
            status="pass" if PROBE_WINDOW_ON[0] <= on.exponent
            <= PROBE_WINDOW_ON[1] else "fail",
            residual=float(on.exponent), scale=1.0, tolerance=0.05,
            note=f"window {PROBE_WINDOW_ON}"))
        off = singularity_probe(j_eval, a_off, d_off)
        report.checks.append(CheckRecord(
            name="off_discriminant_exponent",
            status="pass" if PROBE_WINDOW_OFF[0] <= off.exponent
            <= PROBE_WINDOW_OFF[1] else "fail",
            residual=float(off.exponent), scale=1.0, tolerance=0.05,
            note=f"window {PROBE_WINDOW_OFF}"))
        return report

    if family == "binary-quartic":
        basis = enumerate_monomials(2, 4)
        config = config or probe_config(basis.n)
        # a_star = -(x^2 - y^2)^2 lies on the discriminant (double roots);
        # stepping by -(x^2 + y^2)^2 keeps the path decay-valid for t > 0.
        a_star = np.zeros(basis.size, dtype=complex)
        a_star[basis.index((4, 0))] = -1.0
        a_star[basis.index((2, 2))] = 2.0
        a_star[basis.index((0, 4))] = -1.0
        delta = np.zeros(basis.size, dtype=complex)
        delta[basis.index((4, 0))] = -1.0
        delta[basis.index((2, 2))] = -2.0
        delta[basis.index((0, 4))] = -1.0

        def j_eval(point):
            return integrate(basis, point, config).value

        report = VerificationReport(
            suite="thm2", case=_case_dict(basis, label=dict(
                {"family": family}, **(label or {}))),
            environment=_environment(config))
        disc = binary_discriminant(basis, [int(z.real) for z in a_star])
        report.checks.append(CheckRecord(
            name="anchor_on_discriminant",
            status="pass" if disc.value == 0 else "fail",
            residual=float(abs(complex(disc.value))), scale=1.0,
            tolerance=0.0, note="exact rational discriminant"))
        probe = singularity_probe(j_eval, a_star, delta)
        tail = probe.abs_values[-4:]
        monotone = all(tail[i] < tail[i + 1] for i in range(len(tail) - 1))
        report.checks.append(CheckRecord(
            name="growth_toward_discriminant",
            status="pass" if monotone else "fail",
            residual=float(probe.exponent), scale=1.0, tolerance=0.0,
            note="|J| strictly increasing over the last 4 probe points"))
        return report

    raise DomainError(f"unknown family {family!r}")


def _sorted_reports(reports) -> list[VerificationReport]:
    def key(r):
        case = r.case
        return (r.suite, case.get("n", 0), case.get("d", 0),
                case.get("sample", -1), case.get("family", ""))
    return sorted(reports, key=key)


def run_suite(suite: str, seed: int = 0,
              config: QuadratureConfig | None = None, *,
              samples: int = 5, system: GkzSystem | None = None,
              cases=None) -> list[VerificationReport]:
    """One named suite over the standard case battery, deterministically.

    Per-case generators are seeded by (seed, n, d, suite tag) so cases are
    independent of each other and of the iteration order.  ``cases``
    restricts the battery to a subset of (n, d) pairs.
    """
    reports = []
    case_list = tuple(cases) if cases is not None else STANDARD_CASES
    if suite in ("thm1", "thm4"):
        for n, d in case_list:
            basis = enumerate_monomials(n, d)
            cfg = config or default_config(n)
            rng = np.random.default_rng([seed, n, d, 1])
            for sample in range(samples):
                a = sample_coefficients(basis, rng, cfg)
                label = {"seed": seed, "sample": sample}
                if suite == "thm1":
                    use_system = system if (system is not None
                                            and system.basis == basis) \
                        else None
                    reports.append(verify_theorem1(
                        basis, a, cfg, system=use_system, label=label))
                else:
                    trials = 20 if n <= 2 else 5
                    rng4 = np.random.default_rng([seed, n, d, 4, sample])
                    reports.append(verify_theorem4(
                        basis, a, cfg, trials=trials, rng=rng4, label=label))
    elif suite == "thm2":
        reports.append(verify_theorem2("quadratic", config, n=2,
                                       label={"seed": seed}))
        reports.append(verify_theorem2("quadratic", config, n=3,
                                       label={"seed": seed}))
        reports.append(verify_theorem2("binary-quartic", config,
                                       label={"seed": seed}))
    else:
        raise DomainError(f"unknown suite {suite!r}")
    return _sorted_reports(reports)


def run_all(seed: int = 0, config: QuadratureConfig | None = None, *,
            samples: int = 5, cases=None) -> list[VerificationReport]:
    """All suites over the standard battery; deterministic given the seed."""
    reports = []
    for suite in ("thm1", "thm2", "thm4"):
        reports.extend(run_suite(suite, seed, config, samples=samples,
                                 cases=cases))
    return _sorted_reports(reports)


def reports_document(reports, *, suite: str, seed: int) -> dict:
    return {"schema": jsonio.SCHEMA, "suite": suite, "seed": seed,
            "reports": [r.to_dict() for r in reports],
            "passed": all(r.passed for r in reports)}


def reports_json(reports, *, suite: str, seed: int) -> str:
    return jsonio.dumps_canonical(reports_document(reports, suite=suite,
                                                   seed=seed))
