"""Numerical evaluation of J(a) = integral over R^n of exp(P(a; x)) dx.

The contour is fixed to R^n and is only used when the decay predicate holds:
the real part of P must be <= -margin everywhere on the unit sphere, which
for a degree-d form bounds Re P <= -margin * |x|^d.  Odd d is rejected
outright since P(-x) = -P(x) makes decay impossible on any real contour.

Each axis is compactified by the double-exponential map x = sinh(2 sinh t)
(or a rational stretch) on a uniform midpoint grid; refinement doubles the
node count per level until two successive levels agree to the configured
relative tolerance.  The reported error estimate is the difference between
the last two levels - an a-posteriori indicator, not a bound.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import kernel
from .errors import DecayError, DomainError, OddDegreeError
from .monomials import MonomialBasis

T_RANGE = 3.0          # half-width of the t-grid; x(3.0) ~ 2.5e8
MOMENT_CAP_FACTOR = 4  # moment exponents are capped at 4*d total degree

MAP_DOUBLE_EXPONENTIAL = "double-exponential"
MAP_RATIONAL_STRETCH = "rational-stretch"


@dataclass(frozen=True)
class QuadratureConfig:
    nodes_per_axis: int = 17
    refinement_levels: int = 6
    map: str = MAP_DOUBLE_EXPONENTIAL
    sphere_samples: int = 4096
    decay_margin: float = 1e-3
    relative_tolerance: float = 1e-11

    def __post_init__(self):
        if self.nodes_per_axis < 8:
            raise DomainError("nodes_per_axis must be >= 8")
        if self.refinement_levels < 2:
            raise DomainError("need at least 2 levels for an error estimate")
        if self.map not in (MAP_DOUBLE_EXPONENTIAL, MAP_RATIONAL_STRETCH):
            raise DomainError(f"unknown map {self.map!r}")
        if self.decay_margin <= 0 or self.relative_tolerance <= 0:
            raise DomainError("decay_margin and relative_tolerance "
                              "must be positive")
        if self.sphere_samples < 2:
            raise DomainError("sphere_samples must be >= 2")

    def with_overrides(self, **kwargs) -> "QuadratureConfig":
        return replace(self, **{k: v for k, v in kwargs.items()
                                if v is not None})


@dataclass(frozen=True)
class IntegralValue:
    """A computed integral with its a-posteriori error estimate."""

    value: complex
    error_estimate: float
    config_used: QuadratureConfig
    converged: bool = True
    levels_used: int = 0


@dataclass(frozen=True)
class DecayReport:
    valid: bool
    worst_direction: tuple[float, ...]
    worst_value: float


def _coerce_coefficients(basis: MonomialBasis, a) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.shape != (basis.size,):
        raise DomainError(f"coefficient vector must have length "
                          f"{basis.size}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise DomainError("coefficient vector contains non-finite entries")
    return arr


def sphere_samples(n: int, count: int) -> np.ndarray:
    """Deterministic low-discrepancy points on the real unit sphere."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        theta = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    if n == 3:
        # Fibonacci spiral: uniform in z, golden-angle increments in phi.
        j = np.arange(count)
        z = 1.0 - (2.0 * j + 1.0) / count
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        phi = j * (np.pi * (3.0 - np.sqrt(5.0)))
        return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    raise DomainError(f"sphere sampling supports n <= 3, got n={n}")


def _form_values(basis: MonomialBasis, a: np.ndarray,
                 points: np.ndarray) -> np.ndarray:
    """P(a; x) for each row x of ``points``."""
    vals = np.zeros(points.shape[0], dtype=complex)
    for coeff, k in zip(a, basis.monomials):
        if coeff == 0:
            continue
        term = np.ones(points.shape[0])
        for i, ki in enumerate(k):
            if ki:
                term = term * points[:, i] ** ki
        vals += coeff * term
    return vals


def decay_check(basis: MonomialBasis, a, config: QuadratureConfig | None = None
                ) -> DecayReport:
    """Sample max Re P on the unit sphere; valid iff it stays <= -margin."""
    config = config or QuadratureConfig()
    if basis.d % 2 == 1:
        raise OddDegreeError(
            f"degree d={basis.d} is odd: P(-x) = -P(x), so exp(P) cannot "
            "decrease in both directions of any real ray")
    arr = _coerce_coefficients(basis, a)
    points = sphere_samples(basis.n, config.sphere_samples)
    re_vals = _form_values(basis, arr, points).real
    worst = int(np.argmax(re_vals))
    return DecayReport(valid=bool(re_vals[worst] <= -config.decay_margin),
                       worst_direction=tuple(points[worst]),
                       worst_value=float(re_vals[worst]))


def require_decay(basis: MonomialBasis, a,
                  config: QuadratureConfig | None = None) -> DecayReport:
    report = decay_check(basis, a, config)
    if not report.valid:
        raise DecayError(
            f"decay check failed: max Re P on the sphere is "
            f"{report.worst_value:.6g} at {report.worst_direction} "
            f"(needs <= -{(config or QuadratureConfig()).decay_margin:g})")
    return report


def _axis_rule(config: QuadratureConfig, level: int):
    """Mapped nodes and weights for one axis at a refinement level."""
    npts = config.nodes_per_axis * (2 ** level)
    if config.map == MAP_DOUBLE_EXPONENTIAL:
        h = 2.0 * T_RANGE / npts
        t = -T_RANGE + (np.arange(npts) + 0.5) * h
        inner = 2.0 * np.sinh(t)
        xs = np.sinh(inner)
        ws = h * 2.0 * np.cosh(inner) * np.cosh(t)
    else:  # rational stretch x = t / (1 - t^2) on the open interval (-1, 1)
        h = 2.0 / npts
        t = -1.0 + (np.arange(npts) + 0.5) * h
        xs = t / (1.0 - t * t)
        ws = h * (1.0 + t * t) / (1.0 - t * t) ** 2
    return xs, ws


def moment_batch(basis: MonomialBasis, a, exponents,
                 config: QuadratureConfig | None = None,
                 *, max_total: int | None = None,
                 skip_decay_check: bool = False) -> list[IntegralValue]:
    """Evaluate several moment integrals int x^e exp(P) dx in one grid pass.

    All requested moments share the refinement loop; the loop stops when
    every output has stabilized to the relative tolerance (measured against
    the L1 mass of the corresponding integrand, which dominates |value|).
    ``max_total`` caps the total moment degree (default 4*d).
    """
    config = config or QuadratureConfig()
    if basis.n > 3:
        raise DomainError(f"tensor quadrature is capped at n <= 3 "
                          f"(cost ~ nodes^3); got n={basis.n}")
    arr = _coerce_coefficients(basis, a)
    moms = np.asarray([[int(x) for x in e] for e in exponents],
                      dtype=np.int64).reshape(len(exponents), basis.n)
    if np.any(moms < 0):
        raise DomainError("moment exponents must be nonnegative")
    cap = MOMENT_CAP_FACTOR * basis.d if max_total is None else max_total
    if int(moms.sum(axis=1).max(initial=0)) > cap:
        raise DomainError(f"moment exponent total degree exceeds cap {cap}")
    if not skip_decay_check:
        require_decay(basis, arr, config)

    exps = np.asarray(basis.monomials, dtype=np.int64)
    prev = None
    errs = np.full(moms.shape[0], np.inf)
    converged = False
    level = 0
    for level in range(config.refinement_levels):
        xs, ws = _axis_rule(config, level)
        vals, l1 = kernel.tensor_sums(xs, ws, exps, arr, moms)
        if prev is not None:
            errs = np.abs(vals - prev)
            scale = np.maximum(l1, np.finfo(float).tiny)
            if np.all(errs <= config.relative_tolerance * scale):
                converged = True
                prev = vals
                break
        prev = vals
    return [IntegralValue(value=complex(v), error_estimate=float(e),
                          config_used=config, converged=converged,
                          levels_used=level + 1)
            for v, e in zip(prev, errs)]


def integrate(basis: MonomialBasis, a,
              config: QuadratureConfig | None = None) -> IntegralValue:
    """J(a) = integral of exp(P(a; x)) over R^n on a decay-verified contour."""
    zero = (0,) * basis.n
    return moment_batch(basis, a, [zero], config)[0]


def moment(basis: MonomialBasis, a, e,
           config: QuadratureConfig | None = None,
           *, max_total: int | None = None) -> IntegralValue:
    """Integral of x^e exp(P(a; x)); e = 0 reproduces integrate()."""
    e = tuple(int(x) for x in e)
    if len(e) != basis.n:
        raise DomainError(f"moment exponent needs {basis.n} entries")
    return moment_batch(basis, a, [e], config, max_total=max_total)[0]


def derivative_moments(basis: MonomialBasis, a,
                       config: QuadratureConfig | None = None,
                       ) -> tuple[IntegralValue, list[IntegralValue]]:
    """J together with all first coefficient derivatives dJ/da_k.

    Differentiation under the integral sign sends d/da_k to the moment with
    exponent k, so the whole gradient costs a single batched grid pass.
    """
    rows = [(0,) * basis.n] + [k for k in basis.monomials]
    out = moment_batch(basis, a, rows, config)
    return out[0], out[1:]
