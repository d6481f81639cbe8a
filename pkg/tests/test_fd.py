import numpy as np
import pytest

from ghyper import DecayError, StencilError, UnsupportedOrderError
from ghyper.fd import mixed_partial


def f(a):
    # smooth test function with easily written derivatives
    return np.exp(0.3 * a[0]) * (a[1] + 2.0) ** 3


def test_first_derivatives():
    a = np.array([0.5, 0.25], dtype=complex)
    v0, e0 = mixed_partial(f, a, (1, 0))
    assert v0 == pytest.approx(0.3 * f(a), rel=1e-10)
    v1, _ = mixed_partial(f, a, (0, 1))
    assert v1 == pytest.approx(3 * np.exp(0.15) * 2.25 ** 2, rel=1e-10)
    assert e0 >= 0


def test_second_and_mixed():
    a = np.array([0.5, 0.25], dtype=complex)
    v, _ = mixed_partial(f, a, (2, 0))
    assert v == pytest.approx(0.09 * f(a), rel=1e-8)
    v, _ = mixed_partial(f, a, (1, 1))
    assert v == pytest.approx(0.3 * 3 * np.exp(0.15) * 2.25 ** 2, rel=1e-8)


def test_third_and_fourth_order():
    a = np.array([0.5, 0.25], dtype=complex)
    v, _ = mixed_partial(f, a, (0, 3))
    assert v == pytest.approx(6 * np.exp(0.15), rel=1e-6)
    v, _ = mixed_partial(f, a, (2, 2))
    assert v == pytest.approx(0.09 * 6 * np.exp(0.15) * 2.25, rel=1e-5)
    v, _ = mixed_partial(f, a, (0, 4))
    assert abs(v) <= 1e-4  # cubic has vanishing 4th derivative


def test_order_zero_returns_value():
    a = np.array([1.0, 1.0], dtype=complex)
    v, e = mixed_partial(f, a, (0, 0))
    assert v == f(a)
    assert e == 0.0


def test_order_cap_and_negative_entries():
    a = np.zeros(2, dtype=complex)
    with pytest.raises(UnsupportedOrderError):
        mixed_partial(f, a, (3, 2))
    with pytest.raises(UnsupportedOrderError):
        mixed_partial(f, a, (-1, 2))


def test_error_estimate_is_apposteriori():
    a = np.array([0.5, 0.25], dtype=complex)
    v, err = mixed_partial(f, a, (1, 0))
    assert abs(v - 0.3 * f(a)) <= max(err * 50, 1e-9 * abs(v))


def test_decay_error_becomes_stencil_error():
    def phi(a):
        if a[0].real > 0.5:
            raise DecayError("left the valid region")
        return a[0] ** 2

    with pytest.raises(StencilError):
        mixed_partial(phi, np.array([0.5], dtype=complex), (1,))
