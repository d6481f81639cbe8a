import numpy as np
import pytest

from ghyper.kernel import active_kernel_name, available_kernels
from ghyper.monomials import enumerate_monomials
from ghyper.quadrature import _axis_rule, QuadratureConfig
from ghyper.verify import anchor_coefficients

KERNELS = available_kernels()


def workload(n, d, level=2, seed=0):
    basis = enumerate_monomials(n, d)
    xs, ws = _axis_rule(QuadratureConfig(), level)
    exps = np.asarray(basis.monomials, dtype=np.int64)
    rng = np.random.default_rng(seed)
    avals = anchor_coefficients(basis) + 0.1 * (
        rng.standard_normal(basis.size)
        + 1j * rng.standard_normal(basis.size))
    moms = np.vstack([np.zeros((1, n), dtype=np.int64), exps,
                      2 * exps[:1]])
    return xs, ws, exps, avals, moms


def test_active_kernel_reported():
    assert active_kernel_name() in KERNELS


@pytest.mark.parametrize("n,d", [(1, 4), (2, 2), (2, 4), (3, 2)])
def test_python_kernel_l1_dominates(n, d):
    xs, ws, exps, avals, moms = workload(n, d)
    vals, l1 = KERNELS["python"].tensor_sums(xs, ws, exps, avals, moms)
    assert np.all(np.abs(vals) <= l1 * (1 + 1e-12))
    assert np.all(l1 >= 0)


@pytest.mark.skipif("compiled" not in KERNELS,
                    reason="compiled kernel not built")
@pytest.mark.parametrize("n,d", [(1, 4), (1, 6), (2, 2), (2, 4), (3, 2)])
def test_kernels_agree(n, d):
    xs, ws, exps, avals, moms = workload(n, d)
    v_py, l_py = KERNELS["python"].tensor_sums(xs, ws, exps, avals, moms)
    v_cy, l_cy = KERNELS["compiled"].tensor_sums(xs, ws, exps, avals, moms)
    scale = np.maximum(np.abs(v_py), 1e-300)
    assert np.max(np.abs(v_cy - v_py) / scale) <= 5e-13
    assert np.max(np.abs(l_cy - l_py) / np.maximum(l_py, 1e-300)) <= 5e-13


@pytest.mark.parametrize("name", sorted(KERNELS))
def test_kernel_determinism(name):
    xs, ws, exps, avals, moms = workload(2, 4, level=3)
    mod = KERNELS[name]
    v1, l1 = mod.tensor_sums(xs, ws, exps, avals, moms)
    v2, l2 = mod.tensor_sums(xs, ws, exps, avals, moms)
    assert np.array_equal(v1, v2)
    assert np.array_equal(l1, l2)


def test_kernel_rejects_high_dimension():
    xs = np.linspace(-1, 1, 8)
    ws = np.ones(8)
    exps = np.zeros((1, 4), dtype=np.int64)
    avals = np.array([-1.0 + 0j])
    moms = np.zeros((1, 4), dtype=np.int64)
    for mod in KERNELS.values():
        with pytest.raises(ValueError):
            mod.tensor_sums(xs, ws, exps, avals, moms)


def test_benchmark_module_runs():
    from ghyper import bench
    rows = bench.run(repeat=1)
    assert rows
    for row in rows:
        assert row["timings"]
        if "max_rel_deviation" in row:
            assert row["max_rel_deviation"] <= 5e-13
