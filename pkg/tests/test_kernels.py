import os
import subprocess
import sys

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

from bgtransform import _pykernels, kernels
from bgtransform.errors import DomainError
from bgtransform.specfun import Sigma

mp.mp.dps = 30

needs_compiled = pytest.mark.skipif(kernels._compiled is None, reason="compiled kernels not built")


def kernel_mp(two_sigma, z, x):
    s = mp.mpf(two_sigma) / 2
    base = mp.mpf(1) / 2 - 1j * mp.mpf(x)
    c = mp.sqrt(mp.gamma(s + 0.5) / mp.gamma(s)) / (2 ** s * mp.pi ** 0.25)
    return complex(c * base ** (-(s + 0.5)) * mp.exp(z) * mp.hyp1f1(s + 0.5, 2 * s, -mp.mpc(z) / base))


@pytest.mark.parametrize("two_sigma", [1, 2, 3, 4, 5])
def test_kummer_grid_vs_mpmath(backend, two_sigma):
    s = Sigma(two_sigma)
    rng = np.random.default_rng(two_sigma)
    z = 3 * rng.uniform(-1, 1, 6) + 3j * rng.uniform(-1, 1, 6)
    x = np.array([-20.0, -1.3, 0.0, 0.4, 7.5])
    grid = kernels.kummer_grid(s, z, x)
    ref = np.array([[kernel_mp(two_sigma, complex(zi), xj) for xj in x] for zi in z])
    assert_allclose(grid, ref, rtol=1e-12, atol=1e-14)


def test_kummer_grid_large_z(backend):
    # the Euler route stays accurate where the power series would cancel
    s = Sigma(4)
    z = np.array([12j, -10 + 5j, 15.0])
    x = np.array([-0.4, 2.0])
    grid = kernels.kummer_grid(s, z, x)
    for i, zi in enumerate(z):
        for j, xj in enumerate(x):
            ref = kernel_mp(4, complex(zi), xj)
            assert abs(grid[i, j] - ref) < 1e-12 * max(1.0, np.exp(abs(zi)))


def test_kummer_grid_shift(backend):
    s = Sigma(3)
    z = np.array([1 + 1j, 2.0])
    x = np.linspace(-2, 2, 5)
    shift = np.array([0.7, -1.1])
    assert_allclose(kernels.kummer_grid(s, z, x, shift),
                    kernels.kummer_grid(s, z, x) * np.exp(-shift)[:, None], rtol=1e-14)


def test_hardy_table_shape_and_guard(backend):
    tab = kernels.hardy_table(Sigma(2), 5, np.linspace(-1, 1, 7))
    assert tab.shape == (6, 7)
    with pytest.raises(DomainError):
        kernels.hardy_table(Sigma(2), 65, [0.0])


@needs_compiled
def test_backends_agree():
    rng = np.random.default_rng(7)
    x = rng.uniform(-30, 30, 200)
    z = rng.normal(size=40) * 2 + 1j * rng.normal(size=40) * 2
    for two_sigma in (1, 2, 5):
        s = Sigma(two_sigma)
        norms = kernels.hardy_norms(s, 16)
        a, b = s.value + 0.5, float(two_sigma)
        h_py = _pykernels.hardy_table(norms, a, b, x)
        h_c = kernels._compiled.hardy_table(norms, a, b, x)
        # row n loses up to 3^n to cancellation near x = 0 in either backend
        bound = 1e-15 * 3.0 ** np.arange(17)[:, None]
        assert np.all(np.abs(h_c - h_py) <= bound)
        t, w, beta = kernels._euler_rule(s, 64)
        shift = np.zeros(z.size)
        c = kernels.kernel_constant(s) * beta
        k_py = _pykernels.kummer_table(a, c, z, x, shift, t, w)
        k_c = kernels._compiled.kummer_table(a, c, z, x, shift, t, w)
        assert_allclose(k_c, k_py, rtol=1e-12, atol=1e-14)


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_env_forces_python_backend():
    env = dict(os.environ, BGTRANSFORM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from bgtransform import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
