import os
import subprocess
import sys

import numpy as np
import pytest
from scipy import special as sp

from greenkit import _accel
from greenkit.kernel import build_kernel
from greenkit.special import erfcx, erfcx_right

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def random_upper(n, seed=0):
    rng = np.random.default_rng(seed)
    mag = 10 ** rng.uniform(-3, 3, n)
    ang = rng.uniform(0, np.pi, n)
    return mag * np.exp(1j * ang)


@pytest.mark.parametrize("impl", ["numpy", "numba"])
def test_faddeeva_against_scipy(impl):
    if impl == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    fn = _accel.faddeeva_upper_numpy if impl == "numpy" else _accel.faddeeva_upper_numba
    z = np.concatenate([random_upper(5000), np.linspace(-40, 40, 801) + 0j])
    ref = sp.wofz(z)
    assert np.max(np.abs(fn(z) - ref) / np.abs(ref)) < 1e-13


def test_erfcx_complex_both_half_planes():
    rng = np.random.default_rng(3)
    z = rng.uniform(-4, 4, 400) + 1j * rng.uniform(-4, 4, 400)
    ref = sp.erfcx(z)
    assert np.max(np.abs(erfcx(z) - ref) / np.abs(ref)) < 1e-12
    assert erfcx(0.0) == pytest.approx(1.0, abs=1e-15)


def test_erfcx_right_rejects_left_half_plane():
    with pytest.raises(ValueError):
        erfcx_right(-1.0 + 0j)


@needs_numba
@pytest.mark.parametrize("n", [3, 4, 5, 9])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_kernel_sum_backends_agree(n, m):
    k = build_kernel(n)
    x = np.linspace(-10, 10, 401)
    a = _accel.kernel_sum_numpy(x, k._alphas, k._coefs, k._sides, m)
    b = _accel.kernel_sum_numba(x, k._alphas, k._coefs, k._sides, m)
    assert np.allclose(a[0], b[0], rtol=1e-14, atol=1e-16)
    assert np.allclose(a[1], b[1], rtol=1e-14, atol=1e-16)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, GREENKIT_DISABLE_NUMBA="1")
    code = "from greenkit import _accel, build_kernel, eval_kernel; print(_accel.backend(), eval_kernel(build_kernel(3), 1.0))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, value = out.stdout.split()
    assert name == "numpy"
    assert float(value) == pytest.approx(np.exp(-1) / 3, rel=1e-14)
