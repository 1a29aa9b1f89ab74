"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``GREENKIT_DISABLE_NUMBA`` is unset or ``0``.  Both paths are
always importable (``*_numpy`` / ``*_numba``) so tests and the benchmark can
compare them directly.
"""

import math
import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("GREENKIT_DISABLE_NUMBA", "0") in ("", "0")


def _weideman_coefficients(nterms):
    # Polynomial coefficients of Weideman's rational approximation to w(z)
    # (SIAM J. Numer. Anal. 31, 1994), highest degree first.
    m = 2 * nterms
    k = np.arange(-m + 1, m)
    scale = math.sqrt(nterms / math.sqrt(2.0))
    t = scale * np.tan(0.5 * k * math.pi / m)
    f = np.concatenate(([0.0], np.exp(-t * t) * (scale * scale + t * t)))
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * m)
    return np.ascontiguousarray(a[1 : nterms + 1][::-1]), scale


# 36 terms keeps the relative error below ~1e-14 in the upper half plane.
FADDEEVA_TERMS = 36
_W_COEF, _W_SCALE = _weideman_coefficients(FADDEEVA_TERMS)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


def kernel_sum_numpy(x, alphas, coefs, sides, m):
    """Sum ``coef * alpha**m * exp(alpha * x)`` over the carriers active on the side of x.

    ``sides`` holds +1 for carriers used at x >= 0 and -1 for x < 0.
    Returns the complex sum and the sum of term magnitudes (for residue checks).
    """
    x = np.asarray(x, dtype=np.float64)
    side_of_x = np.where(x >= 0.0, 1, -1)
    terms = (coefs * alphas**m)[None, :] * np.exp(np.outer(x, alphas))
    mask = side_of_x[:, None] == sides[None, :]
    terms = np.where(mask, terms, 0.0)
    return terms.sum(axis=1), np.abs(terms).sum(axis=1)


def faddeeva_upper_numpy(z):
    """w(z) = exp(-z^2) erfc(-iz) for Im z >= 0 (rational approximation)."""
    z = np.asarray(z, dtype=np.complex128)
    denom = _W_SCALE - 1j * z
    ratio = (_W_SCALE + 1j * z) / denom
    poly = np.polyval(_W_COEF, ratio)
    return 2.0 * poly / (denom * denom) + _INV_SQRT_PI / denom


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def kernel_sum_numba(x, alphas, coefs, sides, m):
        npts = x.shape[0]
        nc = alphas.shape[0]
        out = np.zeros(npts, dtype=np.complex128)
        scale = np.zeros(npts, dtype=np.float64)
        weights = np.empty(nc, dtype=np.complex128)
        for j in range(nc):
            weights[j] = coefs[j] * alphas[j] ** m
        for i in range(npts):
            xi = x[i]
            s = 1 if xi >= 0.0 else -1
            acc = 0.0 + 0.0j
            mag = 0.0
            for j in range(nc):
                if sides[j] == s:
                    term = weights[j] * np.exp(alphas[j] * xi)
                    acc += term
                    mag += abs(term)
            out[i] = acc
            scale[i] = mag
        return out, scale

    @numba.njit(cache=True)
    def _faddeeva_upper_loop(z, coef, scale):
        out = np.empty(z.shape[0], dtype=np.complex128)
        for i in range(z.shape[0]):
            denom = scale - 1j * z[i]
            ratio = (scale + 1j * z[i]) / denom
            p = 0.0 + 0.0j
            for c in coef:
                p = p * ratio + c
            out[i] = 2.0 * p / (denom * denom) + _INV_SQRT_PI / denom
        return out

    def faddeeva_upper_numba(z):
        z = np.asarray(z, dtype=np.complex128)
        flat = np.ascontiguousarray(z.ravel())
        return _faddeeva_upper_loop(flat, _W_COEF, _W_SCALE).reshape(z.shape)

else:  # pragma: no cover
    kernel_sum_numba = kernel_sum_numpy
    faddeeva_upper_numba = faddeeva_upper_numpy


if USE_NUMBA:
    _kernel_sum_impl = kernel_sum_numba
    faddeeva_upper = faddeeva_upper_numba
else:
    _kernel_sum_impl = kernel_sum_numpy
    faddeeva_upper = faddeeva_upper_numpy


def kernel_sum(x, alphas, coefs, sides, m=0):
    x = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.float64)))
    return _kernel_sum_impl(
        x,
        np.ascontiguousarray(alphas, dtype=np.complex128),
        np.ascontiguousarray(coefs, dtype=np.complex128),
        np.ascontiguousarray(sides, dtype=np.int64),
        int(m),
    )


def backend():
    return "numba" if USE_NUMBA else "numpy"
