"""Scaled complementary error function for complex arguments."""

import numpy as np

from . import _accel


def erfcx(z):
    """exp(z^2) erfc(z) for complex z.

    Uses erfcx(z) = w(iz) with w the Faddeeva function; the left half plane
    goes through erfcx(z) = 2 exp(z^2) - erfcx(-z), which overflows once
    Re(z^2) is large.  Callers that can fold the exp(z^2) factor into their
    own exponent should use ``erfcx_right`` and the reflection themselves.
    """
    z = np.asarray(z, dtype=np.complex128)
    left = z.real < 0
    zz = np.where(left, -z, z)
    out = erfcx_right(zz)
    out = np.where(left, 2.0 * np.exp(z * z) - out, out)
    return out[()] if out.ndim == 0 else out


def erfcx_right(z):
    """exp(z^2) erfc(z) for Re z >= 0 (no reflection, never overflows)."""
    z = np.asarray(z, dtype=np.complex128)
    if np.any(z.real < 0):
        raise ValueError("erfcx_right needs Re z >= 0")
    return _accel.faddeeva_upper(1j * z)
