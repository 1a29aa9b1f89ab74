"""Piecewise Green kernel of D^n + 1 on the real line."""

from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .carriers import DecaySide, carriers_of_order
from .errors import ComplexResidueError, ImaginaryRootError, SingularSystemError

RESIDUE_TOL = 1e-12
IMAG_TOL = 1e-12


@dataclass(frozen=True)
class GreenKernel:
    """G(x) = sum(coeff * exp(alpha x)) over ``right_terms`` for x > 0 and ``left_terms`` for x < 0.

    Right carriers have Re(alpha) < 0, left carriers Re(alpha) > 0, so both
    branches decay away from the source.
    """

    order: int
    right_terms: tuple
    left_terms: tuple
    _alphas: np.ndarray = field(init=False, repr=False, compare=False)
    _coefs: np.ndarray = field(init=False, repr=False, compare=False)
    _sides: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        terms = list(self.right_terms) + list(self.left_terms)
        object.__setattr__(self, "_alphas", np.array([t[0] for t in terms], dtype=complex))
        object.__setattr__(self, "_coefs", np.array([t[1] for t in terms], dtype=complex))
        sides = [1] * len(self.right_terms) + [-1] * len(self.left_terms)
        object.__setattr__(self, "_sides", np.array(sides, dtype=np.int64))

    @property
    def decay_rate(self):
        """Slowest exponential decay rate min |Re alpha| over all carriers."""
        return float(np.min(np.abs(self._alphas.real)))

    def envelope(self, x):
        """Upper bound sum |coeff| exp(-rate |x|) on |G(x)|."""
        return float(np.sum(np.abs(self._coefs))) * np.exp(-self.decay_rate * np.abs(x))

    def __call__(self, x):
        return eval_kernel(self, x)

    def to_dict(self):
        def pack(terms):
            return [
                {"carrier": [a.real, a.imag], "coeff": [c.real, c.imag]} for a, c in terms
            ]

        return {"order": self.order, "right_terms": pack(self.right_terms), "left_terms": pack(self.left_terms)}

    @classmethod
    def from_dict(cls, data):
        def unpack(items):
            return tuple(
                (complex(*it["carrier"]), complex(*it["coeff"])) for it in items
            )

        return cls(int(data["order"]), unpack(data["right_terms"]), unpack(data["left_terms"]))


def residue_coefficients(n):
    """Closed-form coefficients -alpha/n (right family) and +alpha/n (left family)."""
    out = {}
    for car in carriers_of_order(n):
        sign = -1.0 if car.decay_side is DecaySide.RIGHT else 1.0
        out[car.index] = sign * car.value / n
    return out


def build_kernel(n: int) -> GreenKernel:
    """Solve the continuity/jump system at x = 0 for the decaying carrier coefficients.

    Unknowns are one coefficient per carrier, with right carriers active for
    x > 0 and left carriers for x < 0.  Rows m = 0..n-2 impose continuity of
    the m-th derivative; row n-1 imposes a unit jump.  The solution is
    cross-checked against the residue form coeff = -/+ alpha/n.
    """
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    cars = carriers_of_order(n)
    neutral = [c for c in cars if c.decay_side is DecaySide.NEUTRAL]
    if neutral:
        raise ImaginaryRootError(
            f"n = {n}: carriers {[c.value for c in neutral]} have zero real part; "
            "no decaying fundamental solution exists"
        )
    alphas = np.array([c.value for c in cars])
    signs = np.array([1.0 if c.decay_side is DecaySide.RIGHT else -1.0 for c in cars])
    powers = np.arange(n)[:, None]
    system = signs[None, :] * alphas[None, :] ** powers
    rhs = np.zeros(n, dtype=complex)
    rhs[-1] = 1.0
    try:
        coefs = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"jump system for n = {n} is singular") from exc
    if not np.all(np.isfinite(coefs)):
        raise SingularSystemError(f"jump system for n = {n} produced non-finite coefficients")

    closed = residue_coefficients(n)
    for car, c in zip(cars, coefs):
        if abs(c - closed[car.index]) > RESIDUE_TOL:
            raise SingularSystemError(
                f"n = {n}: solved coefficient {c} for carrier {car.index} disagrees "
                f"with residue form {closed[car.index]}"
            )

    right = tuple((car.value, complex(c)) for car, c in zip(cars, coefs) if car.decay_side is DecaySide.RIGHT)
    left = tuple((car.value, complex(c)) for car, c in zip(cars, coefs) if car.decay_side is DecaySide.LEFT)
    return GreenKernel(n, right, left)


def _real_part(values, scale, what):
    bad = np.abs(values.imag) > IMAG_TOL * np.maximum(scale, np.finfo(float).tiny)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ComplexResidueError(
            f"{what}: imaginary residue {values.imag[i]:.3e} exceeds tolerance (scale {scale[i]:.3e})"
        )
    return values.real


def eval_kernel_derivative(k: GreenKernel, x, m: int):
    """m-th derivative of G on the side of x (scalar or array)."""
    if not 0 <= m <= k.order:
        raise ValueError(f"derivative order must lie in [0, {k.order}], got {m}")
    xa = np.asarray(x, dtype=float)
    if m >= k.order - 1 and np.any(xa == 0.0):
        raise ValueError(f"derivative {m} of G is discontinuous at x = 0")
    values, scale = _accel.kernel_sum(xa.ravel(), k._alphas, k._coefs, k._sides, m)
    out = _real_part(values, scale, f"G^({m})").reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


def eval_kernel(k: GreenKernel, x):
    """G(x) for scalar or array x; at x = 0 the common one-sided limit."""
    return eval_kernel_derivative(k, x, 0)
