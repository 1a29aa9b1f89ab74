"""Independent verifiers: Fourier-inversion quadrature for G, finite-difference
operator application, and jump measurement at the source.

None of these touch the coefficient construction in ``kernel``; they only use
the defining equation (fourier_inverse_G) or point evaluations (the rest).
"""

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate

from .carriers import DecaySide, carriers_of_order
from .errors import PoleOnPathError, QuadratureNonConvergence
from .kernel import GreenKernel, eval_kernel

# QAWF panel budget (cycles) for the oscillatory half-line integrals.
FOURIER_PANEL_LIMIT = 200


@dataclass(frozen=True)
class OracleReport:
    quantity: str
    value: float
    estimated_error: float
    method: str

    def __post_init__(self):
        if not (self.estimated_error >= 0 and math.isfinite(self.estimated_error)):
            raise ValueError(f"invalid error estimate {self.estimated_error!r}")

    def to_dict(self):
        return asdict(self)


def _quad(f, weight=None, wvar=None, epsabs=1e-12):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            if weight is None:
                val, err = integrate.quad(f, 0.0, np.inf, epsabs=epsabs, epsrel=0.0, limit=400)
            else:
                val, err = integrate.quad(
                    f, 0.0, np.inf, weight=weight, wvar=wvar, epsabs=epsabs,
                    limlst=FOURIER_PANEL_LIMIT, limit=400,
                )
        except integrate.IntegrationWarning as exc:
            raise QuadratureNonConvergence(str(exc)) from exc
    return val, err


def fourier_inverse_G(n: int, x: float, rel_tol: float = 1e-10) -> OracleReport:
    """G(x) = (1/2pi) int exp(ikx) / ((ik)^n + 1) dk by direct quadrature.

    The k-line is folded onto [0, inf) as two independent half-line integrals
    (k > 0 and k < 0).  For x != 0 each piece is a Fourier integral handled
    by QUADPACK's QAWF: panels aligned with the period 2pi/|x| and epsilon
    acceleration of the panel sums.  The imaginary part must cancel between
    the halves; it is checked and discarded.
    """
    if n < 3:
        raise ValueError(f"oracle requires n >= 3, got {n}")
    if not 0.0 < rel_tol <= 1e-3:
        raise ValueError(f"rel_tol must lie in (0, 1e-3], got {rel_tol}")
    if any(c.decay_side is DecaySide.NEUTRAL for c in carriers_of_order(n)):
        # (ik)^n = -1 has a real root k exactly when some carrier is imaginary.
        raise PoleOnPathError(f"n = {n}: 1/((ik)^n + 1) has a pole on the real k axis")

    def h(k):
        return 1.0 / ((1j * k) ** n + 1.0)

    parts = [
        lambda k: h(k).real,
        lambda k: h(k).imag,
        lambda k: h(-k).real,
        lambda k: h(-k).imag,
    ]
    # |G| <= 1 for all n, so an absolute target tracks the relative one.
    epsabs = rel_tol * 1e-2
    omega = abs(x)
    if omega == 0.0:
        res = [_quad(f, epsabs=epsabs) for f in parts]
        re = res[0][0] + res[2][0]
        im = res[1][0] + res[3][0]
        err = sum(r[1] for r in res)
        method = "fourier-quadrature(qagi)"
    else:
        sgn = 1.0 if x > 0 else -1.0
        cos_ = [_quad(f, "cos", omega, epsabs) for f in parts]
        sin_ = [_quad(f, "sin", omega, epsabs) for f in parts]
        c = [v[0] for v in cos_]
        s = [sgn * v[0] for v in sin_]
        # exp(ikx) h(k) on k > 0 plus exp(-ikx) h(-k) on k > 0
        re = (c[0] - s[1]) + (c[2] + s[3])
        im = (s[0] + c[1]) + (-s[2] + c[3])
        err = sum(v[1] for v in cos_) + sum(v[1] for v in sin_)
        method = "fourier-quadrature(qawf)"

    re /= 2.0 * math.pi
    im /= 2.0 * math.pi
    err /= 2.0 * math.pi
    if abs(im) > rel_tol:
        raise QuadratureNonConvergence(f"imaginary part {im:.3e} did not cancel at x = {x}")
    return OracleReport(f"G_{n}({x})", re, err, method)


def fd_weights(deriv: int, nodes, x0: float = 0.0):
    """Fornberg weights for the deriv-th derivative at x0 on arbitrary nodes."""
    nodes = np.asarray(nodes, dtype=float)
    npts = len(nodes)
    if deriv >= npts:
        raise ValueError("need more nodes than the derivative order")
    c = np.zeros((npts, deriv + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, npts):
        mn = min(i, deriv)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, deriv]


def central_offsets(deriv: int, accuracy: int):
    """Integer offsets of the central stencil of the given even accuracy order."""
    half = (deriv + 1) // 2 - 1 + accuracy // 2
    return np.arange(-half, half + 1)


def fd_apply_operator(f, n: int, x: float, h: float, accuracy: int = 4) -> float:
    """Central-difference estimate of f^(n)(x) + f(x).

    The stencil has accuracy order ``accuracy`` (even, >= 4), so the
    truncation error is about C h^accuracy max|f^(n+accuracy)| near x, and
    the round-off floor is about eps * max|f| * sum|w| / h^n.  Round-off
    dominates for n = 5: with accuracy 4 and h = 0.025 the residual on G is
    ~1e-7, while accuracy 8 at h = 0.02 is ~4e-6.  The stencil spans
    (n+1)//2 - 1 + accuracy//2 steps on each side, at most (n+2) h for
    accuracy <= 6.
    """
    if h <= 0:
        raise ValueError("step must be positive")
    if accuracy < 4 or accuracy % 2:
        raise ValueError("accuracy must be an even integer >= 4")
    offs = central_offsets(n, accuracy)
    w = fd_weights(n, offs.astype(float)) / h**n
    vals = np.array([f(x + o * h) for o in offs], dtype=float)
    return float(np.dot(w, vals) + f(x))


def _one_sided_derivative(k, m, h, side, accuracy):
    nodes = side * np.arange(m + accuracy, dtype=float)
    w = fd_weights(m, nodes) / h**m
    return float(np.dot(w, eval_kernel(k, nodes * h)))


def measure_jump(
    k: GreenKernel, m: int, h_sequence=(0.2, 0.1, 0.05, 0.025), accuracy: int = 4
) -> OracleReport:
    """Jump G^(m)(0+) - G^(m)(0-) from one-sided stencils, Richardson-extrapolated.

    Each one-sided stencil uses nodes 0, h, 2h, ... (or their mirror) and has
    error c_p h^p + c_{p+1} h^(p+1) + ... with p = accuracy; the extrapolation
    fits these powers across ``h_sequence`` and reports the change from
    dropping the coarsest step as the error estimate.
    """
    if not 0 <= m <= k.order - 1:
        raise ValueError(f"jump order must lie in [0, {k.order - 1}], got {m}")
    hs = np.asarray(h_sequence, dtype=float)
    if len(hs) < 2 or np.any(hs <= 0) or np.any(np.diff(hs) >= 0):
        raise ValueError("h_sequence must hold at least two decreasing positive steps")
    jumps = np.array(
        [
            _one_sided_derivative(k, m, h, 1, accuracy) - _one_sided_derivative(k, m, h, -1, accuracy)
            for h in hs
        ]
    )

    def extrapolate(hh, jj):
        cols = [np.ones_like(hh)] + [hh ** (accuracy + q) for q in range(len(hh) - 1)]
        return float(np.linalg.solve(np.column_stack(cols), jj)[0])

    best = extrapolate(hs, jumps)
    coarse = extrapolate(hs[1:], jumps[1:]) if len(hs) > 2 else float(jumps[-1])
    return OracleReport(f"jump G^({m}) at 0 (n={k.order})", best, abs(best - coarse), "richardson")


_D1_OFFS = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
_D1_W = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def fd_apply_covariant(f, metric, x: float, h: float, n: int = 3) -> float:
    """(nabla^n + 1) f at x with nabla = (1/a(x)) d/dx, by nested 4th-order central differences.

    Each nesting level divides by h, so round-off grows like eps / h^n;
    truncation is O(h^4) per level.
    """

    def nabla(g, level):
        if level == 0:
            return g

        inner = nabla(g, level - 1)

        def out(t):
            vals = np.array([inner(t + o * h) for o in _D1_OFFS])
            return float(np.dot(_D1_W, vals)) / (h * metric.a(t))

        return out

    return nabla(f, n)(x) + f(x)


def covariant_derivative_grid(values, a_values, h):
    """nabla applied to samples on a uniform grid; drops two points at each end."""
    v = np.asarray(values, dtype=float)
    d = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * h)
    return d / np.asarray(a_values, dtype=float)[2:-2]
