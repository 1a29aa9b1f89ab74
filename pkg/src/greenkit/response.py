"""Responses phi = G * F for box, Gaussian, sampled and superposed sources."""

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import special
from ._parallel import ordered_map
from .errors import EvaluatorDivergence, QuadratureNonConvergence
from .kernel import GreenKernel, eval_kernel

# Adaptive subdivision budget per quadrature segment.
QUAD_SUBDIVISIONS = 200


@dataclass(frozen=True)
class Box:
    """Unit-height box on [center - width/2, center + width/2]."""

    width: float
    center: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"box width must be positive, got {self.width}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x - self.center) <= 0.5 * self.width, 1.0, 0.0)

    def support(self, rel_tol):
        return (self.center - 0.5 * self.width, self.center + 0.5 * self.width)

    def breakpoints(self):
        return self.support(0.0)


@dataclass(frozen=True)
class Gaussian:
    """exp(-(x - center)^2 / (2 sigma^2)), unit peak, no normalisation."""

    sigma: float
    center: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-0.5 * ((x - self.center) / self.sigma) ** 2)

    def support(self, rel_tol):
        half = self.sigma * math.sqrt(2.0 * math.log(100.0 / rel_tol))
        return (self.center - half, self.center + half)

    def breakpoints(self):
        return ()


@dataclass(frozen=True)
class Sampled:
    """Samples (x_i, F_i), linearly interpolated, zero outside [x_0, x_last]."""

    x: tuple
    values: tuple

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        if xs.ndim != 1 or len(xs) != len(self.values) or len(xs) == 0:
            raise ValueError("sampled source needs matching, non-empty x and values")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("sample abscissae must be strictly ascending")
        object.__setattr__(self, "x", tuple(float(v) for v in xs))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.x[0]) & (x <= self.x[-1])
        return np.where(inside, np.interp(x, self.x, self.values), 0.0)

    def support(self, rel_tol):
        return (self.x[0], self.x[-1])

    def breakpoints(self):
        return self.x


@dataclass(frozen=True)
class Superposition:
    """Weighted sum of profiles: sum(w_i * F_i)."""

    parts: tuple  # ((weight, profile), ...)

    def __call__(self, x):
        return sum(w * f(x) for w, f in self.parts)

    def support(self, rel_tol):
        spans = [f.support(rel_tol) for _, f in self.parts]
        return (min(s[0] for s in spans), max(s[1] for s in spans))

    def breakpoints(self):
        return tuple(b for _, f in self.parts for b in f.breakpoints())


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    QUADRATURE_FALLBACK = "quadrature_fallback"  # special-function path diverged


@dataclass(frozen=True)
class ResponseCurve:
    grid: np.ndarray
    values: np.ndarray
    method: Method
    errors: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.shape != values.shape:
            raise ValueError("grid and values must have the same shape")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("response grid must be strictly ascending")
        if not np.all(np.isfinite(values)):
            raise ValueError("response values must be finite")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)


def _check_grid(grid):
    g = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any(np.diff(g) <= 0):
        raise ValueError("grid must be strictly ascending")
    return g


def _terms(k):
    return (
        np.array([a for a, _ in k.right_terms]),
        np.array([c for _, c in k.right_terms]),
        np.array([a for a, _ in k.left_terms]),
        np.array([c for _, c in k.left_terms]),
    )


def _box_values(k, width, center, x):
    # Over the part of the box left of x only right carriers act (x - xi > 0),
    # over the part right of x only left carriers; each piece integrates
    # exp(alpha (x - xi)) exactly.  Exponents are non-positive in real part.
    ra, rc, la, lc = _terms(k)
    lo, hi = center - 0.5 * width, center + 0.5 * width
    x = x[:, None]
    top = np.minimum(x, hi)
    right = np.where(
        x > lo,
        rc / ra * (np.exp(ra * np.maximum(x - lo, 0.0)) - np.exp(ra * np.maximum(x - top, 0.0))),
        0.0,
    ).sum(axis=1)
    bottom = np.maximum(x, lo)
    left = np.where(
        x < hi,
        lc / la * (np.exp(la * np.minimum(x - bottom, 0.0)) - np.exp(la * np.minimum(x - hi, 0.0))),
        0.0,
    ).sum(axis=1)
    return (right + left).real


def convolve_box(k: GreenKernel, L: float, grid, center: float = 0.0) -> ResponseCurve:
    """Exact response to a unit box of width L, piecewise in the three regimes."""
    box = Box(L, center)
    g = _check_grid(grid)
    return ResponseCurve(g, _box_values(k, box.width, box.center, g), Method.CLOSED_FORM)


def _gaussian_values(k, sigma, center, x):
    # Half-line integral over xi < x of exp(alpha (x - xi) - xi^2 / 2s^2):
    #   s sqrt(pi/2) exp(alpha x + alpha^2 s^2 / 2) erfc(-w),  w = (x + alpha s^2) / (s sqrt 2)
    # and over xi > x the same with erfc(w).  exp(alpha x + alpha^2 s^2/2) erfc(v)
    # = exp(-x^2 / 2s^2) erfcx(v); for Re v < 0 the reflection adds
    # 2 exp(alpha x + alpha^2 s^2 / 2), whose real exponent is then negative.
    ra, rc, la, lc = _terms(k)
    u = (x - center)[:, None]
    gauss = np.exp(-0.5 * (u / sigma) ** 2)
    pref = sigma * math.sqrt(0.5 * math.pi)

    def half_line(alpha, coef, sign):
        w = (u + alpha * sigma**2) / (sigma * math.sqrt(2.0))
        v = sign * w
        flip = v.real < 0
        ex = special.erfcx_right(np.where(flip, -v, v))
        direct = gauss * ex
        expo = np.where(flip, alpha * u + 0.5 * (alpha * sigma) ** 2, 0.0)
        reflected = 2.0 * np.exp(expo) - direct
        return (coef * pref * np.where(flip, reflected, direct)).sum(axis=1)

    total = half_line(ra, rc, -1.0) + half_line(la, lc, 1.0)
    if not np.all(np.isfinite(total)):
        raise EvaluatorDivergence("complex erfcx evaluation produced non-finite values")
    return total.real


def convolve_gaussian(k: GreenKernel, sigma: float, grid, center: float = 0.0) -> ResponseCurve:
    """Response to exp(-x^2 / 2 sigma^2) via the complex scaled erfc.

    Falls back to quadrature (method QUADRATURE_FALLBACK) if the special
    function path diverges.
    """
    src = Gaussian(sigma, center)
    g = _check_grid(grid)
    try:
        return ResponseCurve(g, _gaussian_values(k, src.sigma, src.center, g), Method.CLOSED_FORM)
    except EvaluatorDivergence:
        q = convolve_quadrature(k, src, g)
        return ResponseCurve(q.grid, q.values, Method.QUADRATURE_FALLBACK, q.errors)


def truncation_radius(k: GreenKernel, rel_tol: float) -> float:
    """|t| beyond which the kernel envelope exp(-rate |t|) is below rel_tol * 1e-2."""
    return math.log(100.0 / rel_tol) / k.decay_rate


def _quad_segment(f, a, b, rel_tol, args=()):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            return integrate.quad(f, a, b, args=args, epsabs=1e-15, epsrel=rel_tol, limit=QUAD_SUBDIVISIONS)
        except integrate.IntegrationWarning as exc:
            raise QuadratureNonConvergence(f"segment [{a}, {b}]: {exc}") from exc


def convolve_quadrature(k: GreenKernel, f, grid, rel_tol: float = 1e-10) -> ResponseCurve:
    """phi(x) = int G(x - xi) F(xi) dxi by adaptive quadrature for any profile.

    The xi-range is the source support intersected with the window where
    the kernel envelope exceeds rel_tol * 1e-2, split at xi = x (the kink of
    G) and at the profile's own breakpoints.  Each segment gets at most
    QUAD_SUBDIVISIONS adaptive bisections.
    """
    if not 0.0 < rel_tol <= 1e-2:
        raise ValueError(f"rel_tol must lie in (0, 1e-2], got {rel_tol}")
    g = _check_grid(grid)
    lo, hi = f.support(rel_tol)
    radius = truncation_radius(k, rel_tol)
    brk = np.asarray(sorted(set(f.breakpoints())), dtype=float)

    def integrand(xi, x):
        return float(eval_kernel(k, x - xi)) * float(f(xi))

    def one(x):
        a, b = max(lo, x - radius), min(hi, x + radius)
        if b <= a:
            return 0.0, 0.0
        cuts = [a, b] + [p for p in brk if a < p < b] + ([x] if a < x < b else [])
        cuts = sorted(set(cuts))
        val = err = 0.0
        for s, t in zip(cuts[:-1], cuts[1:]):
            v, e = _quad_segment(integrand, s, t, rel_tol, (x,)) if t > s else (0.0, 0.0)
            val += v
            err += e
        return val, err

    res = ordered_map(one, g)
    return ResponseCurve(
        g, np.array([r[0] for r in res]), Method.QUADRATURE, np.array([r[1] for r in res])
    )


def convolve(k: GreenKernel, f, grid, rel_tol: float = 1e-10) -> ResponseCurve:
    """Dispatch to the closed forms where every component has one, else quadrature."""
    g = _check_grid(grid)
    if isinstance(f, Box):
        return convolve_box(k, f.width, g, f.center)
    if isinstance(f, Gaussian):
        return convolve_gaussian(k, f.sigma, g, f.center)
    if isinstance(f, Superposition) and all(isinstance(p, (Box, Gaussian)) for _, p in f.parts):
        curves = [(w, convolve(k, p, g)) for w, p in f.parts]
        method = Method.CLOSED_FORM
        if any(c.method is not Method.CLOSED_FORM for _, c in curves):
            method = Method.QUADRATURE_FALLBACK
        return ResponseCurve(g, sum(w * c.values for w, c in curves), method)
    return convolve_quadrature(k, f, g, rel_tol)
