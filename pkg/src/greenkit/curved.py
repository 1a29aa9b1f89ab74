"""Curved one-dimensional geometry ds^2 = a(x)^2 dx^2 and the geodesic reduction.

With y(x) = int a, the covariant derivative (1/a) d/dx is exactly d/dy, so
the curved kernel is the flat kernel evaluated at the geodesic separation
y(x) - y(x0).  That identity holds for every order n.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate, interpolate, optimize

from .errors import DomainError, NonPositiveMetricError
from .kernel import GreenKernel, eval_kernel

POSITIVITY_SAMPLES = 1024
GEODESIC_RTOL = 1e-10


@dataclass(frozen=True)
class Flat:
    domain: tuple = (-math.inf, math.inf)

    def a(self, x):
        return np.ones_like(np.asarray(x, dtype=float))

    def describe(self):
        return {"type": "flat"}


@dataclass(frozen=True)
class Exponential:
    """a(x) = exp(kappa x)."""

    kappa: float
    domain: tuple = (-math.inf, math.inf)

    def a(self, x):
        return np.exp(self.kappa * np.asarray(x, dtype=float))

    def describe(self):
        return {"type": "exponential", "kappa": self.kappa}


@dataclass(frozen=True)
class Custom:
    """Arbitrary positive a(x) on a finite declared domain [x_min, x_max]."""

    func: Callable
    domain: tuple
    label: str = "custom"
    meta: dict = field(default=None, compare=False)

    def __post_init__(self):
        lo, hi = (float(v) for v in self.domain)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"custom metric needs a finite domain with x_min < x_max, got {self.domain}")
        object.__setattr__(self, "domain", (lo, hi))
        xs = np.linspace(lo, hi, POSITIVITY_SAMPLES)
        vals = np.array([float(self.func(x)) for x in xs])
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
            bad = xs[~(np.isfinite(vals) & (vals > 0))][0]
            raise NonPositiveMetricError(f"metric coefficient is not positive at x = {bad}")
        steps = 0.5 * (vals[1:] + vals[:-1]) * np.diff(xs)
        if np.any(steps <= 0):  # pragma: no cover - implied by positivity
            raise NonPositiveMetricError("geodesic map is not strictly increasing")

    def a(self, x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 0:
            return float(self.func(float(x)))
        return np.array([float(self.func(v)) for v in x.ravel()]).reshape(x.shape)

    def describe(self):
        out = {"type": self.label, "domain": list(self.domain)}
        if self.meta:
            out.update(self.meta)
        return out


def sampled_metric(samples, domain=None):
    """Custom metric from [[x, a(x)], ...] samples, monotone-cubic interpolated."""
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise ValueError("samples must be a list of at least two [x, a(x)] pairs")
    if np.any(pts[:, 1] <= 0):
        raise NonPositiveMetricError("sampled metric has a non-positive value")
    interp = interpolate.PchipInterpolator(pts[:, 0], pts[:, 1], extrapolate=False)
    dom = tuple(domain) if domain is not None else (pts[0, 0], pts[-1, 0])
    if dom[0] < pts[0, 0] or dom[1] > pts[-1, 0]:
        raise DomainError("declared domain extends beyond the samples")
    return Custom(lambda x: float(interp(x)), dom, "sampled", {"samples": pts.tolist()})


def metric_from_json(obj):
    """Build a metric from {type, kappa?, samples?, domain?}."""
    kind = str(obj.get("type", "")).lower()
    if kind == "flat":
        return Flat()
    if kind in ("exponential", "exp"):
        if "kappa" not in obj:
            raise ValueError("exponential metric needs 'kappa'")
        return Exponential(float(obj["kappa"]))
    if kind == "sampled":
        if "samples" not in obj:
            raise ValueError("sampled metric needs 'samples'")
        return sampled_metric(obj["samples"], obj.get("domain"))
    raise ValueError(f"unknown metric type {obj.get('type')!r}")


def check_domain(m, x):
    lo, hi = m.domain
    xa = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(xa)) or np.any(xa < lo) or np.any(xa > hi):
        raise DomainError(f"x = {x} outside metric domain [{lo}, {hi}]")


@dataclass(frozen=True)
class GeodesicMap:
    forward: Callable
    inverse: Callable
    x_ref: float


def _custom_forward(m, x_ref, x):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        val, _ = integrate.quad(m.func, x_ref, x, epsabs=0.0, epsrel=GEODESIC_RTOL, limit=200)
    return val


def geodesic_map(m, x_ref: float = 0.0) -> GeodesicMap:
    """y(x) = int_{x_ref}^x a, with its inverse."""
    check_domain(m, x_ref)

    if isinstance(m, Flat) or (isinstance(m, Exponential) and m.kappa == 0.0):

        def fwd(x):
            check_domain(m, x)
            return np.asarray(x, dtype=float) - x_ref

        def inv(y):
            return np.asarray(y, dtype=float) + x_ref

    elif isinstance(m, Exponential):
        kap = m.kappa
        scale = math.exp(kap * x_ref)

        def fwd(x):
            check_domain(m, x)
            return scale * np.expm1(kap * (np.asarray(x, dtype=float) - x_ref)) / kap

        def inv(y):
            arg = kap * np.asarray(y, dtype=float) / scale
            if np.any(arg <= -1.0):
                raise DomainError(f"y = {y} is outside the range of the geodesic map")
            return x_ref + np.log1p(arg) / kap

    else:
        lo, hi = m.domain

        def fwd(x):
            check_domain(m, x)
            xa = np.asarray(x, dtype=float)
            vals = np.array([_custom_forward(m, x_ref, v) for v in xa.ravel()])
            return vals.reshape(xa.shape) if xa.ndim else float(vals[0])

        y_lo, y_hi = fwd(lo), fwd(hi)

        def inv_one(y):
            if not y_lo <= y <= y_hi:
                raise DomainError(f"y = {y} is outside [{y_lo}, {y_hi}]")
            if y == y_lo:
                return lo
            if y == y_hi:
                return hi
            return optimize.brentq(lambda t: fwd(t) - y, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)

        def inv(y):
            ya = np.asarray(y, dtype=float)
            vals = np.array([inv_one(v) for v in ya.ravel()])
            return vals.reshape(ya.shape) if ya.ndim else float(vals[0])

    return GeodesicMap(fwd, inv, float(x_ref))


def covariant_delta_weight(m, x0: float) -> float:
    """1 / a(x0): converts delta(x - x0) into the covariant delta."""
    check_domain(m, x0)
    return 1.0 / float(m.a(x0))


def curved_kernel(k: GreenKernel, m, x, x0: float, x_ref: float = 0.0):
    """G(x, x0) = G_flat(y(x) - y(x0)) for the metric m."""
    gmap = geodesic_map(m, x_ref)
    sep = np.asarray(gmap.forward(x), dtype=float) - float(gmap.forward(x0))
    return eval_kernel(k, sep)


def beyond_verified_scope(k: GreenKernel) -> bool:
    """The exponential-metric closed form is only worked out for n = 3."""
    return k.order != 3
