import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from greenkit.curved import (
    Custom,
    Exponential,
    Flat,
    beyond_verified_scope,
    covariant_delta_weight,
    curved_kernel,
    geodesic_map,
    metric_from_json,
    sampled_metric,
)
from greenkit.errors import DomainError, NonPositiveMetricError
from greenkit.kernel import build_kernel, eval_kernel
from greenkit.oracle import covariant_derivative_grid, fd_apply_covariant
from greenkit.response import convolve_gaussian

SQRT3 = math.sqrt(3.0)
# 30-digit mpmath value of the n = 3 kernel at y-separation (1 - e)
CURVED_K1_X0_1_X0 = 0.255351387081483772454766963358


@pytest.fixture(scope="module")
def k3():
    return build_kernel(3)


def closed_exponential(kappa, x, x0):
    d = (math.exp(kappa * x) - math.exp(kappa * x0)) / kappa
    if x > x0:
        return math.exp(-d) / 3
    return math.exp(d / 2) / 3 * (math.cos(SQRT3 / 2 * d) - SQRT3 * math.sin(SQRT3 / 2 * d))


def test_flat_map():
    g = geodesic_map(Flat(), 0.0)
    assert g.forward(3.0) == 3.0
    assert geodesic_map(Flat(), 1.5).forward(3.0) == 1.5


@pytest.mark.parametrize("kappa", [-0.7, 0.3, 1.0])
def test_exponential_map_closed_form(kappa):
    g = geodesic_map(Exponential(kappa), 0.0)
    for x in (-2.0, 0.0, 0.5, 2.0):
        assert g.forward(x) == pytest.approx((math.exp(kappa * x) - 1) / kappa, rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("kappa", [0.3, 0.5, 1.0])
def test_custom_quadrature_matches_exponential(kappa):
    custom = Custom(lambda t: math.exp(kappa * t), (-3.0, 3.0))
    g = geodesic_map(custom, 0.0)
    assert g.forward(2.0) == pytest.approx((math.exp(2 * kappa) - 1) / kappa, abs=1e-10)


@pytest.mark.parametrize(
    "metric",
    [Exponential(0.8), Custom(lambda t: 1.0 + 0.5 * math.sin(t), (-4.0, 4.0))],
)
def test_round_trip(metric):
    rng = np.random.default_rng(1)
    g = geodesic_map(metric, 0.3)
    for x in rng.uniform(-3.9, 3.9, 100):
        assert g.inverse(g.forward(x)) == pytest.approx(x, abs=1e-9)


def test_custom_domain_and_positivity():
    with pytest.raises(NonPositiveMetricError):
        Custom(lambda t: t, (-1.0, 1.0))
    with pytest.raises(DomainError):
        Custom(lambda t: 1.0, (0.0, math.inf))
    m = Custom(lambda t: 2.0, (0.0, 1.0))
    with pytest.raises(DomainError):
        geodesic_map(m, 2.0)
    with pytest.raises(DomainError):
        geodesic_map(m, 0.0).forward(1.5)
    with pytest.raises(DomainError):
        covariant_delta_weight(m, -1.0)


def test_exponential_inverse_range():
    g = geodesic_map(Exponential(1.0), 0.0)
    with pytest.raises(DomainError):
        g.inverse(-2.0)  # y > -1/kappa for kappa > 0


def test_covariant_delta_weight():
    assert covariant_delta_weight(Flat(), 0.3) == 1.0
    assert covariant_delta_weight(Exponential(1.0), 0.0) == 1.0
    assert covariant_delta_weight(Exponential(1.0), 1.0) == pytest.approx(math.exp(-1), rel=1e-15)


def test_flat_curved_kernel_is_flat(k3):
    xs = np.linspace(-4, 4, 41)
    assert np.array_equal(curved_kernel(k3, Flat(), xs, 0.0), eval_kernel(k3, xs))
    assert curved_kernel(k3, Flat(), 1.7, 0.5) == pytest.approx(eval_kernel(k3, 1.2), abs=1e-16)


@pytest.mark.parametrize("kappa", [0.3, 1.0, -0.5])
def test_exponential_closed_form(k3, kappa):
    for x0 in (-0.5, 0.4):
        for x in np.linspace(-3, 3, 31):
            assert curved_kernel(k3, Exponential(kappa), x, x0) == pytest.approx(
                closed_exponential(kappa, x, x0), abs=1e-12
            )


def test_right_branch_of_exponential_metric(k3):
    kappa, x0, x = 0.6, 0.2, 1.1
    want = math.exp(-(math.exp(kappa * x) - math.exp(kappa * x0)) / kappa) / 3
    assert curved_kernel(k3, Exponential(kappa), x, x0) == pytest.approx(want, rel=1e-13)


def test_frozen_composition(k3):
    assert curved_kernel(k3, Exponential(1.0), 0.0, 1.0) == pytest.approx(CURVED_K1_X0_1_X0, abs=1e-14)


@pytest.mark.parametrize("kappa", [0.3, 1.0])
def test_x_ref_invariance(k3, kappa):
    xs = np.linspace(-2, 2, 21)
    base = curved_kernel(k3, Exponential(kappa), xs, 0.3, 0.0)
    for xr in (-1.5, 0.9):
        assert np.max(np.abs(curved_kernel(k3, Exponential(kappa), xs, 0.3, xr) - base)) < 1e-10


@pytest.mark.parametrize("kappa", [0.3, 1.0])
def test_covariant_residual(k3, kappa):
    m = Exponential(kappa)
    fwd = geodesic_map(m).forward
    x0 = 0.4
    for x in np.linspace(-3, 3, 25):
        if abs(fwd(x) - fwd(x0)) > 0.2:
            assert abs(fd_apply_covariant(lambda t: curved_kernel(k3, m, t, x0), m, x, 1e-2)) < 1e-4


@pytest.mark.parametrize("n", [4, 5])
def test_reduction_holds_beyond_n3(n):
    # nabla = d/dy in one dimension, so the reduction works for every order
    k = build_kernel(n)
    m = Exponential(0.5)
    fwd = geodesic_map(m).forward
    x0 = 0.0
    for x in (-2.5, -1.0, 1.0, 2.0):
        assert abs(fwd(x) - fwd(x0)) > 0.3
        assert abs(fd_apply_covariant(lambda t: curved_kernel(k, m, t, x0), m, x, 2e-2, n=n)) < 1e-4
    assert beyond_verified_scope(k) and not beyond_verified_scope(build_kernel(3))


@pytest.mark.parametrize("kappa", [0.3, 1.0])
def test_covariant_normalization(k3, kappa):
    # Bump b(x0) = exp(-(y(x0) - yc)^2 / 2s^2); psi(x) = int G(x, x0) b(x0) a(x0) dx0
    # equals the flat Gaussian response at y(x) - yc.  (nabla^3 + 1) psi = b, and
    # int b a dx is the covariant mass s sqrt(2 pi).
    m = Exponential(kappa)
    fwd = geodesic_map(m).forward
    s, yc = 0.05, 0.8
    h = 2e-3
    xs = np.arange(-1.0, 3.0 + h / 2, h) if kappa == 1.0 else np.arange(-2.0, 4.0 + h / 2, h)
    ys = fwd(xs)
    psi = convolve_gaussian(k3, s, ys - yc).values
    a = m.a(xs)
    d = psi
    for _ in range(3):
        d = covariant_derivative_grid(d, a, h)
        a = a[2:-2]
    lhs = d + psi[6:-6]
    inner = xs[6:-6]
    mass = trapezoid(lhs * m.a(inner), inner)
    assert mass == pytest.approx(s * math.sqrt(2 * math.pi), abs=1e-3)
    bump = np.exp(-0.5 * ((fwd(inner) - yc) / s) ** 2)
    assert np.max(np.abs(lhs - bump)) < 1e-3


def test_metric_json():
    assert isinstance(metric_from_json({"type": "flat"}), Flat)
    assert metric_from_json({"type": "exponential", "kappa": 0.5}) == Exponential(0.5)
    m = metric_from_json({"type": "sampled", "samples": [[0, 1.0], [1, 2.0], [2, 1.5]], "domain": [0, 2]})
    assert m.a(1.0) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        metric_from_json({"type": "hyperbolic"})
    with pytest.raises(NonPositiveMetricError):
        sampled_metric([[0, 1.0], [1, -1.0]])


def test_sampled_metric_geodesic_map():
    xs = np.linspace(-2, 2, 81)
    m = sampled_metric(np.column_stack([xs, np.exp(0.4 * xs)]))
    g = geodesic_map(m, 0.0)
    assert g.forward(1.5) == pytest.approx((math.exp(0.6) - 1) / 0.4, rel=1e-5)
    assert g.inverse(g.forward(-1.2)) == pytest.approx(-1.2, abs=1e-9)
