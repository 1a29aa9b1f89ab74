"""Self-verification suite behind ``greenkit verify``.

Every check compares a construction path against an independent route
(Fourier quadrature, finite differences, direct quadrature, closed forms)
and records the worst deviation next to its tolerance.
"""

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import c3_algebra as c3
from .carriers import active_carriers, sector_containing, sector_decomposition
from .curved import Custom, Exponential, curved_kernel, geodesic_map
from .errors import ImaginaryRootError, StokesLineError
from .kernel import build_kernel, eval_kernel
from .oracle import fd_apply_covariant, fd_apply_operator, fourier_inverse_G, measure_jump
from .response import Box, Gaussian, convolve_box, convolve_gaussian, convolve_quadrature

SQRT3 = math.sqrt(3.0)


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


def _check(name, worst, tol, detail=""):
    worst = float(worst)
    return Check(name, bool(worst <= tol), worst, tol, detail)


def left_branch_printed(x):
    """n = 3, x < 0 branch exactly as typeset: sin term with |x| and a minus sign."""
    ax = abs(x)
    return math.exp(x / 2) / 3 * (math.cos(SQRT3 / 2 * ax) - SQRT3 * math.sin(SQRT3 / 2 * ax))


def left_branch_jump(x):
    """n = 3, x < 0 branch from the jump conditions, in the signed variable x."""
    return math.exp(x / 2) / 3 * (math.cos(SQRT3 / 2 * x) - SQRT3 * math.sin(SQRT3 / 2 * x))


def adjudicate_sign():
    """Decide the x < 0 form of the n = 3 kernel with the Fourier oracle."""
    xs = (-0.5, -1.0, -2.0, -4.0)
    oracle = [fourier_inverse_G(3, x, 1e-10).value for x in xs]
    dev_printed = max(abs(o - left_branch_printed(x)) for o, x in zip(oracle, xs))
    dev_jump = max(abs(o - left_branch_jump(x)) for o, x in zip(oracle, xs))
    adopted = "jump-condition" if dev_jump < dev_printed else "printed"
    return {
        "adopted": adopted,
        "form": "(1/3) exp(x/2) [cos(sqrt(3) x/2) - sqrt(3) sin(sqrt(3) x/2)], x < 0"
        if adopted == "jump-condition"
        else "(1/3) exp(x/2) [cos(sqrt(3)|x|/2) - sqrt(3) sin(sqrt(3)|x|/2)], x < 0",
        "equivalent_in_abs_x": "(1/3) exp(-|x|/2) [cos(sqrt(3)|x|/2) + sqrt(3) sin(sqrt(3)|x|/2)]",
        "max_dev_printed_form": dev_printed,
        "max_dev_jump_form": dev_jump,
        "sample_points": list(xs),
    }


def check_kernel_n3():
    k = build_kernel(3)
    xs = np.array([0.1, 0.5, 1.0, 2.0, 5.0])
    ref = np.exp(-xs) / 3
    rel = np.max(np.abs(eval_kernel(k, xs) - ref) / ref)
    left = [-0.5, -1.0, -2.0, -4.0]
    dev = max(abs(eval_kernel(k, x) - fourier_inverse_G(3, x, 1e-10).value) for x in left)
    return [
        _check("kernel_n3_right_branch_rel", rel, 1e-12),
        _check("kernel_n3_left_branch_vs_fourier", dev, 1e-6),
    ]


def check_oracle_agreement(orders, step):
    out = []
    grid = np.round(np.arange(-5.0, 5.0 + 0.5 * step, step), 12)
    for n in orders:
        k = build_kernel(n)
        dev = max(abs(eval_kernel(k, x) - fourier_inverse_G(n, x, 1e-10).value) for x in grid)
        out.append(_check(f"fourier_oracle_agreement_n{n}", dev, 1e-6, f"{len(grid)} points"))
    return out


def check_jumps(orders):
    out = []
    for n in orders:
        k = build_kernel(n)
        cont = max(abs(measure_jump(k, m).value) for m in range(n - 1))
        unit = abs(measure_jump(k, n - 1).value - 1.0)
        out.append(_check(f"jump_continuity_n{n}", cont, 1e-6))
        out.append(_check(f"jump_unit_n{n}", unit, 1e-4))
    return out


def check_ode_residual(orders, h=0.025):
    xs = np.concatenate([np.linspace(-5, -0.2, 100), np.linspace(0.2, 5, 100)])
    out = []
    for n in orders:
        k = build_kernel(n)
        worst = max(abs(fd_apply_operator(lambda t: eval_kernel(k, t), n, x, h)) for x in xs)
        out.append(_check(f"ode_residual_n{n}", worst, 1e-5, "200 points, |x| in [0.2, 5]"))
    return out


def check_sectors():
    out = []
    for n, count in ((3, 6), (4, 8), (5, 10)):
        d = sector_decomposition(n)
        widths = np.array([s.width for s in d.sectors])
        dev = np.max(np.abs(widths - math.pi / n)) if len(widths) == count else math.inf
        out.append(_check(f"sector_geometry_n{n}", dev, 1e-12, f"{len(widths)} sectors"))
    d = sector_decomposition(3)
    start = sector_containing(d, 0.0)
    cards = [len(d.sectors[(start + i) % 6].active) for i in range(6)]
    out.append(Check("sector_cardinality_n3", cards == [1, 2, 1, 2, 1, 2], 0.0, 0.0, str(cards)))
    return out


def check_responses():
    k = build_kernel(3)
    grid = np.linspace(-6, 6, 101)
    box = convolve_box(k, 2.0, grid)
    gau = convolve_gaussian(k, 1.0, grid)
    qbox = convolve_quadrature(k, Box(2.0), grid, 1e-10)
    qgau = convolve_quadrature(k, Gaussian(1.0), grid, 1e-10)
    out = [
        _check("box_vs_quadrature", np.max(np.abs(box.values - qbox.values)), 1e-8),
        _check("gaussian_vs_quadrature", np.max(np.abs(gau.values - qgau.values)), 1e-7),
    ]

    def phi(t):
        return float(convolve_box(k, 2.0, [t]).values[0])

    pts = [x for x in np.linspace(-5, 5, 81) if abs(abs(x) - 1.0) >= 0.5]
    worst = max(abs(fd_apply_operator(phi, 3, x, 0.025) - float(Box(2.0)(x))) for x in pts)
    out.append(_check("box_operator_recovers_source", worst, 1e-4))

    far = np.linspace(6.5, 12.0, 12)
    ratio = np.abs(convolve_box(k, 2.0, far + 1).values / convolve_box(k, 2.0, far).values)
    out.append(_check("far_field_decay_ratio", np.max(np.abs(ratio / math.exp(-1) - 1)), 1e-2))
    return out


def _closed_exponential(kappa, x, x0):
    d = (math.exp(kappa * x) - math.exp(kappa * x0)) / kappa
    return math.exp(-d) / 3 if x > x0 else left_branch_jump(d)


def check_curved():
    k = build_kernel(3)
    out = []
    for kappa in (0.3, 1.0):
        m = Exponential(kappa)
        x0 = 0.4
        xs = np.linspace(-3.0, 3.0, 61)
        dev = max(abs(curved_kernel(k, m, x, x0) - _closed_exponential(kappa, x, x0)) for x in xs)
        out.append(_check(f"curved_closed_form_k{kappa}", dev, 1e-12))

        fwd = geodesic_map(m, 0.0).forward
        pts = [x for x in xs if abs(fwd(x) - fwd(x0)) > 0.2]
        res = max(abs(fd_apply_covariant(lambda t: curved_kernel(k, m, t, x0), m, x, 1e-2)) for x in pts)
        out.append(_check(f"covariant_residual_k{kappa}", res, 1e-4))

        custom = Custom(lambda t, kap=kappa: math.exp(kap * t), (-4.0, 4.0))
        cf = geodesic_map(custom, 0.0).forward
        gdev = max(abs(cf(x) - (math.exp(kappa * x) - 1) / kappa) for x in (-3.0, -1.0, 0.5, 2.0, 3.5))
        out.append(_check(f"geodesic_quadrature_k{kappa}", gdev, 1e-10))

        inv = 0.0
        for xr in (-1.0, 0.7, 2.0):
            inv = max(inv, max(abs(curved_kernel(k, m, x, x0, xr) - curved_kernel(k, m, x, x0, 0.0)) for x in xs))
        out.append(_check(f"x_ref_invariance_k{kappa}", inv, 1e-10))
    return out


def check_rejections():
    out = []
    for n in (2, 6):
        try:
            build_kernel(n)
            ok = False
        except ImaginaryRootError:
            ok = True
        out.append(Check(f"rejects_n{n}", ok, 0.0, 0.0))
    try:
        active_carriers(cmath.exp(1j * math.pi / 6), 3)
        ok = False
    except StokesLineError:
        ok = True
    out.append(Check("rejects_stokes_line_point", ok, 0.0, 0.0))
    return out


def check_algebra(samples=1000, seed=0):
    rng = np.random.default_rng(seed)
    tri = rng.normal(size=(samples, 3, 3))
    worst_assoc = worst_comm = worst_cyc = 0.0
    inv_ok = True
    for z, w, v in tri:
        z, w, v = c3.TernaryNumber(*z), c3.TernaryNumber(*w), c3.TernaryNumber(*v)
        lhs = np.array(((z * w) * v).as_tuple())
        rhs = np.array((z * (w * v)).as_tuple())
        worst_assoc = max(worst_assoc, np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs))))
        zw, wz = np.array((z * w).as_tuple()), np.array((w * z).as_tuple())
        worst_comm = max(worst_comm, np.max(np.abs(zw - wz)) / max(1.0, np.max(np.abs(zw))))
        inv_ok &= z.conj().conj() == z
        n1, n2 = z.norm_sq(), c3.TernaryNumber(z.c, z.a, z.b).norm_sq()
        worst_cyc = max(worst_cyc, abs(n1 - n2) / max(1.0, n1))
    return [
        _check("c3_associativity", worst_assoc, 1e-12),
        _check("c3_commutativity", worst_comm, 1e-12),
        Check("c3_conjugation_involution", bool(inv_ok), 0.0, 0.0),
        _check("c3_cyclic_norm", worst_cyc, 1e-12),
        _check("c3_norm_degenerate_line", abs(c3.TernaryNumber(1, 1, 1).norm_sq()), 1e-12),
    ]


def run_verification(orders=(3, 4, 5), quick=False):
    step = 0.5 if quick else 0.1
    checks = []
    checks += check_kernel_n3()
    checks += check_oracle_agreement(orders, step)
    checks += check_jumps(orders)
    checks += check_ode_residual(orders)
    checks += check_sectors()
    checks += check_responses()
    checks += check_curved()
    checks += check_rejections()
    checks += check_algebra(200 if quick else 1000)
    return {
        "passed": all(c.passed for c in checks),
        "sign_adjudication": adjudicate_sign(),
        "checks": [asdict(c) for c in checks],
    }
