"""Exponential carriers (roots of s^n = -1) and the Stokes-sector geometry."""

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import StokesLineError, ZeroPointError

TWO_PI = 2.0 * math.pi
SIDE_TOL = 1e-14
LINE_TOL = 1e-14


class DecaySide(enum.Enum):
    RIGHT = "right"  # Re(alpha) < 0: decays as x -> +inf
    LEFT = "left"  # Re(alpha) > 0: decays as x -> -inf
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class Carrier:
    value: complex
    index: int
    decay_side: DecaySide

    @property
    def angle(self):
        return cmath.phase(self.value)


def _clean(v):
    # Roots that sit on an axis come out of cos/sin with ~1e-16 residue.
    return 0.0 if abs(v) < 1e-15 else v


def carriers_of_order(n: int) -> list:
    """Return the n roots exp(i pi (2k+1)/n) of s^n = -1, classified by decay side."""
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    out = []
    for k in range(n):
        theta = math.pi * (2 * k + 1) / n
        value = complex(_clean(math.cos(theta)), _clean(math.sin(theta)))
        if value.real < -SIDE_TOL:
            side = DecaySide.RIGHT
        elif value.real > SIDE_TOL:
            side = DecaySide.LEFT
        else:
            side = DecaySide.NEUTRAL
        out.append(Carrier(value, k, side))
    return out


def active_carriers(z: complex, n: int) -> frozenset:
    """Indices of the carriers with Re(alpha z) < 0.

    Raises StokesLineError if z sits on a Stokes line of any carrier, within
    a relative tolerance of 1e-14 |z|.
    """
    z = complex(z)
    if z == 0:
        raise ZeroPointError("active carriers are undefined at z = 0")
    thresh = LINE_TOL * abs(z)
    active = set()
    for car in carriers_of_order(n):
        r = (car.value * z).real
        if abs(r) < thresh:
            raise StokesLineError(
                f"z = {z!r} lies on the Stokes line of carrier {car.index} (n = {n})"
            )
        if r < 0:
            active.add(car.index)
    return frozenset(active)


@dataclass(frozen=True)
class Sector:
    start: float
    width: float
    active: frozenset

    @property
    def end(self):
        return self.start + self.width

    @property
    def mid(self):
        return self.start + 0.5 * self.width


@dataclass(frozen=True)
class SectorDecomposition:
    """Angular sectors of the plane for the operator D^n + 1.

    ``stokes_angles`` are the rays where Re(alpha z) = 0 for some carrier.
    ``boundary_angles`` are the sector boundaries: the Stokes rays of all
    2n-th roots of unity.  For odd n both sets coincide; for even n the
    carriers come in +/- pairs, so the carrier rays alone give only n sectors
    and the boundaries add the rays of the roots of s^n = +1.  The active set
    is constant inside every sector either way.
    """

    order: int
    stokes_angles: tuple
    boundary_angles: tuple
    sectors: tuple

    def cardinalities(self):
        return [len(s.active) for s in self.sectors]


def _canonical_angles(angles):
    out = []
    for a in sorted(t % TWO_PI for t in angles):
        if TWO_PI - a < 1e-12:
            a = 0.0
        if not out or abs(a - out[-1]) > 1e-12:
            out.append(a)
    if len(out) > 1 and abs(out[0] + TWO_PI - out[-1]) < 1e-12:
        out.pop()
    return tuple(sorted(out))


def sector_decomposition(n: int) -> SectorDecomposition:
    carriers = carriers_of_order(n)
    stokes = []
    for car in carriers:
        phi = cmath.phase(car.value)
        stokes.extend([0.5 * math.pi - phi, 1.5 * math.pi - phi])
    stokes = _canonical_angles(stokes)
    bounds = _canonical_angles(0.5 * math.pi + math.pi * m / n for m in range(2 * n))

    sectors = []
    for i, start in enumerate(bounds):
        stop = bounds[i + 1] if i + 1 < len(bounds) else bounds[0] + TWO_PI
        mid = 0.5 * (start + stop)
        active = active_carriers(cmath.exp(1j * mid), n)
        sectors.append(Sector(start, stop - start, active))
    return SectorDecomposition(n, stokes, bounds, tuple(sectors))


def sector_containing(decomp: SectorDecomposition, theta: float) -> int:
    """Index of the sector whose open interval contains the direction theta."""
    theta = theta % TWO_PI
    for i, s in enumerate(decomp.sectors):
        for t in (theta, theta + TWO_PI):
            if s.start < t < s.end:
                return i
    raise StokesLineError(f"direction {theta} lies on a sector boundary")
