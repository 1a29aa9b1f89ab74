"""Ternary algebra C3: real combinations a + b j + c j^2 with j^3 = -1.

The quadratic form ``norm_sq`` vanishes on the line a = b = c.  The algebra
also has zero divisors, e.g. (1 + j)(1 - j + j^2) = 1 + j^3 = 0, so no
division is provided.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class TernaryNumber:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0

    def __add__(self, other):
        return TernaryNumber(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other):
        return TernaryNumber(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self):
        return TernaryNumber(-self.a, -self.b, -self.c)

    def __mul__(self, other):
        if isinstance(other, TernaryNumber):
            return ternary_mul(self, other)
        return TernaryNumber(self.a * other, self.b * other, self.c * other)

    __rmul__ = __mul__

    def conj(self):
        return ternary_conj(self)

    def norm_sq(self):
        return ternary_norm_sq(self)

    def as_tuple(self):
        return (self.a, self.b, self.c)


ONE = TernaryNumber(1.0, 0.0, 0.0)
J = TernaryNumber(0.0, 1.0, 0.0)
J2 = TernaryNumber(0.0, 0.0, 1.0)


def ternary_mul(x: TernaryNumber, y: TernaryNumber) -> TernaryNumber:
    # j^3 -> -1 and j^4 -> -j fold the degree 3 and 4 products back down.
    return TernaryNumber(
        x.a * y.a - x.b * y.c - x.c * y.b,
        x.a * y.b + x.b * y.a - x.c * y.c,
        x.a * y.c + x.b * y.b + x.c * y.a,
    )


def ternary_conj(z: TernaryNumber) -> TernaryNumber:
    """Conjugate fixed by 1* = 1, j* = -j^2, (j^2)* = -j."""
    return TernaryNumber(z.a, -z.c, -z.b)


def ternary_norm_sq(z: TernaryNumber) -> float:
    """Cyclic quadratic form a^2 + b^2 + c^2 - ab - bc - ca.

    Positive semi-definite; zero exactly when a = b = c.
    """
    # Half-sum of squared differences: same form, never negative in floating point.
    return 0.5 * ((z.a - z.b) ** 2 + (z.b - z.c) ** 2 + (z.c - z.a) ** 2)
