import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from greenkit.c3_algebra import J, J2, ONE, TernaryNumber, ternary_conj, ternary_mul, ternary_norm_sq

coef = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
ternary = st.builds(TernaryNumber, coef, coef, coef)


def reduce_poly(p):
    """Fold a polynomial in j (ascending coefficients) with j^3 = -1."""
    out = np.zeros(3)
    for deg, c in enumerate(p):
        out[deg % 3] += c * (-1) ** (deg // 3)
    return TernaryNumber(*out)


def poly_mul(x, y):
    return reduce_poly(np.convolve(x.as_tuple(), y.as_tuple()))


def close(u, v, tol=1e-12):
    a, b = np.array(u.as_tuple()), np.array(v.as_tuple())
    return np.max(np.abs(a - b)) <= tol * max(1.0, np.max(np.abs(a)), np.max(np.abs(b)))


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ((0, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((0, 0, 1), (0, 1, 0), (-1, 0, 0)),
        # (1 + j)(1 + j^2) = 1 + j + j^2 + j^3 = j + j^2
        ((1, 1, 0), (1, 0, 1), (0, 1, 1)),
        ((0, 0, 1), (0, 0, 1), (0, -1, 0)),
    ],
)
def test_mul_examples(x, y, expected):
    assert ternary_mul(TernaryNumber(*x), TernaryNumber(*y)).as_tuple() == expected


def test_j_cubed_is_minus_one():
    assert (J * J * J).as_tuple() == (-1, 0, 0)
    assert J * J == J2


@pytest.mark.parametrize(
    "z, expected",
    [((1, 0, 0), (1, 0, 0)), ((0, 1, 0), (0, 0, -1)), ((3, 2, 5), (3, -5, -2)), ((0, 0, 1), (0, -1, 0))],
)
def test_conj_examples(z, expected):
    assert ternary_conj(TernaryNumber(*z)).as_tuple() == expected


@pytest.mark.parametrize("z, expected", [((0, 1, 0), 1.0), ((1, 1, 1), 0.0), ((1, 0, 0), 1.0), ((2, -1, 3), 13.0)])
def test_norm_examples(z, expected):
    # (2,-1,3): 4 + 1 + 9 - (-2) - (-3) - 6 = 13
    assert ternary_norm_sq(TernaryNumber(*z)) == expected


@settings(max_examples=300)
@given(ternary, ternary)
def test_closed_product_matches_polynomial_reduction(x, y):
    assert close(ternary_mul(x, y), poly_mul(x, y), 1e-12)


@settings(max_examples=300)
@given(ternary, ternary)
def test_commutative(x, y):
    assert close(x * y, y * x)


@settings(max_examples=300)
@given(ternary, ternary, ternary)
def test_associative(x, y, z):
    assert close((x * y) * z, x * (y * z), 1e-12)


@given(ternary, ternary, ternary)
def test_distributive(x, y, z):
    assert close(x * (y + z), x * y + x * z, 1e-12)


@given(ternary)
def test_conjugation_is_an_involution(z):
    assert z.conj().conj() == z


@given(ternary)
def test_norm_cyclic_invariance(z):
    n0 = z.norm_sq()
    n1 = TernaryNumber(z.c, z.a, z.b).norm_sq()
    assert abs(n0 - n1) <= 1e-12 * max(1.0, n0)


@given(ternary)
def test_norm_nonnegative(z):
    assert z.norm_sq() >= 0.0


@given(coef)
def test_norm_vanishes_on_degenerate_line(t):
    assert TernaryNumber(t, t, t).norm_sq() == 0.0


@given(ternary)
def test_norm_zero_only_on_degenerate_line(z):
    # squares of differences below ~1e-154 underflow to zero
    assume(max(abs(z.a - z.b), abs(z.b - z.c), abs(z.c - z.a)) > 1e-150)
    assert z.norm_sq() > 0.0


def test_zero_divisors_exist():
    # (1 + j)(1 - j + j^2) = 1 + j^3 = 0
    z = TernaryNumber(1, -1, 1) * TernaryNumber(1, 1, 0)
    assert z.as_tuple() == (0, 0, 0)


def test_unit_is_identity():
    z = TernaryNumber(0.3, -2.0, 7.5)
    assert ONE * z == z == z * ONE
