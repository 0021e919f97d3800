from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from heatsym.exact import ONE, T, X, Y, Z, ZERO, Polynomial, as_rational, poly_is_zero
from conftest import polynomials

sx, sy, sz, st_ = sympy.symbols("x y z t")


def to_sympy(p: Polynomial):
    return sum((sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c))
               * sx**e[0] * sy**e[1] * sz**e[2] * st_**e[3] for e, c in p.terms.items())


def test_addition_examples():
    assert (X + (-X)).is_zero()
    assert str(2 * T + X) == "x + 2*t"
    assert (X * X - Z * Z) + (Z * Z - Y * Y) == X * X - Y * Y


def test_multiplication_examples():
    assert (X * ZERO).is_zero()
    assert (2 * T) * X == Polynomial.monomial((1, 0, 0, 1), 2)
    assert str((2 * T) * (2 * T)) == "4*t^2"


def test_partial_examples():
    assert (X * X).partial("x") == 2 * X
    assert (2 * T).partial("t") == Polynomial.constant(2)
    assert (X * X * Y - Z * Z * Y).partial("y") == X * X - Z * Z


def test_is_zero_examples():
    assert poly_is_zero(ZERO)
    assert poly_is_zero(X - X)
    assert not poly_is_zero(X + T)


def test_coefficients_stay_exact():
    p = X.scale(Fraction(1, 3)) * 3
    assert p == X
    assert type(p.coeff((1, 0, 0, 0))) is int
    assert str(X.scale(Fraction(-2, 3))) == "-2/3*x"


def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("6/4") == Fraction(3, 2)


@given(polynomials, polynomials, polynomials)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()
    assert p * ONE == p


@given(polynomials, polynomials)
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(polynomials)
def test_partials_commute_and_match_sympy(p):
    assert p.partial("x").partial("t") == p.partial("t").partial("x")
    for name, sym in zip("xyzt", (sx, sy, sz, st_)):
        assert sympy.expand(to_sympy(p.partial(name)) - sympy.diff(to_sympy(p), sym)) == 0


@given(polynomials, polynomials)
def test_leibniz(p, q):
    assert (p * q).partial("y") == p.partial("y") * q + p * q.partial("y")


@given(polynomials)
def test_json_round_trip(p):
    assert Polynomial.from_json(p.to_json()) == p


def test_from_json_rejects_duplicates():
    with pytest.raises(ValueError):
        Polynomial.from_json([{"exp": [1, 0, 0, 0], "coeff": "1"}, {"exp": [1, 0, 0, 0], "coeff": "2"}])
