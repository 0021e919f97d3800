from fractions import Fraction

import pytest
from hypothesis import given

from heatsym.exact import T, X, Z, Polynomial
from heatsym.jet import U, DiffFunction, render
from heatsym.parser import (
    ParseError,
    Product,
    parse_combination,
    parse_diff,
    parse_expr,
    parse_polynomial,
    parse_relation,
    parse_word,
)
from conftest import diff_functions


def test_examples():
    assert parse_diff("2t*Ux + x*U") == DiffFunction.u("Ux", 2 * T) + U * X
    assert parse_diff("U") == U
    assert parse_diff("2t Uxz + z Ux") == DiffFunction.u("Uxz", 2 * T) + DiffFunction.u("Ux", Z)


@pytest.mark.parametrize("src", ["4t^2 Uxx", "4*t^2*Uxx", "4 t t Uxx", "(2t)(2t) U_xx", "4t^2*U_{xx}"])
def test_equivalent_spellings(src):
    assert parse_diff(src) == DiffFunction.u("Uxx", 4 * T * T)


def test_distribution_and_rationals():
    assert parse_diff("x(2t Uy + y U)") == parse_diff("2x t Uy + x y U")
    assert parse_diff("1/2 x Ux - 3/4 U") == DiffFunction.u("Ux", X.scale(Fraction(1, 2))) - U * Fraction(3, 4)
    assert parse_diff("Ut") == DiffFunction.u((0, 0, 0, 1))
    assert parse_diff("U - U").is_zero()


def test_ast_shape():
    node = parse_expr("2t*Ux")
    assert isinstance(node, Product) and len(node.factors) == 3


def test_polynomial():
    assert parse_polynomial("x^2 - (z + 1)(z - 1)") == X * X - Z * Z + 1
    with pytest.raises(ParseError):
        parse_polynomial("x Ux")


@pytest.mark.parametrize("src,pos", [("U +", 3), ("2t * (Ux", 8), ("x # U", 2), ("", 0), ("x^y U", 2), ("U)", 1)])
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as exc:
        parse_diff(src)
    assert exc.value.pos == pos


@pytest.mark.parametrize("src", ["Ux Uy", "x + U", "x^2"])
def test_typing_errors(src):
    with pytest.raises(ParseError):
        parse_diff(src)


@given(diff_functions)
def test_render_round_trip(f):
    assert parse_diff(render(f)) == f


def test_words_and_relations():
    assert parse_word("R1 R8") == (1, 8)
    assert parse_word("R1R8") == (1, 8)
    assert parse_word("I") == ()
    assert parse_combination("-R1 R8 + 2 R2 R6") == [(Fraction(-1), (1, 8)), (Fraction(2), (2, 6))]
    rel = parse_relation("R4 == -R1 R8 + R2 R6")
    assert rel.lhs == [(Fraction(1), (4,))]
    assert str(rel) == "R4 == -R1 R8 + R2 R6"
    with pytest.raises(ParseError):
        parse_relation("R4 = R1")
    with pytest.raises(ParseError):
        parse_word("R10")
