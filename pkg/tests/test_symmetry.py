import json
from importlib import resources
from math import comb

import pytest
from hypothesis import given, strategies as st

from heatsym.exact import T, X, Y
from heatsym.jet import U, DiffFunction, normal_form, residual
from heatsym.parser import parse_combination, parse_diff, parse_relation
from heatsym.symmetry import (
    apply_recursion,
    apply_word,
    basis,
    characteristics,
    count_by_dependencies,
    dependency_total,
    deps_cross_order,
    deps_same_order,
    enumerate_words,
    evaluate_combination,
    formula_N,
    independent_count,
    rank_of,
    verify_relation,
)


def fixture(name):
    return json.loads((resources.files("heatsym") / "data" / name).read_text())


words = st.lists(st.integers(1, 9), max_size=3)


def test_apply_recursion_examples():
    assert apply_recursion(1, U) == DiffFunction.u("Ux", 2 * T) + U * X
    assert apply_recursion(6, U) == DiffFunction.u("Ux")
    expected = DiffFunction.u("Uxx", 4 * T * T) + DiffFunction.u("Ux", 4 * T * X) + U * (X * X + 2 * T)
    assert apply_recursion(1, apply_recursion(1, U)) == expected
    with pytest.raises(ValueError):
        apply_recursion(10, U)


def test_apply_word_examples():
    assert apply_word([]) == U
    expected = (DiffFunction.u("Uxy", 4 * T * T) + DiffFunction.u("Ux", 2 * T * Y)
                + DiffFunction.u("Uy", 2 * T * X) + U * (X * Y))
    assert apply_word([1, 2]) == expected
    assert apply_word([6, 9]) == DiffFunction.u("Uxz")


@given(words)
def test_words_yield_symmetries(word):
    Q = apply_word(word)
    assert Q.is_normal()
    assert residual(Q).is_zero()


@given(words, st.integers(1, 9))
def test_operators_are_linear(word, i):
    Q = apply_word(word)
    assert apply_recursion(i, Q * 3 + U) == apply_recursion(i, Q) * 3 + apply_recursion(i, U)


@given(words)
def test_characteristics_cache_matches_direct(word):
    ws = [word, word[1:], [5] + word]
    assert characteristics(ws) == [apply_word(w) for w in ws]


def test_enumerate_words_sizes():
    assert len(enumerate_words(1)) == 10
    assert len(enumerate_words(2)) == 55
    assert len(enumerate_words(3)) == 220
    assert len(enumerate_words(2, mode="all")) == 1 + 9 + 81
    assert enumerate_words(1)[:3] == [(), (1,), (2,)]


def test_rank_examples():
    assert rank_of([U, U * 2]) == 1
    assert rank_of(characteristics(enumerate_words(1))) == 10
    assert rank_of(characteristics(enumerate_words(2))) == 50


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 10), (2, 50), (3, 175), (4, 490)])
def test_independent_count(n, expected):
    res = independent_count(n)
    assert (res.enumerated_rank, res.formula_value, res.agree) == (expected, expected, True)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_all_words_rank_equals_nondecreasing_rank(n):
    assert independent_count(n, mode="all").enumerated_rank == independent_count(n).enumerated_rank


def test_formula_values():
    assert [formula_N(n) for n in range(7)] == [1, 10, 50, 175, 490, 1176, 2520]


def test_dependency_counts():
    assert [deps_same_order(k) for k in (0, 2, 3)] == [0, 2, 18]
    assert [deps_cross_order(k) for k in (0, 1, 2)] == [0, 3, 22]
    assert [dependency_total(n) for n in range(2, 7)] == [5, 40, 180, 601, 1659]


@given(st.integers(0, 30))
def test_dependency_bookkeeping_matches_closed_form(n):
    # words of order exactly k minus the dependencies found at that order
    assert count_by_dependencies(n) == formula_N(n)
    assert sum(comb(k + 8, k) - dependency_total(k) for k in range(n + 1)) == formula_N(n)


def test_basis_sizes_and_first_entries():
    b1 = basis(1)
    assert len(b1) == 10
    assert b1[0] == ((), U) and b1[1] == ((1,), apply_word([1]))
    assert len(basis(2)) == 50
    assert len(basis(3)) == 175


def test_basis_spans_every_word():
    b = basis(2)
    base_rank = rank_of([Q for _, Q in b])
    assert base_rank == 50
    assert rank_of([Q for _, Q in b] + characteristics(enumerate_words(2, mode="all"))) == 50


@pytest.mark.parametrize("entry", fixture("first_order.json"), ids=lambda e: e["name"])
def test_first_order_list(entry):
    Q = apply_word(evaluate_combination_word(entry["words"]))
    printed = parse_diff(entry["printed"])
    if entry.get("typo"):
        assert not residual(printed).is_zero()
        assert parse_diff(entry["corrected"]) == Q
    else:
        assert printed == Q
    assert residual(Q).is_zero()


def evaluate_combination_word(text):
    (c, w), = parse_combination(text)
    assert c == 1
    return w


@pytest.mark.parametrize("entry", fixture("second_order.json"), ids=lambda e: e["name"])
def test_second_order_list(entry):
    Q = evaluate_combination(parse_combination(entry["words"]))
    printed = normal_form(parse_diff(entry["printed"]))
    if entry.get("typo"):
        assert printed != Q
        assert normal_form(parse_diff(entry["corrected"])) == Q
    else:
        assert printed == Q


def test_relation_examples():
    assert verify_relation(parse_relation("R4 == -R1 R8 + R2 R6")).holds
    assert verify_relation(parse_relation("R3 R4 == R2 R5 - R1 R7")).holds
    printed = verify_relation(parse_relation("R5 R8 == -R1 R8 R9 + R3 R6 R6"))
    assert not printed.holds and not printed.residual.is_zero()
    assert verify_relation(parse_relation("R5 R8 == -R1 R8 R9 + R3 R6 R8")).holds


@pytest.mark.parametrize("entry", fixture("relations.json"), ids=lambda e: e["name"])
def test_shipped_relations(entry):
    chk = verify_relation(parse_relation(f"{entry['lhs']} == {entry['rhs']}"))
    assert chk.holds == (not entry.get("typo", False))


def test_every_typo_has_a_verified_correction():
    entries = fixture("relations.json")
    corrections = {e["corrects"]: e for e in entries if e.get("corrects")}
    typos = [e for e in entries if e.get("typo")]
    assert {e["name"] for e in typos} == set(corrections)
    assert "thi_1.14" in corrections



@pytest.mark.slow
@pytest.mark.parametrize("n,expected", [(5, 1176), (6, 2520)])
def test_independent_count_higher_orders(n, expected):
    res = independent_count(n, jobs=2)
    assert res.enumerated_rank == expected == res.formula_value


@pytest.mark.slow
def test_all_words_rank_order_4():
    assert independent_count(4, mode="all").enumerated_rank == 490
