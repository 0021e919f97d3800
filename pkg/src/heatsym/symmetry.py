"""Recursion operators of the 3+1 heat equation and the hierarchy they generate.

Nine first-order operators ``R_i = xi_x D_x + xi_y D_y + xi_z D_z + phi`` map
symmetry characteristics to symmetry characteristics.  Applying words
``R_{i_1} ... R_{i_k}`` to the seed ``U`` generates the linear generalized
symmetries; this module counts how many of them are independent and checks
the linear relations among them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from .exact import ONE, ZERO, Polynomial, T, X, Y, Z, exp_key
from .jet import U, DiffFunction, deriv_key, normal_form, total_derivative
from .linalg import independent_rows

Word = Tuple[int, ...]


@dataclass(frozen=True)
class RecursionOperator:
    xi_x: Polynomial
    xi_y: Polynomial
    xi_z: Polynomial
    phi: Polynomial

    def __call__(self, Q: DiffFunction) -> DiffFunction:
        out = Q * self.phi
        for axis, xi in enumerate((self.xi_x, self.xi_y, self.xi_z)):
            if xi:
                out = out + total_derivative(Q, axis) * xi
        return normal_form(out)


RECURSION_OPERATORS: Dict[int, RecursionOperator] = {
    1: RecursionOperator(2 * T, ZERO, ZERO, X),
    2: RecursionOperator(ZERO, 2 * T, ZERO, Y),
    3: RecursionOperator(ZERO, ZERO, 2 * T, Z),
    4: RecursionOperator(Y, -X, ZERO, ZERO),
    5: RecursionOperator(Z, ZERO, -X, ZERO),
    6: RecursionOperator(ONE, ZERO, ZERO, ZERO),
    7: RecursionOperator(ZERO, Z, -Y, ZERO),
    8: RecursionOperator(ZERO, ONE, ZERO, ZERO),
    9: RecursionOperator(ZERO, ZERO, ONE, ZERO),
}


def apply_recursion(i: int, Q: DiffFunction) -> DiffFunction:
    try:
        op = RECURSION_OPERATORS[i]
    except KeyError:
        raise ValueError(f"recursion operator index must be in 1..9, got {i!r}") from None
    return op(Q)


def apply_word(word: Sequence[int], seed: DiffFunction = U) -> DiffFunction:
    """``R_{w[0]}(R_{w[1]}(...R_{w[-1]}(seed)))``; the empty word is the identity."""
    Q = seed
    for i in reversed(tuple(word)):
        Q = apply_recursion(i, Q)
    return Q


def word_str(word: Sequence[int]) -> str:
    return " ".join(f"R{i}" for i in word) if word else "I"


def is_nondecreasing(word: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(word, word[1:]))


def enumerate_words(n: int, mode: str = "nondecreasing") -> List[Word]:
    """All words of length 0..n, shorter first, lexicographic within a length."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if mode == "nondecreasing":
        gen = itertools.combinations_with_replacement
    elif mode == "all":
        gen = lambda pool, k: itertools.product(pool, repeat=k)  # noqa: E731
    else:
        raise ValueError(f"mode must be 'nondecreasing' or 'all', got {mode!r}")
    words: List[Word] = []
    for k in range(n + 1):
        words.extend(gen(range(1, 10), k))
    return words


def characteristics(words: Iterable[Sequence[int]], seed: DiffFunction = U) -> List[DiffFunction]:
    """Characteristics of many words, sharing work through their common suffixes."""
    cache: Dict[Word, DiffFunction] = {(): seed}

    def get(w: Word) -> DiffFunction:
        # iterative: find the longest cached suffix, then walk back out
        k = len(w)
        while w[len(w) - k:] not in cache:
            k -= 1
        while k < len(w):
            k += 1
            suffix = w[len(w) - k:]
            cache[suffix] = apply_recursion(suffix[0], cache[suffix[1:]])
        return cache[w]

    return [get(tuple(w)) for w in words]


def _column_key(col):
    J, e = col
    return (deriv_key(J), exp_key(e))


def coefficient_row(Q: DiffFunction) -> Dict[tuple, object]:
    """Flatten ``Q`` to a sparse vector indexed by (DerivIndex, MonomialExp)."""
    return {(J, e): c for J, p in Q._terms.items() for e, c in p._terms.items()}


def independent_subset(chars: Sequence[DiffFunction], jobs: int = 1) -> List[int]:
    rows = [coefficient_row(Q) for Q in chars]
    return independent_rows(rows, column_key=_column_key, jobs=jobs)


def rank_of(chars: Sequence[DiffFunction], jobs: int = 1) -> int:
    """Dimension of the rational span of the given normal characteristics."""
    return len(independent_subset(chars, jobs=jobs))


def formula_N(n: int) -> int:
    """Closed-form count of independent symmetries of order <= n."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    num = (n + 4) * (n + 3) ** 2 * (n + 2) ** 2 * (n + 1)
    q, r = divmod(num, 144)
    assert r == 0
    return q


def _c(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def deps_same_order(k: int) -> int:
    """Relations among the order-k nondecreasing words themselves."""
    if k < 0:
        raise ValueError("order must be nonnegative")
    return _c(k + 8, k) - 4 * _c(k + 6, k) + 4 * _c(k + 5, k) - _c(k + 4, k)


def deps_cross_order(k: int) -> int:
    """Relations expressing order-k words through order-(k+1) words.

    ``deps_cross_order(1) == 3`` counts the three first-order rotations that
    become combinations of second-order words.
    """
    if k < 0:
        raise ValueError("order must be nonnegative")
    return 4 * _c(k + 6, k) - 5 * _c(k + 5, k) + _c(k + 4, k)


def dependency_total(n: int) -> int:
    """Relations discovered when passing to order n: same-order at n plus cross-order from n-1."""
    return deps_same_order(n) + (deps_cross_order(n - 1) if n >= 1 else 0)


def count_by_dependencies(n: int) -> int:
    """Word count minus all dependencies; must reproduce ``formula_N``."""
    words = sum(_c(k + 8, 8) for k in range(n + 1))
    return words - sum(deps_cross_order(k) for k in range(n)) - sum(deps_same_order(k) for k in range(n + 1))


@dataclass(frozen=True)
class CountResult:
    order: int
    enumerated_rank: int
    formula_value: int

    @property
    def agree(self) -> bool:
        return self.enumerated_rank == self.formula_value


def independent_count(n: int, mode: str = "nondecreasing", jobs: int = 1) -> CountResult:
    chars = characteristics(enumerate_words(n, mode))
    return CountResult(n, rank_of(chars, jobs=jobs), formula_N(n))


def basis(n: int, jobs: int = 1) -> List[Tuple[Word, DiffFunction]]:
    """Greedy independent subset of the nondecreasing words of length <= n."""
    words = enumerate_words(n)
    chars = characteristics(words)
    keep = independent_subset(chars, jobs=jobs)
    return [(words[i], chars[i]) for i in keep]


# -- relations ---------------------------------------------------------------

Combination = List[Tuple[Fraction, Word]]


@dataclass
class WordRelation:
    lhs: Combination
    rhs: Combination
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __str__(self):
        return f"{combination_str(self.lhs)} == {combination_str(self.rhs)}"


def combination_str(comb_: Combination) -> str:
    if not comb_:
        return "0"
    out = []
    for c, w in comb_:
        c = Fraction(c)
        mag = abs(c)
        body = word_str(w) if mag == 1 else f"{mag} {word_str(w)}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def evaluate_combination(comb_: Combination, seed: DiffFunction = U) -> DiffFunction:
    words = [w for _, w in comb_]
    total = DiffFunction()
    for (c, _), Q in zip(comb_, characteristics(words, seed)):
        total = total + Q * c
    return total


@dataclass(frozen=True)
class RelationCheck:
    holds: bool
    residual: DiffFunction


def verify_relation(rel: WordRelation, seed: DiffFunction = U) -> RelationCheck:
    diff = normal_form(evaluate_combination(rel.lhs, seed) - evaluate_combination(rel.rhs, seed))
    return RelationCheck(diff.is_zero(), diff)
