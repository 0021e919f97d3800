"""Exact rationals and sparse polynomials in x, y, z, t.

Coefficients are kept as ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise; both compare and hash consistently, and the
integer fast path matters for the rank computations downstream.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]
MonomialExp = Tuple[int, int, int, int]

VARS = ("x", "y", "z", "t")
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}
ZERO_EXP: MonomialExp = (0, 0, 0, 0)


def as_rational(value) -> Number:
    """Coerce ``value`` (int, Fraction, or ``"p/q"`` string) to a reduced exact number."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        value = Fraction(value.strip())
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _reduce(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def rational_to_str(c: Number) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def var_index(v: str) -> int:
    try:
        return _VAR_INDEX[v]
    except KeyError:
        raise ValueError(f"unknown variable {v!r}; expected one of {VARS}") from None


def exp_key(e: MonomialExp):
    """Graded lexicographic sort key on (a, b, c, d): lower degree first, x-heaviest first within a degree."""
    return (sum(e), -e[0], -e[1], -e[2], -e[3])


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    >>> t = Polynomial.var("t")
    >>> str(2 * t * (2 * t))
    '4*t^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[MonomialExp, Number] | None = None):
        clean: Dict[MonomialExp, Number] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != 4 or any((not isinstance(k, int)) or k < 0 for k in e):
                    raise ValueError(f"bad exponent vector {e!r}")
                c = as_rational(c)
                if c:
                    clean[e] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[MonomialExp, Number]) -> "Polynomial":
        # trusted constructor: keys valid, values nonzero and reduced
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Polynomial":
        e = [0, 0, 0, 0]
        e[var_index(name)] = power
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, exp: Iterable[int], c=1) -> "Polynomial":
        return cls({tuple(exp): c})

    # -- accessors --------------------------------------------------------
    @property
    def terms(self) -> Dict[MonomialExp, Number]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[MonomialExp, Number]]:
        """Terms in canonical (graded lex) order."""
        for e in sorted(self._terms, key=exp_key):
            yield e, self._terms[e]

    def coeff(self, exp: MonomialExp) -> Number:
        return self._terms.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == ZERO_EXP for e in self._terms)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _reduce(s)
            else:
                out.pop(e, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial._raw({})
        if c == 1:
            return self
        return Polynomial._raw({e: _reduce(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: Dict[MonomialExp, Number] = {}
        for (a1, b1, c1, d1), v1 in self._terms.items():
            for (a2, b2, c2, d2), v2 in other._terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2, d1 + d2)
                out[e] = out.get(e, 0) + v1 * v2
        return Polynomial._raw({e: _reduce(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def partial(self, v: str | int) -> "Polynomial":
        """Formal partial derivative with respect to ``v``."""
        i = var_index(v) if isinstance(v, str) else v
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                out[tuple(e2)] = _reduce(c * k)
        return Polynomial._raw(out)

    def laplacian(self) -> "Polynomial":
        return sum((self.partial(i).partial(i) for i in range(3)), Polynomial())

    def evaluate(self, point: Mapping[str, Number]) -> Number:
        total = 0
        for e, c in self._terms.items():
            term = c
            for name, k in zip(VARS, e):
                if k:
                    term *= Fraction(point[name]) ** k
            total += term
        return _reduce(Fraction(total))

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        # highest degree first reads naturally
        for e, c in sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), exp_key(kv[0]))):
            mono = monomial_str(e)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{rational_to_str(mag)}*{mono}"
            else:
                body = rational_to_str(mag)
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list:
        return [{"exp": list(e), "coeff": rational_to_str(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        if not isinstance(data, list):
            raise ValueError("polynomial JSON must be an array")
        terms: Dict[MonomialExp, Number] = {}
        for item in data:
            e = tuple(item["exp"])
            if e in terms:
                raise ValueError(f"duplicate exponent {list(e)}")
            terms[e] = as_rational(str(item["coeff"]))
        return cls(terms)


def monomial_str(e: MonomialExp) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


ZERO = Polynomial()
ONE = Polynomial.constant(1)
X = Polynomial.var("x")
Y = Polynomial.var("y")
Z = Polynomial.var("z")
T = Polynomial.var("t")


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_partial(p: Polynomial, v: str) -> Polynomial:
    return p.partial(v)


def poly_is_zero(p: Polynomial) -> bool:
    return p.is_zero()
