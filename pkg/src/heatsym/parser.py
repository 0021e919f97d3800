"""Parsers for characteristic expressions, operator words and word relations.

Expression grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := rational | var ['^' int] | Uderiv | '(' expr ')'
    Uderiv := 'U' [xyzt]*          (also U_xy and U_{xy})

``2t*Ux + x*U``, ``4t^2 Uxx`` and ``(x^2 + 2*t)*U`` are all accepted.  Lowering
requires every product to contain exactly one U-factor, so the result is
linear in U.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .exact import ZERO, Polynomial
from .jet import DiffFunction, parse_deriv_name


class ParseError(ValueError):
    """Syntax or typing error, annotated with a character offset."""

    def __init__(self, message: str, pos: int, src: str = ""):
        self.pos = pos
        self.src = src
        detail = f"{message} at position {pos}"
        if src:
            detail += f"\n  {src}\n  {' ' * pos}^"
        super().__init__(detail)


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    power: int = 1


@dataclass(frozen=True)
class Deriv:
    name: str


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]  # (sign, node)


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


Node = Union[Num, Var, Deriv, Sum, Product]
ExprAst = Node


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<deriv>U(?:_\{[xyzt]*\}|_[xyzt]+|[xyzt]*))
  | (?P<var>[xyzt])
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(src: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unknown symbol {src[pos]!r}", pos, src)
        kind = m.lastgroup
        if kind != "ws":
            toks.append((kind, m.group(), pos))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.src)

    def expr(self) -> Node:
        terms = []
        sign = 1
        kind, text, _ = self.peek()
        if kind == "op" and text in "+-":
            self.take()
            sign = -1 if text == "-" else 1
        terms.append((sign, self.term()))
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                terms.append((-1 if text == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def _starts_factor(self, tok) -> bool:
        kind, text, _ = tok
        return kind in ("num", "var", "deriv") or (kind == "op" and text == "(")

    def term(self) -> Node:
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                factors.append(self.factor())
            elif self._starts_factor(tok):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        tok = self.take()
        kind, text, _ = tok
        if kind == "num":
            return Num(Fraction(text))
        if kind == "var":
            power = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                ptok = self.take()
                if ptok[0] != "num" or "/" in ptok[1]:
                    self.error("expected integer exponent", ptok)
                power = int(ptok[1])
            return Var(text, power)
        if kind == "deriv":
            name = "U" + re.sub(r"[_{}]", "", text[1:])
            return Deriv(name)
        if kind == "op" and text == "(":
            node = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close)
            return node
        self.error("expected a number, variable, U-derivative or '('", tok)


def parse_expr(src: str) -> ExprAst:
    p = _Parser(src)
    if p.peek()[0] == "end":
        p.error("empty expression")
    node = p.expr()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return node


# -- lowering ----------------------------------------------------------------

def _lower(node: Node):
    """Returns a Polynomial (U-free) or a DiffFunction (linear in U)."""
    if isinstance(node, Num):
        return Polynomial.constant(node.value)
    if isinstance(node, Var):
        return Polynomial.var(node.name, node.power)
    if isinstance(node, Deriv):
        return DiffFunction.u(parse_deriv_name(node.name))
    if isinstance(node, Product):
        poly = Polynomial.constant(1)
        df = None
        for f in node.factors:
            v = _lower(f)
            if isinstance(v, DiffFunction):
                if df is not None:
                    raise ValueError("product of two U-dependent factors is not linear in U")
                df = v
            else:
                poly = poly * v
        return poly if df is None else df * poly
    if isinstance(node, Sum):
        parts = [(s, _lower(t)) for s, t in node.terms]
        has_df = any(isinstance(v, DiffFunction) for _, v in parts)
        if not has_df:
            acc = ZERO
            for s, v in parts:
                acc = acc + v * s
            return acc
        acc = DiffFunction()
        for s, v in parts:
            if isinstance(v, Polynomial):
                if v:
                    raise ValueError("sum mixes U-free and U-dependent terms")
                continue
            acc = acc + v * s
        return acc
    raise TypeError(f"unknown node {node!r}")


def lower(node: ExprAst) -> DiffFunction:
    v = _lower(node)
    if isinstance(v, Polynomial):
        if v:
            raise ValueError("expression has no U-dependence")
        return DiffFunction()
    return v


def parse_diff(src: str) -> DiffFunction:
    """Parse and lower in one step; typing errors become ParseError at offset 0."""
    node = parse_expr(src)
    try:
        return lower(node)
    except ValueError as exc:
        raise ParseError(str(exc), 0, src) from None


def parse_polynomial(src: str) -> Polynomial:
    v = _lower(parse_expr(src))
    if isinstance(v, DiffFunction):
        raise ParseError("polynomial expected, found U-dependence", 0, src)
    return v


# -- words and relations -----------------------------------------------------

_WORD_TOKEN = re.compile(r"\s*(?:(?P<R>R_?\{?(?P<idx>\d+)\}?)|(?P<I>I\b)|(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*])|(?P<bad>\S))")


def parse_word(src: str) -> Tuple[int, ...]:
    """``"R1 R8"`` (or ``"R1R8"``) -> ``(1, 8)``; ``"I"`` or ``""`` is the empty word."""
    comb = parse_combination(src) if src.strip() else [(Fraction(1), ())]
    if len(comb) != 1 or comb[0][0] != 1:
        raise ParseError("expected a single operator word", 0, src)
    return comb[0][1]


def parse_combination(src: str) -> List[Tuple[Fraction, Tuple[int, ...]]]:
    """Rational combination of words such as ``-R1 R8 + 2 R2 R6``."""
    terms: List[Tuple[Fraction, Tuple[int, ...]]] = []
    sign = 1
    coeff = None
    word: List[int] = []
    seen_item = False
    pos = 0

    def flush(at):
        nonlocal coeff, word, seen_item, sign
        if not seen_item:
            raise ParseError("missing term", at, src)
        c = Fraction(sign) * (coeff if coeff is not None else 1)
        terms.append((c, tuple(word)))
        coeff, word, seen_item, sign = None, [], False, 1

    src_s = src.rstrip()
    while pos < len(src_s):
        m = _WORD_TOKEN.match(src_s, pos)
        if not m or m.group("bad"):
            at = m.start("bad") if m else pos
            raise ParseError(f"unexpected {src_s[at]!r} in operator combination", at, src)
        if m.group("R"):
            idx = int(m.group("idx"))
            if not 1 <= idx <= 9:
                raise ParseError(f"no recursion operator R{idx}", m.start("R"), src)
            word.append(idx)
            seen_item = True
        elif m.group("I"):
            if word:
                raise ParseError("identity inside a word", m.start("I"), src)
            seen_item = True
        elif m.group("num"):
            if seen_item:
                raise ParseError("coefficient must precede the word", m.start("num"), src)
            coeff = (coeff or 1) * Fraction(m.group("num"))
        elif m.group("op") in "+-":
            if seen_item:
                flush(m.start("op"))
            elif coeff is not None:
                raise ParseError("dangling coefficient", m.start("op"), src)
            if m.group("op") == "-":
                sign = -sign
        # '*' between coefficient and word is allowed and ignored
        pos = m.end()
    if seen_item:
        flush(len(src_s))
    elif coeff is not None:
        terms.append((Fraction(sign) * coeff, ()))
    elif terms or sign != 1:
        raise ParseError("missing term", len(src_s), src)
    return terms


def parse_relation(src: str):
    from .symmetry import WordRelation

    if src.count("==") != 1:
        raise ParseError("relation must contain exactly one '=='", 0, src)
    lhs, rhs = src.split("==")
    return WordRelation(parse_combination(lhs), parse_combination(rhs))

