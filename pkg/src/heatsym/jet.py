"""Differential functions linear in U, total derivatives, and on-shell normal form.

A derivative ``U_J`` is addressed by a ``DerivIndex`` tuple ``(i, j, k, m)``
giving the orders of d/dx, d/dy, d/dz and d/dt.  A ``DiffFunction`` is a finite
sum ``sum_J p_J * U_J`` with polynomial coefficients ``p_J``.

The heat equation ``U_t = U_xx + U_yy + U_zz`` is used to eliminate every
t-derivative; the eliminated part is recorded as a ``ReductionCertificate``
``{J: c_J}`` with ``f = normal(f) + sum_J c_J * D_J(U_t - U_xx - U_yy - U_zz)``.
"""
from __future__ import annotations

import heapq
from typing import Dict, Iterator, Mapping, Tuple

from .exact import ZERO, Number, Polynomial, as_rational, var_index

DerivIndex = Tuple[int, int, int, int]

U0: DerivIndex = (0, 0, 0, 0)
# (x, y, z, t) unit steps, same slot order as MonomialExp
UNIT: Tuple[DerivIndex, ...] = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
_SECOND_SPATIAL = ((2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0))


def add_index(a: DerivIndex, b: DerivIndex) -> DerivIndex:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def deriv_key(J: DerivIndex):
    """Graded lexicographic sort key on (i, j, k, m), same convention as ``exp_key``."""
    return (sum(J), -J[0], -J[1], -J[2], -J[3])


def deriv_name(J: DerivIndex) -> str:
    """``(1, 0, 0, 0) -> 'Ux'``; the identity index gives ``'U'``."""
    return "U" + "x" * J[0] + "y" * J[1] + "z" * J[2] + "t" * J[3]


def parse_deriv_name(name: str) -> DerivIndex:
    if not name.startswith("U"):
        raise ValueError(f"derivative symbol must start with 'U': {name!r}")
    counts = [0, 0, 0, 0]
    for ch in name[1:]:
        counts[var_index(ch)] += 1
    return tuple(counts)


def is_normal_index(J: DerivIndex) -> bool:
    return J[3] == 0


class DiffFunction:
    """Immutable finite sum ``sum_J p_J U_J``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[DerivIndex, Polynomial] | None = None):
        clean: Dict[DerivIndex, Polynomial] = {}
        if terms:
            for J, p in terms.items():
                J = tuple(J)
                if len(J) != 4 or any((not isinstance(k, int)) or k < 0 for k in J):
                    raise ValueError(f"bad derivative index {J!r}")
                if not isinstance(p, Polynomial):
                    p = Polynomial.constant(p)
                if p:
                    clean[J] = p
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[DerivIndex, Polynomial]) -> "DiffFunction":
        f = object.__new__(cls)
        f._terms = terms
        f._hash = None
        return f

    @classmethod
    def u(cls, J: DerivIndex | str = U0, coeff: Polynomial | Number = 1) -> "DiffFunction":
        """Single term ``coeff * U_J``; ``J`` may be a name such as ``'Uxy'``."""
        if isinstance(J, str):
            J = parse_deriv_name(J)
        return cls({J: coeff})

    # -- accessors --------------------------------------------------------
    @property
    def terms(self) -> Dict[DerivIndex, Polynomial]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[DerivIndex, Polynomial]]:
        for J in sorted(self._terms, key=deriv_key):
            yield J, self._terms[J]

    def coeff(self, J: DerivIndex | str) -> Polynomial:
        if isinstance(J, str):
            J = parse_deriv_name(J)
        return self._terms.get(tuple(J), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_normal(self) -> bool:
        return all(J[3] == 0 for J in self._terms)

    def order(self) -> int:
        """Highest total derivative order present (-1 for the zero function)."""
        return max((sum(J) for J in self._terms), default=-1)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, DiffFunction):
            return NotImplemented
        out = dict(self._terms)
        for J, p in other._terms.items():
            q = out.get(J)
            q = p if q is None else q + p
            if q:
                out[J] = q
            else:
                out.pop(J, None)
        return DiffFunction._raw(out)

    def __neg__(self):
        return DiffFunction._raw({J: -p for J, p in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, DiffFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiply by a rational or by a polynomial coefficient."""
        if isinstance(other, Polynomial):
            if not other:
                return DiffFunction._raw({})
            out = {}
            for J, p in self._terms.items():
                q = p * other
                if q:
                    out[J] = q
            return DiffFunction._raw(out)
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            return DiffFunction._raw({})
        return DiffFunction._raw({J: p.scale(c) for J, p in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiffFunction):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"DiffFunction({str(self)!r})"

    def __str__(self):
        return render(self)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list:
        return [{"deriv": list(J), "poly": p.to_json()} for J, p in self.items()]

    @classmethod
    def from_json(cls, data) -> "DiffFunction":
        if not isinstance(data, list):
            raise ValueError("DiffFunction JSON must be an array")
        terms = {}
        for item in data:
            J = tuple(item["deriv"])
            if J in terms:
                raise ValueError(f"duplicate derivative index {list(J)}")
            terms[J] = Polynomial.from_json(item["poly"])
        return cls(terms)


ZERO_DF = DiffFunction()
U = DiffFunction.u()


def render(f: DiffFunction) -> str:
    """Text form accepted back by the expression parser, e.g. ``2*t*Ux + x*U``."""
    if f.is_zero():
        return "0"
    pieces = []
    # highest derivative order first, as characteristics are usually written
    for J, p in sorted(f._terms.items(), key=lambda kv: (-sum(kv[0]), deriv_key(kv[0]))):
        name = deriv_name(J)
        if len(p) == 1:
            (e, c), = p.items()
            mono = str(Polynomial.monomial(e, abs(c)))
            neg = c < 0
            body = name if mono == "1" else f"{mono}*{name}"
        else:
            neg = False
            body = f"({p})*{name}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def total_derivative(f: DiffFunction, v: str | int) -> DiffFunction:
    """``D_v f``: explicit derivative of each coefficient plus the jet shift."""
    i = var_index(v) if isinstance(v, str) else v
    step = UNIT[i]
    out: Dict[DerivIndex, Polynomial] = {}
    for J, p in f._terms.items():
        dp = p.partial(i)
        if dp:
            q = out.get(J)
            out[J] = dp if q is None else q + dp
        K = add_index(J, step)
        q = out.get(K)
        out[K] = p if q is None else q + p
    return DiffFunction._raw({J: p for J, p in out.items() if p})


def total_derivative_multi(f: DiffFunction, J: DerivIndex) -> DiffFunction:
    """``D_J f`` for a multi-index ``J = (i, j, k, m)``."""
    for axis, n in enumerate(J):
        for _ in range(n):
            f = total_derivative(f, axis)
    return f


def laplacian(f: DiffFunction) -> DiffFunction:
    out = ZERO_DF
    for axis in range(3):
        out = out + total_derivative(total_derivative(f, axis), axis)
    return out


class ReductionCertificate:
    """Coefficients ``c_J`` with ``f - normal(f) = sum_J c_J * D_J(F)``, ``F = U_t - Lap U``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[DerivIndex, Polynomial] | None = None):
        self.coeffs: Dict[DerivIndex, Polynomial] = {
            tuple(J): p for J, p in (coeffs or {}).items() if p
        }

    def items(self):
        for J in sorted(self.coeffs, key=deriv_key):
            yield J, self.coeffs[J]

    def is_empty(self) -> bool:
        return not self.coeffs

    def expand(self) -> DiffFunction:
        """``sum_J c_J D_J(F)`` written out term by term, with no normalization."""
        out: Dict[DerivIndex, Polynomial] = {}

        def put(K, p):
            q = out.get(K)
            q = p if q is None else q + p
            if q:
                out[K] = q
            else:
                out.pop(K, None)

        for J, c in self.coeffs.items():
            put(add_index(J, UNIT[3]), c)
            for e in _SECOND_SPATIAL:
                put(add_index(J, e), -c)
        return DiffFunction._raw(out)

    def reconstruct(self, normal: DiffFunction) -> DiffFunction:
        return normal + self.expand()

    def __eq__(self, other):
        if not isinstance(other, ReductionCertificate):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        inner = ", ".join(f"{deriv_name(J)[1:] or '1'}: {p}" for J, p in self.items())
        return f"ReductionCertificate({{{inner}}})"

    def to_json(self) -> list:
        return [{"deriv": list(J), "poly": p.to_json()} for J, p in self.items()]


def normalize(f: DiffFunction) -> Tuple[DiffFunction, ReductionCertificate]:
    """Eliminate every t-derivative using the heat equation.

    Each step replaces ``p * U_{J+e_t}`` by ``p * (U_{J+2e_x} + U_{J+2e_y} + U_{J+2e_z})``
    and records ``p`` under ``J`` in the certificate.  The derivative of highest
    total order is rewritten first.
    """
    if all(J[3] == 0 for J in f._terms):
        return f, ReductionCertificate()
    work: Dict[DerivIndex, Polynomial] = dict(f._terms)
    cert: Dict[DerivIndex, Polynomial] = {}
    heap = [(-sum(J), J) for J in work if J[3] > 0]
    heapq.heapify(heap)
    queued = {J for _, J in heap}
    while heap:
        _, K = heapq.heappop(heap)
        queued.discard(K)
        p = work.pop(K, None)
        if p is None:
            continue
        J = (K[0], K[1], K[2], K[3] - 1)
        c = cert.get(J)
        cert[J] = p if c is None else c + p
        for e in _SECOND_SPATIAL:
            L = add_index(J, e)
            q = work.get(L)
            q = p if q is None else q + p
            if q:
                work[L] = q
                if L[3] > 0 and L not in queued:
                    heapq.heappush(heap, (-sum(L), L))
                    queued.add(L)
            else:
                work.pop(L, None)
    return DiffFunction._raw(work), ReductionCertificate(cert)


def normal_form(f: DiffFunction) -> DiffFunction:
    return normalize(f)[0]


def residual(Q: DiffFunction) -> DiffFunction:
    """Normal form of ``D_t Q - (D_x^2 + D_y^2 + D_z^2) Q``; zero iff Q is a symmetry characteristic."""
    return normal_form(total_derivative(Q, "t") - laplacian(Q))


def diff_equal(f: DiffFunction, g: DiffFunction) -> bool:
    return normal_form(f - g).is_zero()


def heat_operator() -> DiffFunction:
    """``F = U_t - U_xx - U_yy - U_zz``."""
    return DiffFunction({(0, 0, 0, 1): 1, (2, 0, 0, 0): -1, (0, 2, 0, 0): -1, (0, 0, 2, 0): -1})
