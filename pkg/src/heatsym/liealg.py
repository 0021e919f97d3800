"""Point symmetries of the heat equation: brackets, prolongation, characteristics.

A ``PointVectorField`` is ``xi_t d_t + xi_x d_x + xi_y d_y + xi_z d_z + eta d_U``
with polynomial ``xi`` and ``eta = eta_lin * U + eta_free``.  The thirteen
built-in generators span the finite part of the symmetry algebra; the
rotation ``X5`` is taken as ``-x d_z + z d_x`` (the printed ``z d_y`` would not
be a symmetry at all).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Polynomial, T, X, Y, Z
from .jet import (
    U0,
    UNIT,
    DerivIndex,
    DiffFunction,
    add_index,
    normal_form,
    total_derivative,
)
from .linalg import solve_combination

# coordinate order used for xi components and for conserved-vector components
COORDS = ("t", "x", "y", "z")
_AXIS = {"x": 0, "y": 1, "z": 2, "t": 3}  # slot in MonomialExp / DerivIndex


@dataclass(frozen=True)
class PointVectorField:
    xi_t: Polynomial = ZERO
    xi_x: Polynomial = ZERO
    xi_y: Polynomial = ZERO
    xi_z: Polynomial = ZERO
    eta_lin: Polynomial = ZERO
    eta_free: Polynomial = ZERO

    @property
    def xi(self) -> Tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
        """Components in (t, x, y, z) order."""
        return (self.xi_t, self.xi_x, self.xi_y, self.xi_z)

    def components(self) -> Tuple[Polynomial, ...]:
        return self.xi + (self.eta_lin, self.eta_free)

    @classmethod
    def from_components(cls, comps: Sequence[Polynomial]) -> "PointVectorField":
        return cls(*comps)

    def __add__(self, other: "PointVectorField") -> "PointVectorField":
        return PointVectorField.from_components([a + b for a, b in zip(self.components(), other.components())])

    def __neg__(self):
        return PointVectorField.from_components([-a for a in self.components()])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PointVectorField":
        return PointVectorField.from_components([a.scale(c) for a in self.components()])

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components())

    def apply_to(self, f: Polynomial) -> Polynomial:
        """Derivative of a U-independent function along the base part of the field."""
        out = ZERO
        for name, xi in zip(COORDS, self.xi):
            if xi:
                out = out + xi * f.partial(name)
        return out

    def __str__(self):
        parts = []
        for name, xi in zip(COORDS, self.xi):
            if xi:
                parts.append(f"({xi})*d_{name}")
        eta = []
        if self.eta_lin:
            eta.append(f"({self.eta_lin})*U")
        if self.eta_free:
            eta.append(f"({self.eta_free})")
        if eta:
            parts.append(f"({' + '.join(eta)})*d_U")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "xi": {name: xi.to_json() for name, xi in zip(COORDS, self.xi)},
            "eta_lin": self.eta_lin.to_json(),
            "eta_free": self.eta_free.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PointVectorField":
        xi = data.get("xi", {})
        unknown = set(xi) - set(COORDS)
        if unknown:
            raise ValueError(f"unknown xi components {sorted(unknown)}")
        return cls(
            *(Polynomial.from_json(xi.get(name, [])) for name in COORDS),
            eta_lin=Polynomial.from_json(data.get("eta_lin", [])),
            eta_free=Polynomial.from_json(data.get("eta_free", [])),
        )


R2 = X * X + Y * Y + Z * Z

GENERATORS: Dict[int, PointVectorField] = {
    1: PointVectorField(xi_x=2 * T, eta_lin=-X),
    2: PointVectorField(xi_y=2 * T, eta_lin=-Y),
    3: PointVectorField(xi_z=2 * T, eta_lin=-Z),
    4: PointVectorField(xi_x=Y, xi_y=-X),
    5: PointVectorField(xi_x=Z, xi_z=-X),
    6: PointVectorField(xi_x=ONE),
    7: PointVectorField(xi_y=Z, xi_z=-Y),
    8: PointVectorField(xi_y=ONE),
    9: PointVectorField(xi_z=ONE),
    10: PointVectorField(eta_lin=ONE),
    11: PointVectorField(xi_t=ONE),
    12: PointVectorField(xi_t=2 * T, xi_x=X, xi_y=Y, xi_z=Z),
    13: PointVectorField(
        xi_t=4 * T * T, xi_x=4 * T * X, xi_y=4 * T * Y, xi_z=4 * T * Z,
        eta_lin=-(6 * T + R2),
    ),
}

# X5 exactly as printed in the generator list; kept for reporting only
PRINTED_X5 = PointVectorField(xi_y=Z, xi_z=-X)

# Nonzero brackets [X_i, X_j] (i < j) as printed; unlisted pairs are claimed zero.
PRINTED_TABLE: Dict[Tuple[int, int], Dict[int, int]] = {
    (1, 4): {2: -1}, (2, 8): {10: 1}, (4, 5): {7: 1}, (5, 6): {9: 1},
    (1, 5): {3: -1}, (3, 5): {1: 1}, (4, 6): {8: 1}, (5, 7): {4: 1},
    (1, 6): {10: 1}, (3, 7): {2: 1}, (4, 7): {5: -1}, (5, 9): {6: -1},
    (1, 11): {6: -2}, (2, 11): {8: -2}, (3, 11): {9: -2}, (6, 12): {6: 1},
    (1, 12): {1: -1}, (2, 12): {2: -1}, (3, 12): {3: -1}, (6, 13): {1: 2},
    (2, 4): {1: 1}, (3, 9): {10: 1}, (4, 8): {6: -1}, (7, 8): {9: 1},
    (2, 7): {3: -1}, (8, 12): {8: 1}, (8, 13): {2: 2}, (7, 9): {8: -1},
    (9, 12): {9: 1}, (9, 13): {3: 2}, (11, 12): {11: 2}, (11, 13): {12: 4, 10: -6},
    (12, 13): {13: 2},
}

SUBALGEBRA = tuple(range(1, 11))


def commutator(A: PointVectorField, B: PointVectorField) -> PointVectorField:
    """``[A, B] = A(B) - B(A)`` on (t, x, y, z, U), keeping eta affine in U."""
    xi = [A.apply_to(b) - B.apply_to(a) for a, b in zip(A.xi, B.xi)]
    lin = A.apply_to(B.eta_lin) - B.apply_to(A.eta_lin)
    free = (
        A.apply_to(B.eta_free) - B.apply_to(A.eta_free)
        + A.eta_free * B.eta_lin - B.eta_free * A.eta_lin
    )
    return PointVectorField(*xi, eta_lin=lin, eta_free=free)


def _flatten(V: PointVectorField) -> Dict[tuple, object]:
    return {(slot, e): c for slot, p in enumerate(V.components()) for e, c in p._terms.items()}


def expand_in_basis(
    V: PointVectorField, basis: Optional[Dict[int, PointVectorField]] = None
) -> Optional[Dict[int, Fraction]]:
    """Coefficients of ``V`` over the generators, or None if ``V`` is outside their span."""
    basis = GENERATORS if basis is None else basis
    keys = sorted(basis)
    sol = solve_combination([_flatten(basis[k]) for k in keys], _flatten(V))
    if sol is None:
        return None
    return {k: c for k, c in zip(keys, sol) if c}


def combination_str(coeffs: Optional[Dict[int, Fraction]]) -> str:
    if coeffs is None:
        return "<outside span>"
    if not coeffs:
        return "0"
    out = []
    for k in sorted(coeffs):
        c = coeffs[k]
        mag = abs(c)
        body = f"X{k}" if mag == 1 else f"{mag}*X{k}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


@dataclass(frozen=True)
class TableEntry:
    left: int
    right: int
    computed: Optional[Dict[int, Fraction]]
    printed: Dict[int, Fraction]

    @property
    def agree(self) -> bool:
        return self.computed == self.printed

    @property
    def closes(self) -> bool:
        return self.computed is not None


def bracket_table(gens: Optional[Dict[int, PointVectorField]] = None) -> Dict[Tuple[int, int], Optional[Dict[int, Fraction]]]:
    gens = GENERATORS if gens is None else gens
    return {(i, j): expand_in_basis(commutator(gens[i], gens[j]), gens) for i, j in combinations(sorted(gens), 2)}


def verify_table(gens: Optional[Dict[int, PointVectorField]] = None) -> List[TableEntry]:
    """All 78 brackets among X1..X13, expanded and compared with the printed table."""
    table = bracket_table(gens)
    return [
        TableEntry(i, j, comp, {k: Fraction(v) for k, v in PRINTED_TABLE.get((i, j), {}).items()})
        for (i, j), comp in table.items()
    ]


def is_subalgebra(indices: Sequence[int] = SUBALGEBRA, gens: Optional[Dict[int, PointVectorField]] = None) -> bool:
    gens = GENERATORS if gens is None else gens
    sub = {k: gens[k] for k in indices}
    return all(
        expand_in_basis(commutator(sub[i], sub[j]), sub) is not None
        for i, j in combinations(sorted(sub), 2)
    )


def jacobi(A: PointVectorField, B: PointVectorField, C: PointVectorField) -> PointVectorField:
    return commutator(commutator(A, B), C) + commutator(commutator(B, C), A) + commutator(commutator(C, A), B)


# -- prolongation ------------------------------------------------------------

def _xi_by_axis(V: PointVectorField) -> Tuple[Polynomial, ...]:
    """xi reordered to DerivIndex slot order (x, y, z, t)."""
    return (V.xi_x, V.xi_y, V.xi_z, V.xi_t)


def _require_linear(V: PointVectorField):
    if V.eta_free:
        raise ValueError("fields with a U-free eta part are not representable on linear jets")


def prolong(V: PointVectorField, order: int) -> Dict[DerivIndex, DiffFunction]:
    """Coefficients ``zeta_J`` of the prolongation for every ``|J| <= order``.

    ``zeta_{J+e_v} = D_v(zeta_J) - sum_w U_{J+e_w} D_v(xi^w)``, starting from
    ``zeta_0 = eta``.  Entries are left unnormalized.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    _require_linear(V)
    xi = _xi_by_axis(V)
    dxi = [[xi[w].partial(v) for w in range(4)] for v in range(4)]  # dxi[v][w] = D_v xi^w
    zeta: Dict[DerivIndex, DiffFunction] = {U0: DiffFunction.u(U0, V.eta_lin)}
    frontier = [U0]
    for _ in range(order):
        nxt = []
        for J in frontier:
            for v in range(4):
                K = add_index(J, UNIT[v])
                if K in zeta:
                    continue
                z = total_derivative(zeta[J], v)
                for w in range(4):
                    if dxi[v][w]:
                        z = z - DiffFunction.u(add_index(J, UNIT[w]), dxi[v][w])
                zeta[K] = z
                nxt.append(K)
        frontier = nxt
    return zeta


def act(V: PointVectorField, f: DiffFunction, zeta: Optional[Dict[DerivIndex, DiffFunction]] = None) -> DiffFunction:
    """Prolonged field applied to a differential function linear in U."""
    if zeta is None:
        zeta = prolong(V, max(f.order(), 0))
    out = DiffFunction()
    for J, p in f._terms.items():
        dp = V.apply_to(p)
        if dp:
            out = out + DiffFunction.u(J, dp)
        out = out + zeta[J] * p
    return out


def evolutionary_characteristic(V: PointVectorField) -> DiffFunction:
    """``Q = eta - xi^t U_t - xi^x U_x - xi^y U_y - xi^z U_z`` in normal form."""
    _require_linear(V)
    Q = DiffFunction.u(U0, V.eta_lin)
    for w, xi in enumerate(_xi_by_axis(V)):
        if xi:
            Q = Q - DiffFunction.u(UNIT[w], xi)
    return normal_form(Q)


def check_free_symmetry(f: Polynomial) -> bool:
    """True iff ``f`` solves the heat equation, so ``f d_U`` is a symmetry."""
    return (f.partial("t") - f.laplacian()).is_zero()
