"""Conserved vectors of the heat equation and their generation by symmetries.

A ``ConservedVector`` holds components ``(T^t, T^x, T^y, T^z)``, each linear in U.
Conservation is checked on-shell via the jet normal form; the reduction
certificate of the divergence yields the multiplier, which classifies laws up
to equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .exact import ZERO, Polynomial
from .jet import (
    U0,
    UNIT,
    DiffFunction,
    ReductionCertificate,
    normal_form,
    normalize,
    residual,
    total_derivative,
    total_derivative_multi,
)
from .liealg import COORDS, PointVectorField, act, commutator, prolong


class NotConservedError(ValueError):
    pass


class NotASymmetryError(ValueError):
    pass


# DiffFunction slot (x, y, z, t) for each conserved-vector component (t, x, y, z)
_AXIS = (3, 0, 1, 2)


@dataclass(frozen=True)
class ConservedVector:
    Tt: DiffFunction
    Tx: DiffFunction
    Ty: DiffFunction
    Tz: DiffFunction

    @property
    def components(self) -> Tuple[DiffFunction, DiffFunction, DiffFunction, DiffFunction]:
        return (self.Tt, self.Tx, self.Ty, self.Tz)

    @classmethod
    def of(cls, comps) -> "ConservedVector":
        return cls(*comps)

    def __add__(self, other):
        return ConservedVector.of(a + b for a, b in zip(self.components, other.components))

    def __neg__(self):
        return ConservedVector.of(-a for a in self.components)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return ConservedVector.of(a * c for a in self.components)

    __rmul__ = __mul__

    def normalized(self) -> "ConservedVector":
        return ConservedVector.of(normal_form(a) for a in self.components)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.components) + ")"

    def to_json(self) -> dict:
        return {f"T{name}": comp.to_json() for name, comp in zip(COORDS, self.components)}

    @classmethod
    def from_json(cls, data: dict) -> "ConservedVector":
        missing = {"Tt", "Tx", "Ty", "Tz"} - set(data)
        if missing:
            raise ValueError(f"conserved vector JSON lacks {sorted(missing)}")
        return cls(*(DiffFunction.from_json(data[f"T{name}"]) for name in COORDS))


T_BASE = ConservedVector(
    Tt=DiffFunction.u("U", -1),
    Tx=DiffFunction.u("Ux"),
    Ty=DiffFunction.u("Uy"),
    Tz=DiffFunction.u("Uz"),
)


@dataclass(frozen=True)
class Divergence:
    raw: DiffFunction
    on_shell: DiffFunction
    certificate: ReductionCertificate

    @property
    def conserved(self) -> bool:
        return self.on_shell.is_zero()


def divergence(T: ConservedVector) -> Divergence:
    raw = DiffFunction()
    for comp, axis in zip(T.components, _AXIS):
        raw = raw + total_derivative(comp, axis)
    on_shell, cert = normalize(raw)
    return Divergence(raw, on_shell, cert)


def is_conserved(T: ConservedVector) -> bool:
    return divergence(T).conserved


def generate_evolutionary(Q: DiffFunction, T: ConservedVector = T_BASE) -> ConservedVector:
    """New conserved vector from a characteristic: ``T^i -> sum_J p^i_J D_J(Q)``.

    With ``T^i = sum_J p^i_J U_J``, this is the prolonged evolutionary field of
    ``Q`` applied to each component; for the base law it gives
    ``(-Q, D_x Q, D_y Q, D_z Q)``.
    """
    if not residual(Q).is_zero():
        raise NotASymmetryError(f"{Q} is not the characteristic of a symmetry")
    comps = []
    for comp in T.components:
        out = DiffFunction()
        for J, p in comp.items():
            out = out + total_derivative_multi(Q, J) * p
        comps.append(normal_form(out))
    return ConservedVector.of(comps)


def _transport_terms(V: PointVectorField, T: ConservedVector) -> Tuple[DiffFunction, ...]:
    """``V T^i - (D_j xi^i) T^j + (D_j xi^j) T^i`` for i in (t, x, y, z), normalized."""
    order = max(max(c.order() for c in T.components), 0)
    zeta = prolong(V, order)
    xi = V.xi
    div_xi = ZERO
    for name, x in zip(COORDS, xi):
        div_xi = div_xi + x.partial(name)
    out = []
    for i, Ti in enumerate(T.components):
        val = act(V, Ti, zeta)
        for j, name in enumerate(COORDS):
            d = xi[i].partial(name)
            if d:
                val = val - T.components[j] * d
        if div_xi:
            val = val + Ti * div_xi
        out.append(normal_form(val))
    return tuple(out)


def generate_point(V: PointVectorField, T: ConservedVector = T_BASE) -> ConservedVector:
    """Infinitesimal image of ``T`` under a point symmetry:
    ``-V T^i + (D_j xi^i) T^j - (D_j xi^j) T^i``."""
    return ConservedVector.of(-c for c in _transport_terms(V, T))


def invariance_check(V: PointVectorField, T: ConservedVector = T_BASE) -> bool:
    """True iff ``V`` leaves the conserved form of ``T`` invariant (``V`` is associated with ``T``)."""
    return all(c.is_zero() for c in _transport_terms(V, T))


@dataclass(frozen=True)
class Multiplier:
    value: Polynomial

    @property
    def adjoint_ok(self) -> bool:
        return adjoint_residual(self.value).is_zero()

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "adjoint_ok": self.adjoint_ok}


def adjoint_residual(lam: Polynomial) -> Polynomial:
    """``lam_t + lam_xx + lam_yy + lam_zz``; zero for a multiplier of the heat equation."""
    return lam.partial("t") + lam.laplacian()


def multiplier_from_certificate(cert: ReductionCertificate) -> Polynomial:
    """``sum_J (-1)^{|J|} D_J(c_J)`` (coefficients are U-free, so D_J is a partial derivative)."""
    lam = ZERO
    for J, c in cert.items():
        d = c
        for axis, n in enumerate(J):
            for _ in range(n):
                d = d.partial(axis)
        lam = lam + (d if sum(J) % 2 == 0 else -d)
    return lam


def multiplier(T: ConservedVector) -> Multiplier:
    div = divergence(T)
    if not div.conserved:
        raise NotConservedError(f"divergence does not vanish on solutions: {div.on_shell}")
    return Multiplier(multiplier_from_certificate(div.certificate))


def is_trivial_first_kind(T: ConservedVector) -> bool:
    return all(normal_form(c).is_zero() for c in T.components)


def equivalent(T1: ConservedVector, T2: ConservedVector) -> bool:
    """Equivalence at the multiplier level: ``T1 - T2`` has multiplier zero."""
    return multiplier(T1 - T2).is_zero()


@dataclass(frozen=True)
class BracketCriterion:
    bracket: PointVectorField
    proportional_to_Y: Optional[Fraction]
    predicts_trivial: bool
    associated: bool
    generated_multiplier: Optional[Polynomial]

    @property
    def multiplier_trivial(self) -> Optional[bool]:
        if self.generated_multiplier is None:
            return None
        return self.generated_multiplier.is_zero()


def proportionality(A: PointVectorField, B: PointVectorField) -> Optional[Fraction]:
    """``b`` with ``A == b * B``, or None.  A zero ``A`` gives ``b = 0``."""
    if A.is_zero():
        return Fraction(0)
    if B.is_zero():
        return None
    for pa, pb in zip(A.components(), B.components()):
        for e, c in pb._terms.items():
            b = Fraction(pa.coeff(e)) / c
            return b if A == B.scale(b) else None
    return None


def bracket_criterion(X: PointVectorField, Y: PointVectorField, T: ConservedVector = T_BASE) -> BracketCriterion:
    """Bracket criterion for triviality of the law generated from ``T`` by ``X``.

    Triviality is predicted when ``[X, Y] = b Y``; the multiplier of the law
    actually generated by ``X`` is reported alongside so the prediction can be
    checked rather than assumed.
    """
    br = commutator(X, Y)
    b = proportionality(br, Y)
    try:
        lam = multiplier(generate_point(X, T)).value
    except (NotConservedError, ValueError):
        lam = None
    return BracketCriterion(br, b, b is not None, invariance_check(Y, T), lam)
