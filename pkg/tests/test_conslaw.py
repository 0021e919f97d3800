import pytest
from hypothesis import given, strategies as st

from heatsym.conslaw import (
    T_BASE,
    ConservedVector,
    NotASymmetryError,
    NotConservedError,
    divergence,
    equivalent,
    generate_evolutionary,
    generate_point,
    invariance_check,
    is_conserved,
    is_trivial_first_kind,
    multiplier,
    bracket_criterion,
)
from heatsym.exact import ZERO, T, X, Polynomial
from heatsym.jet import U, DiffFunction, heat_operator
from heatsym.liealg import GENERATORS
from heatsym.symmetry import apply_word, basis

Z0 = DiffFunction()
UXX_LAW = ConservedVector(-DiffFunction.u("Uxx"), DiffFunction.u("Uxxx"), DiffFunction.u("Uxxy"), DiffFunction.u("Uxxz"))
words = st.lists(st.integers(1, 9), max_size=3)


def euler(f: DiffFunction) -> Polynomial:
    """Euler operator of a function linear in U; zero exactly on total divergences."""
    out = ZERO
    for J, p in f.terms.items():
        d = p
        for axis, n in enumerate(J):
            for _ in range(n):
                d = d.partial(axis)
        out = out + (d if sum(J) % 2 == 0 else -d)
    return out


def raw_divergence(T_: ConservedVector) -> DiffFunction:
    return divergence(T_).raw


def test_base_vector_is_conserved():
    div = divergence(T_BASE)
    assert div.raw == -DiffFunction.u("Ut") + DiffFunction.u("Uxx") + DiffFunction.u("Uyy") + DiffFunction.u("Uzz")
    assert div.on_shell.is_zero()


def test_generate_evolutionary_examples():
    assert generate_evolutionary(DiffFunction.u("Uxx")) == UXX_LAW
    assert generate_evolutionary(U) == T_BASE
    Q1 = DiffFunction.u("Ux", 2 * T) + U * X
    expected = ConservedVector(
        -Q1,
        DiffFunction.u("Uxx", 2 * T) + DiffFunction.u("Ux", X) + U,
        DiffFunction.u("Uxy", 2 * T) + DiffFunction.u("Uy", X),
        DiffFunction.u("Uxz", 2 * T) + DiffFunction.u("Uz", X),
    )
    T1 = generate_evolutionary(Q1)
    assert T1 == expected and is_conserved(T1)
    with pytest.raises(NotASymmetryError):
        generate_evolutionary(U * X)


def test_multiplier_examples():
    m = multiplier(T_BASE)
    assert m.value == Polynomial.constant(-1) and m.adjoint_ok
    assert multiplier(UXX_LAW).is_zero()
    assert multiplier(generate_evolutionary(apply_word([1]))).value == -X
    with pytest.raises(NotConservedError):
        multiplier(ConservedVector(U, Z0, Z0, Z0))


def test_basis_laws_are_conserved_with_adjoint_multipliers():
    for _, Q in basis(2):
        T_ = generate_evolutionary(Q)
        assert divergence(T_).conserved
        assert multiplier(T_).adjoint_ok


@given(words, words, st.integers(-3, 3))
def test_multiplier_linear(w1, w2, c):
    A, B = generate_evolutionary(apply_word(w1)), generate_evolutionary(apply_word(w2))
    assert multiplier(A + B * c).value == multiplier(A).value + multiplier(B).value * c


@given(words)
def test_multiplier_matches_euler_operator(word):
    T_ = generate_evolutionary(apply_word(word))
    lam = multiplier(T_).value
    # Lambda * F - Div T is a total divergence
    assert euler(heat_operator() * lam - raw_divergence(T_)).is_zero()
    assert multiplier(T_).adjoint_ok


def test_triviality_examples():
    assert is_trivial_first_kind(ConservedVector(Z0, Z0, Z0, Z0))
    assert not is_trivial_first_kind(T_BASE)
    assert is_trivial_first_kind(ConservedVector(heat_operator(), Z0, Z0, Z0))


def test_equivalence_examples():
    assert equivalent(T_BASE, T_BASE)
    assert equivalent(T_BASE, T_BASE + UXX_LAW)
    assert not equivalent(T_BASE, T_BASE * 2)


@pytest.mark.parametrize("k,associated", [(4, True), (6, True), (10, False), (11, True), (1, False)])
def test_invariance_examples(k, associated):
    assert invariance_check(GENERATORS[k], T_BASE) is associated


@pytest.mark.parametrize("k", sorted(set(GENERATORS)))
def test_point_generated_laws_are_conserved(k):
    T_ = generate_point(GENERATORS[k])
    assert is_conserved(T_)
    assert multiplier(T_).adjoint_ok
    assert T_.is_zero() == invariance_check(GENERATORS[k])


def test_point_generated_multipliers():
    lam = {k: multiplier(generate_point(GENERATORS[k])).value for k in (1, 10, 12)}
    assert lam == {1: -X, 10: Polynomial.constant(1), 12: Polynomial.constant(3)}


def test_bracket_criterion_examples():
    G = GENERATORS
    chk = bracket_criterion(G[12], G[6])
    assert chk.predicts_trivial and chk.proportional_to_Y == -1 and chk.associated
    chk = bracket_criterion(G[13], G[6])
    assert not chk.predicts_trivial and chk.proportional_to_Y is None
    chk = bracket_criterion(G[6], G[6])
    assert chk.predicts_trivial and chk.proportional_to_Y == 0


def test_json_round_trip():
    assert ConservedVector.from_json(UXX_LAW.to_json()) == UXX_LAW
    with pytest.raises(ValueError):
        ConservedVector.from_json({"Tt": []})
