from fractions import Fraction

import pytest

from iceduality.algebra import Scalar
from iceduality.fock import (
    HAMILTONIAN_DIVIDED,
    HAMILTONIAN_PLAIN,
    FockVector,
    TruncationOverflow,
    TruncationParams,
    audit_hamiltonian_normalization,
    canonical_word,
    current_apply,
    grading,
    hamiltonian_exp,
    ket,
    states,
    straighten,
    strict_partitions,
    transfer_column,
    transfer_element,
    verify_commuting_currents,
    verify_straightening,
    verify_transfer_exponential,
)
from iceduality.model import generic_twist

q, phi = Scalar.q, Scalar.phi
TW2 = generic_twist(2)


def test_straighten_frozen():
    assert straighten((0, 2), TW2) == {(2, 0): Scalar.const(-1)}
    assert straighten((0, 3), TW2) == {(2, 1): q(2) - 1, (3, 0): -q() * Scalar.alpha(1, 2, 2) ** -1}
    assert straighten((1, 1), TW2) == {}


def test_words_and_grading():
    assert ket(()) == (-1, ())
    assert ket((1, 0)) == (1, ())
    assert canonical_word(0, (0,)) == (0, ())
    assert grading(ket((3, 1))) == {"level": 1, "energy": 3, "length": 2}
    with pytest.raises(ValueError):
        ket((1, 1))


def test_strict_partitions():
    assert strict_partitions(6, 3) == [(5, 1, 0), (4, 2, 0), (3, 2, 1)]
    assert states(2, 2) == [(1, 0), (2, 0), (3, 0), (2, 1)]
    assert strict_partitions(0, 0) == [()]


def test_transfer_elements():
    assert str(transfer_element((), (), TW2)) == "1"
    assert str(transfer_element((0,), (0,), TW2)) == "-Phi*q^-1"
    assert str(transfer_element((0,), (2,), TW2)) == "-Phi*q^-1*z1 + Phi*q*z1"
    assert transfer_element((0,), (0, 1), TW2).is_zero()


def test_current_frozen():
    assert current_apply(1, FockVector.basis(ket((2,))), TW2) == FockVector.basis(ket((0,)))
    assert not current_apply(1, FockVector.basis(ket(())), TW2)
    v = FockVector.basis(ket((3, 1)))
    assert current_apply(0, v, TW2) == v.scale(1)


def test_negative_current_respects_window():
    with pytest.raises(TruncationOverflow):
        current_apply(-1, FockVector.basis(ket((3,))), TW2, max_index=3)


def test_hamiltonian_normalization_audit():
    assert audit_hamiltonian_normalization() == HAMILTONIAN_DIVIDED


def test_exp_of_doubled_coefficients_is_square():
    v = FockVector.basis(ket((4, 1)))
    D = 3
    c = {1: q(), 2: phi(), 3: Scalar.const(Fraction(1, 3))}
    once = hamiltonian_exp(D, v, TW2, coefficients=c)
    twice = [FockVector() for _ in range(D + 1)]
    for d, w in enumerate(once):
        for e, x in enumerate(hamiltonian_exp(D - d, w, TW2, coefficients=c)):
            twice[d + e] = twice[d + e] + x
    doubled = hamiltonian_exp(D, v, TW2, coefficients={k: x * Scalar.const(2) for k, x in c.items()})
    assert twice == doubled


def test_transfer_degree_zero_is_diagonal():
    col = transfer_column((2, 0), 2, TW2)
    assert col[0] == FockVector.basis(ket((2, 0)), (phi() * q(-1)) ** 2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_transfer_exponential_small(m):
    rep = verify_transfer_exponential(4, 2, m)
    assert rep.passed and rep.checked > 0


def test_plain_hamiltonian_fails():
    from iceduality.fock import hamiltonian_column
    tw = generic_twist(1)
    assert hamiltonian_column((2,), 2, tw, HAMILTONIAN_PLAIN)[2] != transfer_column((2,), 2, tw)[2]


@pytest.mark.parametrize("m", [1, 2])
def test_currents_commute(m):
    assert verify_commuting_currents(4, m).passed


@pytest.mark.parametrize("m", [1, 2, 3])
def test_straightening_properties(m):
    assert verify_straightening(m, span=4).passed


def test_truncation_params_validate():
    with pytest.raises(ValueError):
        TruncationParams(energy=-1)
