import pytest

from iceduality.algebra import LaurentPoly, Scalar
from iceduality.whittaker import (
    coset_dictionary,
    conventions,
    deformed_denominator,
    metaplectic_lattice_value,
    rho,
    schur,
    schur_bialternant,
    schur_tableaux,
    tokuyama_mu,
    verify_cauchy,
    verify_duality_C,
    verify_gamma_delta,
    verify_shimura_identity,
    verify_tokuyama,
    verify_tokuyama_vanishing,
    w0_act,
)


def test_schur_frozen_values():
    assert str(schur((2, 1), 3)) == "z1^2*z2 + z1^2*z3 + z1*z2^2 + 2*z1*z2*z3 + z1*z3^2 + z2^2*z3 + z2*z3^2"
    assert str(schur((1,), 2, 2)) == "z1^2 + z2^2"


@pytest.mark.parametrize("lam", [(), (1,), (2,), (1, 1), (3, 1), (2, 2, 1)])
def test_schur_oracles_agree(lam):
    assert schur_tableaux(lam, 3) == schur_bialternant(lam, 3)


def test_coset_dictionary():
    c = coset_dictionary((2, 1), (1, 2), 2)
    assert c.c_hat == (2, 1) and c.w_sigma == (2, 1) and c.w_mu == (1, 2)
    assert c.lam == (0, 0) and c.almost_dominant
    assert rho(3) == (2, 1, 0)
    with pytest.raises(ValueError):
        coset_dictionary((2, 1), (1, 1), 2)


def test_conventions_registry():
    assert conventions() == {
        "tokuyama_w0_placement": "argument",
        "gamma_column_supercolor": "residue",
        "functional_equation_eps": "z^-alpha",
        "rtt_color_shift": 1,
    }


def test_w0_reverses_variables():
    p = LaurentPoly.var(3, 1) ** 2 * LaurentPoly.var(3, 2)
    assert w0_act(p) == LaurentPoly.var(3, 3) ** 2 * LaurentPoly.var(3, 2)


def test_deformed_denominator_at_v_one_is_vandermonde_factor():
    r = 2
    D = deformed_denominator(r, 1, Scalar.const(1))
    assert not D.is_zero()


@pytest.mark.parametrize("n,r,lam,theta", [(1, 2, (1, 0), 0), (2, 2, (1, 0), 0), (2, 2, (2, 1), 1), (3, 2, (1, 1), 0),
                                           (2, 3, (1, 0, 0), 0)])
def test_tokuyama(n, r, lam, theta):
    assert verify_tokuyama(n, r, lam, theta).passed


def test_tokuyama_mu_shape():
    mu = tokuyama_mu(2, (1, 0), 0)
    assert len(mu) == 2 and mu[0] > mu[1]


def test_tokuyama_vanishing_off_residue():
    assert verify_tokuyama_vanishing(2, (3, 0), 0).passed


def test_lattice_value_is_nonzero_on_matching_residues():
    assert not metaplectic_lattice_value(2, tokuyama_mu(2, (1, 0), 0), (0, 0)).is_zero()


def test_shimura_identity_at_v_equal_one():
    rep = verify_shimura_identity(2, 2, (1,))
    assert rep.notes["holds_at_v_equal_1"]
    assert verify_shimura_identity(1, 2, (1,)).passed


@pytest.mark.parametrize("n,mu,theta", [(2, (3, 1), (0, 1)), (2, (2, 1), (1, 0)), (3, (5, 3, 1), (1, 2, 0))])
def test_gamma_delta(n, mu, theta):
    assert verify_gamma_delta(n, mu, theta).passed


def test_duality_constants_frozen():
    rep = verify_duality_C(3, (1, 2, 0), (5, 3, 1))
    assert rep.passed
    assert rep.notes["C"] == "-q^2"
    assert rep.notes["C_prime"] == "q^-4"


def test_cauchy_derived_form():
    rep = verify_cauchy(2, 2, 0, 2)
    assert rep.passed
    assert rep.notes["reference_prefactor_matches"] is False
