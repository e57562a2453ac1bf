from itertools import product

import pytest

from iceduality.algebra import Scalar
from iceduality.model import generic_twist, iwahori_twist, metaplectic_twist
from iceduality.solvability import (
    RMatrixSpec,
    apply_drinfeld_twist,
    base_twist,
    check_phi,
    compose,
    horizontal_values,
    nonstandard_twist_R,
    nonstandard_twist_T,
    palette_shift_report,
    r_provider,
    r_weight,
    ratio_phi,
    standard_factor,
    standard_twist,
    twisted_family_report,
    verify_rrr,
    verify_rtt,
)


@pytest.mark.parametrize("make", [generic_twist, iwahori_twist, metaplectic_twist])
def test_rtt_every_column_m2(make):
    tw = make(2)
    for col in (1, 2):
        rep = verify_rtt(tw, col)
        assert rep.passed and rep.checked > 0


def test_rtt_fused_m3():
    assert verify_rtt(generic_twist(3), fused=True).passed


def test_opposite_color_shift_fails_for_three_colors():
    rep = verify_rtt(generic_twist(3), 1, shift=-1)
    assert not rep.passed


def test_rrr_generic_fused_and_unfused():
    tw = generic_twist(3)
    for k in (None, 1, 2, 3):
        assert verify_rrr(tw, k).passed


def test_r_weights_conserve_colors():
    spec = RMatrixSpec(generic_twist(2))
    H = horizontal_values(2)
    for a, b, c, d in product(H, repeat=4):
        w = r_weight(a, b, c, d, spec)
        if not w.is_zero():
            assert sorted(map(str, (a, b))) == sorted(map(str, (c, d)))


def test_r_provider_lists_only_nonzero_outputs():
    P = r_provider(RMatrixSpec(generic_twist(2)))
    for x, y in product(horizontal_values(2), repeat=2):
        assert all(not w.is_zero() for _, _, w in P(x, y))


def test_generic_tables_from_base_member():
    for m in (1, 2, 3):
        assert twisted_family_report(m, generic_twist(m), base_twist(m)).passed
        assert twisted_family_report(m, generic_twist(m), iwahori_twist(m)).passed


def test_twisted_base_stays_solvable():
    m = 2
    base, gen = base_twist(m), generic_twist(m)
    phi = ratio_phi(gen, base)
    t_wrap = compose(standard_twist(phi), nonstandard_twist_T(gen.Phi))
    r_wrap = compose(standard_twist(phi), nonstandard_twist_R(gen.Phi))
    for col in (1, 2):
        assert verify_rtt(base, col, t_wrap=t_wrap, r_wrap=r_wrap).passed
    assert verify_rrr(base, None, r_wrap=r_wrap).passed


def test_unfused_r_is_shifted_fused_r():
    assert palette_shift_report(generic_twist(3)).passed


def test_standard_factor_rejects_non_conserving_vertex():
    phi = lambda x, y: Scalar.const(1) if x == y else Scalar.phi()
    with pytest.raises(ValueError):
        standard_factor(phi, 1, None, None, None)


def test_phi_must_be_skew():
    with pytest.raises(ValueError):
        check_phi(lambda x, y: Scalar.q(), [None, 1])


def test_unknown_twist_kind():
    with pytest.raises(ValueError):
        apply_drinfeld_twist(r_provider(RMatrixSpec(generic_twist(1))), "other", None)
