from itertools import combinations, product

import pytest

from iceduality.algebra import LaurentPoly, Scalar
from iceduality.model import (
    DELTA,
    DELTA_PRIME,
    GAMMA,
    GENERIC_COLORED,
    GENERIC_SUPERCOLORED,
    SystemSpec,
    charge,
    check_conservation,
    colors_to_supercolors,
    convert_labels,
    enumerate_states,
    extend_palette,
    fuse_block,
    fused_one_row,
    generic_twist,
    iwahori_twist,
    metaplectic_twist,
    one_row_transfer,
    partition_function,
    state_sum,
    supercolors_to_colors,
    twist_for_mode,
    vertex_class,
)

q, phi = Scalar.q, Scalar.phi
z = lambda r, i: LaurentPoly.var(r, i)


# values below were obtained by listing states by hand and cross-checked against
# the independent row-by-row enumerator


def test_single_color_two_rows():
    spec = SystemSpec(1, (1, 0), (1, 1))
    assert len(enumerate_states(spec)) == 2
    assert partition_function(spec) == z(2, 1) * (phi() * q()) - z(2, 2) * (phi() * q(-1))


def test_monostatic_two_colors():
    spec = SystemSpec(2, (2, 1), (2, 1))
    assert len(enumerate_states(spec)) == 1
    assert partition_function(spec) == z(2, 1) * (phi() * Scalar.alpha(-2, -1, 2))


def test_swapped_boundary_two_colors():
    assert partition_function(SystemSpec(2, (2, 1), (1, 2))) == z(2, 2) * (-phi() * q(-1))


FROZEN = {
    (2, (3, 0), (1, 2)): (1, "Phi*a[1,2]*z1"),
    (2, (3, 0), (2, 1)): (2, "-Phi*q^-1*z1 + Phi*q*z1 - Phi*q^-1*z2"),
    (2, (4, 2), (2, 2)): (2, "Phi*q*z1^2*z2 - Phi*q^-1*z1*z2^2"),
    (3, (4, 2, 0), (2, 1, 3)): (1, "Phi^3*a[1,2]*a[1,3]*a[2,3]*z1"),
    (1, (2, 1, 0), (1, 1, 1)): (7, "Phi^3*q^3*z1^2*z2 - Phi^3*q*z1^2*z3 - Phi^3*q*z1*z2^2 + Phi^3*q^-1*z1*z2*z3"
                                   " - Phi^3*q*z1*z2*z3 + Phi^3*q^-1*z1*z3^2 + Phi^3*q^-1*z2^2*z3"
                                   " - Phi^3*q^-3*z2*z3^2"),
}


@pytest.mark.parametrize("args", sorted(FROZEN))
def test_frozen_partition_functions(args):
    count, value = FROZEN[args]
    spec = SystemSpec(*args)
    states = enumerate_states(spec)
    assert len(states) == count
    assert str(partition_function(spec)) == value
    assert state_sum(states, spec.rows) == partition_function(spec)


def test_mismatched_colors_give_empty_state_set():
    spec = SystemSpec(2, (3, 1), (1, 2))  # both top colors are 1
    assert not spec.colors_match()
    assert enumerate_states(spec) == []
    assert partition_function(spec).is_zero()


def test_specializations_of_desk_instance():
    iw = partition_function(SystemSpec(1, (1, 0), (1, 1), twist=iwahori_twist(1)))
    assert iw == z(2, 1) - z(2, 2) * q(-2)
    met = partition_function(SystemSpec(1, (1, 0), (1, 1), twist=metaplectic_twist(1)))
    assert met == z(2, 2) - z(2, 1) * q(2)


def test_metaplectic_ground_state_is_gauss_sum():
    Z = partition_function(SystemSpec(2, (2, 1), (2, 1), twist=metaplectic_twist(2)))
    assert Z == z(2, 1) * Scalar.gauss(1, 2)


def test_enumeration_matches_transfer_dp_on_grid():
    for m in (1, 2, 3):
        for mu in combinations(range(4, -1, -1), 2):
            for sigma in product(range(1, m + 1), repeat=2):
                spec = SystemSpec(m, mu, sigma)
                assert state_sum(enumerate_states(spec), 2) == partition_function(spec)


def test_conservation_at_every_vertex():
    for sigma in product((1, 2), repeat=3):
        for st in enumerate_states(SystemSpec(2, (4, 2, 1), sigma)):
            assert check_conservation(st)


def test_enumeration_order_is_deterministic():
    spec = SystemSpec(1, (2, 1, 0), (1, 1, 1))
    assert [s.dump() for s in enumerate_states(spec)] == [s.dump() for s in enumerate_states(spec)]


def test_column_extension_invariance():
    spec = SystemSpec(2, (3, 1, 0), (1, 2, 1))
    Z = partition_function(spec)
    assert Z == partition_function(spec.with_columns(spec.columns + 2))
    assert Z == partition_function(spec.with_columns(spec.columns + 4))


def test_palette_extension_in_iwahori_mode():
    spec = SystemSpec(2, (4, 3, 1), (1, 2, 1), twist=iwahori_twist(2))
    Z = partition_function(spec)
    assert not Z.is_zero()
    for new_m in (3, 4):
        assert partition_function(extend_palette(spec, new_m)) == Z
        assert partition_function(extend_palette(spec, new_m, {1: 1, 2: new_m})) == Z


def test_palette_extension_rejects_order_reversal():
    with pytest.raises(ValueError):
        extend_palette(SystemSpec(2, (1, 0), (1, 2)), 3, {1: 3, 2: 1})


def test_fuse_block_examples():
    tw = generic_twist(3)
    assert fuse_block((), (), None, None, tw) == LaurentPoly.one(1)
    for j in (1, 2, 3):
        assert fuse_block({j}, {j}, None, None, tw) == LaurentPoly.from_scalar(1, -phi() * q(-1))
    assert fuse_block({3}, (), None, 3, tw) == LaurentPoly.one(1)


def _subsets(m):
    return [frozenset(s) for k in range(m + 1) for s in combinations(range(1, m + 1), k)]


def test_fused_rows_match_unfused_rows():
    for m in (1, 2, 3):
        tw = generic_twist(m)
        subsets = _subsets(m)
        for t0, t1, b0, b1 in product(subsets, repeat=4):
            if len(t0) + len(t1) != len(b0) + len(b1) + 1 and len(t0) + len(t1) != len(b0) + len(b1):
                continue
            for right in [None] + list(range(1, m + 1)):
                fused = fused_one_row(tw, 2, {0: t0, 1: t1}, {0: b0, 1: b1}, right)
                col = lambda b, c: b * m + (-c) % m
                top = frozenset(col(0, c) for c in t0) | frozenset(col(1, c) for c in t1)
                bot = frozenset(col(0, c) for c in b0) | frozenset(col(1, c) for c in b1)
                flat = one_row_transfer(GENERIC_COLORED, tw, 2 * m, top, bot, None, right)
                assert fused == flat


def test_supercolor_relabeling():
    assert colors_to_supercolors((3, 2, 3), 3) == (0, 1, 0)
    assert supercolors_to_colors(colors_to_supercolors((1, 2, 3), 3), 3) == (1, 2, 3)
    assert charge(1, 0, 3) == 1


def test_label_conversion_preserves_partition_function():
    for sigma in product((1, 2, 3), repeat=2):
        spec = SystemSpec(3, (4, 2), sigma)
        sup = convert_labels(spec, "to-supercolors")
        assert sup.family == GENERIC_SUPERCOLORED
        assert partition_function(sup) == partition_function(spec)
        assert convert_labels(sup, "to-colors") == spec
    with pytest.raises(ValueError):
        convert_labels(SystemSpec(2, (1, 0), (0, 1), family=DELTA), "to-colors")


def test_delta_prime_and_delta_values():
    dp = partition_function(SystemSpec(2, (3, 1), (1, 1), family=DELTA_PRIME))
    d = partition_function(SystemSpec(2, (3, 1), (1, 1), family=DELTA))
    g = partition_function(SystemSpec(2, (3, 1), (1, 1), family=GAMMA))
    assert str(dp) == "-q^2*z1^2 + z2^2"
    assert d == dp.shift((1, 1))
    assert str(g) == "z1^3*z2 - q^2*z1*z2^3"


def test_vertex_classes():
    assert vertex_class((None, None, None, None), GENERIC_COLORED) == "a1"
    assert vertex_class((1, 1, 1, 1), GENERIC_COLORED) == "a2"
    assert vertex_class((1, None, None, 1), GENERIC_COLORED) == "c1"
    assert vertex_class((None, None, 1, 1), GAMMA) == "c1"


def test_invalid_specs_rejected():
    with pytest.raises(ValueError):
        SystemSpec(2, (1, 1), (1, 2))
    with pytest.raises(ValueError):
        SystemSpec(2, (3, 1), (1,))
    with pytest.raises(ValueError):
        SystemSpec(2, (3, 1), (1, 2), columns=3)
    with pytest.raises(ValueError):
        SystemSpec(2, (3, 1), (1, 2), family="nope")
    with pytest.raises(ValueError):
        twist_for_mode("other", 2)
