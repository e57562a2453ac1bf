"""Lattice systems, weight families and partition functions."""
from .fusion import fuse_block, fused_one_row, fused_transitions
from .labels import charge, colors_to_supercolors, convert_labels, supercolors_to_colors
from .lattice import (
    LatticeState,
    SystemSpec,
    check_conservation,
    default_columns,
    enumerate_states,
    extend_palette,
    one_row_transfer,
    partition_function,
    state_sum,
)
from .twist import (
    TwistSpec,
    generic_twist,
    iwahori_twist,
    metaplectic_twist,
    specialization_assignment,
    twist_for_mode,
)
from .weights import (
    DELTA,
    DELTA_PRIME,
    FAMILIES,
    GAMMA,
    GAMMA_COLUMNS_NEGATED,
    GAMMA_COLUMNS_RESIDUE,
    GENERIC_COLORED,
    GENERIC_SUPERCOLORED,
    column_color,
    transitions,
    vertex_class,
    weight_of_vertex,
)

__all__ = [name for name in dir() if not name.startswith("_")]
