"""Conversions between colors, supercolors and charges."""
from __future__ import annotations

from ..algebra import rep
from .lattice import SystemSpec
from .weights import GENERIC_COLORED, GENERIC_SUPERCOLORED, SUPERCOLORED


def colors_to_supercolors(sigma, m: int) -> tuple:
    """c_i is relabelled as the supercolor m - i, so theta = -sigma."""
    return tuple((-s) % m for s in sigma)


def supercolors_to_colors(theta, m: int) -> tuple:
    return tuple(rep(-t, m) for t in theta)


def charge(left_supercolor: int, column_supercolor: int, n: int) -> int:
    """Charge a = i - j mod n of a supercolored horizontal edge."""
    return (left_supercolor - column_supercolor) % n


def convert_labels(spec: SystemSpec, direction: str) -> SystemSpec:
    """Switch a spec between the colored and supercolored dialects.

    ``direction`` is ``"to-supercolors"`` or ``"to-colors"``; both families
    describe the same states, so partition functions are preserved.
    """
    if direction == "to-supercolors":
        if spec.family != GENERIC_COLORED:
            raise ValueError("spec is not in the colored dialect")
        return SystemSpec(spec.m, spec.mu, colors_to_supercolors(spec.boundary, spec.m),
                          GENERIC_SUPERCOLORED, spec.twist, spec.columns, spec.spectral_power)
    if direction == "to-colors":
        if spec.family != GENERIC_SUPERCOLORED:
            raise ValueError("spec is not in the generic supercolored dialect")
        return SystemSpec(spec.m, spec.mu, supercolors_to_colors(spec.boundary, spec.m),
                          GENERIC_COLORED, spec.twist, spec.columns, spec.spectral_power)
    raise ValueError(f"unknown direction {direction!r}")
