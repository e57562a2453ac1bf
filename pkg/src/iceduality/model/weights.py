"""Boltzmann weight families for monochrome (one color per column) vertices.

Each family is described by a transition rule: given the occupancy of the top
edge and the color on the incoming horizontal edge, list the admissible
(bottom occupancy, outgoing horizontal color, weight).  For right-moving
families the incoming horizontal edge is the left one; for ``gamma`` paths
travel left, so the incoming edge is the right one.
"""
from __future__ import annotations

from functools import lru_cache

from ..algebra import LaurentPoly, Scalar, rep
from .twist import TwistSpec

GENERIC_COLORED = "generic-colored"
GENERIC_SUPERCOLORED = "generic-supercolored"
DELTA_PRIME = "delta-prime"
DELTA = "delta"
GAMMA = "gamma"

FAMILIES = (GENERIC_COLORED, GENERIC_SUPERCOLORED, DELTA_PRIME, DELTA, GAMMA)
SUPERCOLORED = frozenset({GENERIC_SUPERCOLORED, DELTA_PRIME, DELTA, GAMMA})
METAPLECTIC_ONLY = frozenset({DELTA_PRIME, DELTA, GAMMA})

# column supercolor conventions for gamma
GAMMA_COLUMNS_RESIDUE = "residue"  # column k carries res(k)
GAMMA_COLUMNS_NEGATED = "negated"  # column k carries res(-k)


def moves_left(family: str) -> bool:
    return family == GAMMA


def column_color(family: str, k: int, m: int, gamma_columns: str = GAMMA_COLUMNS_RESIDUE) -> int:
    """Color (1..m) or supercolor (0..m-1) carried by column k."""
    if family == GENERIC_COLORED:
        return rep(-k, m)
    if family == GAMMA and gamma_columns == GAMMA_COLUMNS_NEGATED:
        return (-k) % m
    return k % m


def _z(rank: int, row: int, power: int = 1) -> LaurentPoly:
    return LaurentPoly.var(rank, row, power)


def _c(rank: int, s) -> LaurentPoly:
    return LaurentPoly.from_scalar(rank, s)


@lru_cache(maxsize=None)
def transitions(family: str, twist: TwistSpec | None, col: int, top: bool, h, row: int, rank: int) -> tuple:
    """Admissible (bottom, outgoing horizontal, weight) for one vertex."""
    if family in (GENERIC_COLORED, GENERIC_SUPERCOLORED):
        return _generic(family, twist, col, top, h, row, rank)
    if family == DELTA_PRIME:
        return _metaplectic(twist.m, col, top, h, row, rank, primed=True)
    if family == DELTA:
        return _metaplectic(twist.m, col, top, h, row, rank, primed=False)
    if family == GAMMA:
        return _gamma(twist.m, col, top, h, row, rank)
    raise ValueError(f"unknown family {family!r}")


def _generic(family, tw: TwistSpec, j, top, h, row, rank):
    q = Scalar.q
    phi = tw.Phi
    z = _z(rank, row)
    if h is None:
        if not top:
            return ((False, None, _c(rank, 1)),)  # a1
        return ((True, None, _c(rank, -phi * q(-1))),  # b1
                (False, j, _c(rank, 1)))  # c2
    i = h
    if not top:
        out = [(False, i, z if i == j else _c(rank, 1))]  # b2
        if i == j:
            out.append((True, None, z * (-phi * q(-1) * (1 - q(2)))))  # c1
        return tuple(out)
    if i == j:
        w = z * (phi * q(1))
    elif family == GENERIC_COLORED:
        w = _c(rank, phi * tw.alpha(-i, -j))
    else:
        w = _c(rank, phi * tw.alpha(i, j))
    return ((True, i, w),)  # a2


def _metaplectic(n, j, top, h, row, rank, primed):
    q = Scalar.q
    v = q(2)
    zn = _z(rank, row, n if primed else 1)
    if h is None:
        if not top:
            return ((False, None, _c(rank, 1)),)
        return ((True, None, _c(rank, 1)), (False, j, _c(rank, 1)))
    i = h
    if not top:
        if primed:
            b2 = zn if i == j else _c(rank, 1)
        else:
            b2 = zn
        out = [(False, i, b2)]
        if i == j:
            out.append((True, None, zn * (1 - v)))
        return tuple(out)
    g = Scalar.gauss(i - j, n)
    if primed:
        w = zn * g if i == j else _c(rank, g)
    else:
        w = zn * g
    return ((True, i, w),)


def _gamma(n, j, top, h, row, rank):
    q = Scalar.q
    v = q(2)
    z = _z(rank, row)
    if h is None:
        if not top:
            return ((False, None, z),)  # a1
        return ((True, None, z), (False, j, _c(rank, 1)))  # b1, c2
    i = h
    if not top:
        out = [(False, i, _c(rank, 1))]  # b2
        if i == j:
            out.append((True, None, z * (1 - v)))  # c1
        return tuple(out)
    return ((True, i, _c(rank, Scalar.gauss(j - i, n))),)  # a2


def weight_of_vertex(edges: tuple, column: int, family: str, row: int, rank: int,
                     twist: TwistSpec) -> LaurentPoly | None:
    """Weight of the vertex with geometric edges (left, top, right, bottom).

    Vertical edges are None/False when empty; any other value means occupied by
    the column (super)color.  Returns None for an inadmissible configuration.
    """
    left, top, right, bottom = edges
    for e in (top, bottom):
        if e not in (None, False, True) and e != column:
            return None
    t = top not in (None, False)
    b = bottom not in (None, False)
    h_in, h_out = (right, left) if moves_left(family) else (left, right)
    for bb, hh, w in transitions(family, twist, column, t, h_in, row, rank):
        if bb == b and hh == h_out:
            return w
    return None


def vertex_class(edges: tuple, family: str) -> str:
    """Name of the configuration class (a1, a2, b1, b2, c1, c2)."""
    left, top, right, bottom = edges
    occ = tuple(e not in (None, False) for e in edges)
    if moves_left(family):
        table = {
            (False, False, False, False): "a1", (True, True, True, True): "a2",
            (False, True, False, True): "b1", (True, False, True, False): "b2",
            (False, False, True, True): "c1", (True, True, False, False): "c2",
        }
    else:
        table = {
            (False, False, False, False): "a1", (True, True, True, True): "a2",
            (False, True, False, True): "b1", (True, False, True, False): "b2",
            (True, False, False, True): "c1", (False, True, True, False): "c2",
        }
    return table.get(occ, "inadmissible")
