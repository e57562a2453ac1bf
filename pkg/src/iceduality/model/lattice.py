"""Grid systems, admissible states and partition functions.

Rows are numbered 1..r from the top and row i uses z_i.  Columns are labelled
N-1, ..., 0 from left to right.  Paths enter through the top boundary at the
columns of ``mu``; one path leaves through the side boundary in every row
(right side, or left side for ``gamma``) carrying the boundary color of that
row.  The remaining boundary edges are empty.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from ..algebra import LaurentPoly, rep, spectral_power
from .twist import TwistSpec, generic_twist, metaplectic_twist, twist_for_mode
from .weights import (
    FAMILIES,
    GAMMA_COLUMNS_RESIDUE,
    GENERIC_COLORED,
    METAPLECTIC_ONLY,
    SUPERCOLORED,
    column_color,
    moves_left,
    transitions,
)


def default_columns(mu, m: int) -> int:
    return m * (-(-(mu[0] + 1) // m))


@dataclass(frozen=True)
class SystemSpec:
    """A finite grid system.

    ``boundary`` is sigma (colors in 1..m) for the colored family and theta
    (supercolors in 0..m-1) for supercolored families.
    """

    m: int
    mu: tuple
    boundary: tuple
    family: str = GENERIC_COLORED
    twist: TwistSpec | None = None
    columns: int | None = None
    spectral_power: int = 1
    gamma_columns: str = GAMMA_COLUMNS_RESIDUE

    def __post_init__(self):
        mu = tuple(self.mu)
        object.__setattr__(self, "mu", mu)
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not mu or any(a <= b for a, b in zip(mu, mu[1:])) or mu[-1] < 0:
            raise ValueError(f"mu must be strictly decreasing and nonnegative: {mu}")
        if len(self.boundary) != len(mu):
            raise ValueError("boundary length must equal the number of rows")
        if self.family in SUPERCOLORED:
            bnd = tuple(x % self.m for x in self.boundary)
        else:
            bnd = tuple(rep(x, self.m) for x in self.boundary)
        object.__setattr__(self, "boundary", bnd)
        if self.twist is None:
            tw = metaplectic_twist(self.m) if self.family in METAPLECTIC_ONLY else generic_twist(self.m)
            object.__setattr__(self, "twist", tw)
        if self.twist.m != self.m:
            raise ValueError("twist palette does not match")
        if self.columns is None:
            object.__setattr__(self, "columns", default_columns(mu, self.m))
        if self.columns % self.m or self.columns <= mu[0]:
            raise ValueError("column count must be a multiple of m exceeding mu_1")

    @property
    def rows(self) -> int:
        return len(self.mu)

    @property
    def sigma(self) -> tuple:
        if self.family in SUPERCOLORED:
            return tuple(rep(-t, self.m) for t in self.boundary)
        return self.boundary

    @property
    def theta(self) -> tuple:
        if self.family in SUPERCOLORED:
            return self.boundary
        return tuple((-s) % self.m for s in self.boundary)

    def column_color(self, k: int) -> int:
        return column_color(self.family, k, self.m, self.gamma_columns)

    def scan_order(self) -> list[int]:
        cols = list(range(self.columns))
        return cols if moves_left(self.family) else cols[::-1]

    def colors_match(self) -> bool:
        """Top colors must be a permutation of the side boundary colors."""
        return Counter(self.column_color(k) for k in self.mu) == Counter(self.boundary)

    def with_boundary(self, boundary) -> "SystemSpec":
        return SystemSpec(self.m, self.mu, tuple(boundary), self.family, self.twist, self.columns,
                          self.spectral_power, self.gamma_columns)

    def with_columns(self, columns: int) -> "SystemSpec":
        return SystemSpec(self.m, self.mu, self.boundary, self.family, self.twist, columns,
                          self.spectral_power, self.gamma_columns)


def extend_palette(spec: SystemSpec, new_m: int, embedding=None) -> SystemSpec:
    """Re-embed a colored system into a larger palette.

    ``embedding`` maps the old colors into 1..new_m preserving order; by default
    c -> c + new_m - m.  Each path keeps its block number floor(mu_i/m) and gets
    the column of its new color inside that block.
    """
    if spec.family != GENERIC_COLORED:
        raise ValueError("palette extension is defined for the colored family")
    m = spec.m
    if embedding is None:
        embedding = {c: c + new_m - m for c in range(1, m + 1)}
    if any(embedding[a] >= embedding[b] for a in range(1, m) for b in range(a + 1, m + 1)):
        raise ValueError("embedding must preserve the color order")
    mu = []
    for k in spec.mu:
        c = embedding[rep(-k, m)]
        mu.append((k // m) * new_m + (-c) % new_m)
    sigma = tuple(embedding[s] for s in spec.boundary)
    return SystemSpec(new_m, tuple(mu), sigma, GENERIC_COLORED, twist_for_mode(spec.twist.mode, new_m))


@dataclass(frozen=True)
class LatticeState:
    """One admissible state.

    ``vertices[i][p]`` is (left, top, right, bottom) of the vertex in row i+1
    at column N-1-p (so each row reads left to right).  Vertical edges hold the
    column color or None.
    """

    spec: SystemSpec
    vertices: tuple
    weight: LaurentPoly = field(compare=False)

    def dump(self) -> str:
        lines = []
        for i, row in enumerate(self.vertices, 1):
            cells = []
            for left, top, right, bottom in row:
                f = lambda e: "." if e is None else str(e)
                cells.append(f"{f(left)}{f(top)}{f(right)}{f(bottom)}")
            lines.append(f"row {i}: " + " ".join(cells))
        return "\n".join(lines)


def _row_fillings(spec: SystemSpec, row: int, top_mask: int):
    """All fillings of one row: list of (bottom_mask, vertex list, weight).

    The vertex list is in scan order.
    """
    r = spec.rows
    target = spec.boundary[row - 1]
    left_moving = moves_left(spec.family)
    partial = [(0, None, [], LaurentPoly.one(r))]
    for k in spec.scan_order():
        col = spec.column_color(k)
        t = bool(top_mask >> k & 1)
        nxt = []
        for bm, h, verts, w in partial:
            for b, h2, wt in transitions(spec.family, spec.twist, col, t, h, row, r):
                if left_moving:
                    edges = (h2, col if t else None, h, col if b else None)
                else:
                    edges = (h, col if t else None, h2, col if b else None)
                nxt.append((bm | (b << k), h2, verts + [edges], w * wt))
        partial = nxt
    return [(bm, verts, w) for bm, h, verts, w in partial if h == target]


def enumerate_states(spec: SystemSpec) -> list[LatticeState]:
    """All admissible states in deterministic order."""
    if not spec.colors_match():
        return []
    top = sum(1 << k for k in spec.mu)
    states = []

    def rec(row, mask, acc, w):
        if row > spec.rows:
            if mask == 0:
                states.append((acc, w))
            return
        # one path must leave in each remaining row
        if bin(mask).count("1") != spec.rows - row + 1:
            return
        for bm, verts, wt in _row_fillings(spec, row, mask):
            if moves_left(spec.family):
                verts = verts[::-1]
            rec(row + 1, bm, acc + [tuple(verts)], w * wt)

    rec(1, top, [], LaurentPoly.one(spec.rows))
    out = []
    for verts, w in states:
        if spec.spectral_power != 1:
            w = spectral_power(w, spec.spectral_power)
        out.append(LatticeState(spec, tuple(verts), w))
    return out


@lru_cache(maxsize=None)
def _row_transfer(family, twist, m, columns, gamma_columns, row, rank, top_mask, target):
    """{bottom_mask: weight} for one row by dynamic programming over columns."""
    left_moving = moves_left(family)
    cols = list(range(columns)) if left_moving else list(range(columns - 1, -1, -1))
    cur = {(0, None): LaurentPoly.one(rank)}
    for k in cols:
        col = column_color(family, k, m, gamma_columns)
        t = bool(top_mask >> k & 1)
        nxt: dict = {}
        for (bm, h), w in cur.items():
            for b, h2, wt in transitions(family, twist, col, t, h, row, rank):
                key = (bm | (b << k), h2)
                val = w * wt
                if key in nxt:
                    nxt[key] = nxt[key] + val
                else:
                    nxt[key] = val
        cur = {k2: v for k2, v in nxt.items() if v}
    return {bm: w for (bm, h), w in cur.items() if h == target}


def partition_function(spec: SystemSpec) -> LaurentPoly:
    """Sum of the state weights, computed by a row transfer recursion."""
    r = spec.rows
    if not spec.colors_match():
        return LaurentPoly.zero(r)
    states = {sum(1 << k for k in spec.mu): LaurentPoly.one(r)}
    for row in range(1, r + 1):
        nxt: dict = {}
        need = r - row
        for mask, w in states.items():
            trans = _row_transfer(spec.family, spec.twist, spec.m, spec.columns, spec.gamma_columns,
                                  row, r, mask, spec.boundary[row - 1])
            for bm, wt in trans.items():
                if bin(bm).count("1") != need:
                    continue
                val = w * wt
                nxt[bm] = nxt[bm] + val if bm in nxt else val
        states = {k: v for k, v in nxt.items() if v}
    z = states.get(0, LaurentPoly.zero(r))
    if spec.spectral_power != 1:
        z = spectral_power(z, spec.spectral_power)
    return z


def state_sum(states: list[LatticeState], rank: int) -> LaurentPoly:
    out = LaurentPoly.zero(rank)
    for s in states:
        out = out + s.weight
    return out


def check_conservation(state: LatticeState) -> bool:
    """Multiset of incoming colors equals multiset of outgoing colors at every vertex."""
    left_moving = moves_left(state.spec.family)
    for row in state.vertices:
        for left, top, right, bottom in row:
            ins = (right, top) if left_moving else (left, top)
            outs = (left, bottom) if left_moving else (right, bottom)
            if Counter(x for x in ins if x is not None) != Counter(x for x in outs if x is not None):
                return False
    return True


def one_row_transfer(family: str, twist: TwistSpec, columns: int, top: frozenset, bottom: frozenset,
                     left=None, right=None, row: int = 1, rank: int = 1) -> LaurentPoly:
    """One-row weight with given top/bottom occupied columns and side colors.

    Right-moving families only.
    """
    cur = {left: LaurentPoly.one(rank)}
    for k in range(columns - 1, -1, -1):
        col = column_color(family, k, twist.m)
        t = k in top
        b_need = k in bottom
        nxt: dict = {}
        for h, w in cur.items():
            for b, h2, wt in transitions(family, twist, col, t, h, row, rank):
                if b != b_need:
                    continue
                val = w * wt
                nxt[h2] = nxt[h2] + val if h2 in nxt else val
        cur = nxt
    return cur.get(right, LaurentPoly.zero(rank))
