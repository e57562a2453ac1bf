"""Fused vertices: blocks of m consecutive monochrome columns.

Inside a block the column colors read 1, 2, ..., m from left to right.  Vertical
edges of a fused vertex carry subsets of the palette; the empty subset is the
uncolored edge.
"""
from __future__ import annotations

from functools import lru_cache

from ..algebra import LaurentPoly
from .twist import TwistSpec
from .weights import GENERIC_COLORED, transitions


@lru_cache(maxsize=None)
def fused_transitions(twist: TwistSpec, left, top: frozenset, row: int, rank: int,
                      family: str = GENERIC_COLORED) -> tuple:
    """All (right, bottom subset, weight) reachable from (left, top)."""
    m = twist.m
    partial = [(left, frozenset(), LaurentPoly.one(rank))]
    for color in range(1, m + 1):
        t = color in top
        nxt = []
        for h, bot, w in partial:
            for b, h2, wt in transitions(family, twist, color, t, h, row, rank):
                nxt.append((h2, bot | {color} if b else bot, w * wt))
        partial = nxt
    merged: dict = {}
    for h, bot, w in partial:
        key = (h, bot)
        merged[key] = merged[key] + w if key in merged else w
    return tuple((h, bot, w) for (h, bot), w in sorted(merged.items(), key=lambda kv: (str(kv[0][0]), sorted(kv[0][1]))) if w)


def fuse_block(top, bottom, left, right, twist: TwistSpec, row: int = 1, rank: int = 1,
               family: str = GENERIC_COLORED) -> LaurentPoly:
    """Weight of the fused vertex, or 0 when no unfused filling exists."""
    top = frozenset(top)
    bottom = frozenset(bottom)
    for h, bot, w in fused_transitions(twist, left, top, row, rank, family):
        if h == right and bot == bottom:
            return w
    return LaurentPoly.zero(rank)


def fused_one_row(twist: TwistSpec, blocks: int, top: dict, bottom: dict, right, row: int = 1,
                  rank: int = 1) -> LaurentPoly:
    """One-row partition function built from fused vertices.

    ``top`` and ``bottom`` map block index (0 = rightmost) to color subsets.
    The left boundary is empty.
    """
    cur = {None: LaurentPoly.one(rank)}
    for b in range(blocks - 1, -1, -1):
        t = frozenset(top.get(b, ()))
        want = frozenset(bottom.get(b, ()))
        nxt: dict = {}
        for h, w in cur.items():
            for h2, bot, wt in fused_transitions(twist, h, t, row, rank):
                if bot != want:
                    continue
                val = w * wt
                nxt[h2] = nxt[h2] + val if h2 in nxt else val
        cur = nxt
    return cur.get(right, LaurentPoly.zero(rank))
