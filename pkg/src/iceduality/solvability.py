"""R-matrices, Yang-Baxter checks and Drinfeld twists.

Vertex orientation conventions.  A T-vertex has edges (left, top, right,
bottom).  An R-vertex has edges (a, b, c, d) = (bottom-left, top-left,
top-right, bottom-right); the line a -> c carries the first spectral parameter
and the line b -> d the second.  Horizontal edges are None (uncolored) or a
color in 1..m.

A vertex is handled through a *provider*: a function mapping the two incoming
edges to the list of (outgoing1, outgoing2, weight) with nonzero weight.  For
T-vertices the incoming pair is (left, top) and the outgoing pair (right,
bottom); for R-vertices it is (a, b) -> (c, d).  The Yang-Baxter sums are then
evaluated by joining providers, which covers every boundary tuple exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable

from .algebra import LaurentPoly, Scalar, rep
from .model.fusion import fused_transitions
from .model.twist import TwistSpec
from .model.weights import GENERIC_COLORED, transitions
from .report import Report

Provider = Callable[[object, object], list]


@dataclass(frozen=True)
class RMatrixSpec:
    twist: TwistSpec
    vertex_color: int | None = None  # None: fused
    z1: int = 1
    z2: int = 2
    rank: int = 2

    @property
    def m(self) -> int:
        return self.twist.m


def _bounce_first(i: int, j: int, k: int | None, m: int) -> bool:
    """True when the bounce weight uses z1 (colors ordered cyclically from k)."""
    if k is None:
        return i < j
    return (i - k) % m < (j - k) % m


@lru_cache(maxsize=None)
def r_weight(a, b, c, d, spec: RMatrixSpec) -> LaurentPoly:
    """Weight of the R-vertex (a, b, c, d); zero when inadmissible."""
    tw = spec.twist
    r = spec.rank
    z1 = LaurentPoly.var(r, spec.z1)
    z2 = LaurentPoly.var(r, spec.z2)
    q = Scalar.q
    one_minus = 1 - q(2)
    cross = (z1 - z2) * (-q(1))
    zero = LaurentPoly.zero(r)
    if a is None and b is None:
        return z1 - z2 * q(2) if c is None and d is None else zero
    if a is not None and b is not None:
        if a == b:
            return z2 - z1 * q(2) if c == a and d == a else zero
        if c == b and d == a:
            return (z1 if _bounce_first(a, b, spec.vertex_color, tw.m) else z2) * one_minus
        if c == a and d == b:
            return cross * tw.alpha(-a, -b)
        return zero
    if b is None:
        if d == a and c is None:
            return z1 * one_minus
        if c == a and d is None:
            return cross * tw.Phi.inverse()
        return zero
    if c == b and d is None:
        return z2 * one_minus
    if d == b and c is None:
        return cross * tw.Phi
    return zero


def horizontal_values(m: int) -> list:
    return [None] + list(range(1, m + 1))


def r_provider(spec: RMatrixSpec) -> Provider:
    @lru_cache(maxsize=None)
    def out(a, b):
        res = []
        cands = {(None, None)} if a is None and b is None else {(a, b), (b, a)}
        for c, d in sorted(cands, key=str):
            w = r_weight(a, b, c, d, spec)
            if w:
                res.append((c, d, w))
        return res
    return out


def t_provider(twist: TwistSpec, column: int, row: int, rank: int) -> Provider:
    """Monochrome colored T-vertex at the given column color."""
    @lru_cache(maxsize=None)
    def out(left, top):
        res = []
        for b, h, w in transitions(GENERIC_COLORED, twist, column, top is not None, left, row, rank):
            res.append((h, column if b else None, w))
        return res
    return out


def fused_t_provider(twist: TwistSpec, row: int, rank: int) -> Provider:
    @lru_cache(maxsize=None)
    def out(left, top):
        return [(h, bot, w) for h, bot, w in fused_transitions(twist, left, frozenset(top), row, rank)]
    return out


def _accumulate(acc: dict, key, val: LaurentPoly) -> None:
    if key in acc:
        acc[key] = acc[key] + val
    else:
        acc[key] = val


def yang_baxter(R_left: Provider, T1: Provider, T2: Provider, R_right: Provider,
                H: list, V: list, identity: str, parameters: dict) -> Report:
    """Check sum R T1 T2 = sum T2 T1 R over all boundaries (a, b, c, d, e, f).

    Left side:  R_left(a, b -> i, j) T1(i, c -> d, k) T2(j, k -> e, f).
    Right side: T2(b, c -> l, n) T1(a, n -> m, f) R_right(m, l -> d, e).
    """
    lhs: dict = {}
    for a, b in product(H, H):
        for i, j, wr in R_left(a, b):
            for c in V:
                for d, k, w1 in T1(i, c):
                    for e, f, w2 in T2(j, k):
                        _accumulate(lhs, (a, b, c, d, e, f), wr * w1 * w2)
    rhs: dict = {}
    for b, c in product(H, V):
        for l, n, w2 in T2(b, c):
            for a in H:
                for mm, f, w1 in T1(a, n):
                    for d, e, wr in R_right(mm, l):
                        _accumulate(rhs, (a, b, c, d, e, f), w2 * w1 * wr)
    rep_ = Report(identity, parameters)
    rep_.checked = len(H) ** 4 * len(V) ** 2
    for key in sorted(set(lhs) | set(rhs), key=str):
        x = lhs.get(key)
        y = rhs.get(key)
        x = x if x is not None else LaurentPoly.zero(_rank_of(y))
        y = y if y is not None else LaurentPoly.zero(x.rank)
        if x != y:
            rep_.violate(boundary=str(key), lhs=str(x), rhs=str(y))
    return rep_


def _rank_of(p) -> int:
    return p.rank


def verify_rtt(twist: TwistSpec, column: int | None = None, shift: int = 1, fused: bool = False,
               t_wrap: Callable[[Provider], Provider] | None = None,
               r_wrap: Callable[[Provider], Provider] | None = None) -> Report:
    """RTT relation for the monochrome column ``column`` (or the fused vertex).

    The left R-matrix is the unfused one at the column color; the right one at
    color column + shift.  For the fused model both are the fused R-matrix.
    ``t_wrap``/``r_wrap`` apply a transformation (for instance a Drinfeld
    twist) to the providers before checking.
    """
    m = twist.m
    H = horizontal_values(m)
    if fused:
        T1, T2 = fused_t_provider(twist, 1, 2), fused_t_provider(twist, 2, 2)
        V = [frozenset(s) for s in _subsets(m)]
        RL = r_provider(RMatrixSpec(twist))
        RR = RL
        params = {"m": m, "mode": twist.mode, "variant": "fused"}
    else:
        col = rep(column, m)
        T1, T2 = t_provider(twist, col, 1, 2), t_provider(twist, col, 2, 2)
        V = [None, col]
        RL = r_provider(RMatrixSpec(twist, col))
        RR = r_provider(RMatrixSpec(twist, rep(col + shift, m)))
        params = {"m": m, "mode": twist.mode, "column_color": col, "shift": shift}
    if t_wrap:
        T1, T2 = t_wrap(T1), t_wrap(T2)
    if r_wrap:
        RL, RR = r_wrap(RL), r_wrap(RR)
    return yang_baxter(RL, T1, T2, RR, H, V, "RTT", params)


def verify_rrr(twist: TwistSpec, vertex_color: int | None = None,
               r_wrap: Callable[[Provider], Provider] | None = None) -> Report:
    """RRR relation: R12 R13 R23 = R23 R13 R12 with spectral parameters z1, z2, z3."""
    H = horizontal_values(twist.m)
    R12 = r_provider(RMatrixSpec(twist, vertex_color, 1, 2, 3))
    R13 = r_provider(RMatrixSpec(twist, vertex_color, 1, 3, 3))
    R23 = r_provider(RMatrixSpec(twist, vertex_color, 2, 3, 3))
    if r_wrap:
        R12, R13, R23 = r_wrap(R12), r_wrap(R13), r_wrap(R23)
    params = {"m": twist.m, "mode": twist.mode, "vertex_color": vertex_color}
    return yang_baxter(R12, R13, R23, R12, H, H, "RRR", params)


def _subsets(m: int) -> list:
    out = []
    for mask in range(1 << m):
        out.append(tuple(c for c in range(1, m + 1) if mask >> (c - 1) & 1))
    return out


# Drinfeld twists


def _edge_counts(e) -> dict:
    """Multiset over E = {None} u palette carried by an edge."""
    if e is None:
        return {None: 1}
    if isinstance(e, frozenset):
        # additive weight of a subset: sum of its colors, uncolored part 1 - |S|
        out = {x: 1 for x in e}
        if len(e) != 1:
            out[None] = 1 - len(e)
        return out
    return {e: 1}


def _palette_count(e) -> int:
    if e is None:
        return 0
    if isinstance(e, frozenset):
        return len(e)
    return 1


def _order(x) -> int:
    return 0 if x is None else x


def standard_factor(phi: Callable[[object, object], Scalar], a, b, c, d) -> Scalar:
    """exp(1/4 <a + c, b + d>) for the form induced by phi."""
    ac: dict = {}
    for e in (a, c):
        for x, k in _edge_counts(e).items():
            ac[x] = ac.get(x, 0) + k
    bd: dict = {}
    for e in (b, d):
        for x, k in _edge_counts(e).items():
            bd[x] = bd.get(x, 0) + k
    out = Scalar.const(1)
    keys = sorted(set(ac) | set(bd), key=_order)
    for x in keys:
        for y in keys:
            if _order(x) >= _order(y):
                continue
            num = ac.get(x, 0) * bd.get(y, 0) - ac.get(y, 0) * bd.get(x, 0)
            if num % 4:
                raise ValueError("fractional twist exponent: conservation violated")
            if num:
                out = out * phi(x, y) ** (num // 4)
    return out


def check_phi(phi: Callable, values: list) -> None:
    for x in values:
        if phi(x, x) != Scalar.const(1):
            raise ValueError("phi(x, x) must be 1")
        for y in values:
            if phi(x, y) * phi(y, x) != Scalar.const(1):
                raise ValueError("phi(x, y) phi(y, x) must be 1")


def standard_twist(phi: Callable[[object, object], Scalar]) -> Callable[[Provider], Provider]:
    """Multiply every vertex weight by exp(1/4 <a + c, b + d>).

    For T-vertices (left, top, right, bottom) and R-vertices (a, b, c, d) the
    formula reads the same in provider coordinates: incoming pair (x, y),
    outgoing pair (u, v) correspond to (a, b, c, d) = (x, y, u, v).
    """
    def wrap(P: Provider) -> Provider:
        @lru_cache(maxsize=None)
        def out(x, y):
            return [(u, v, w * standard_factor(phi, x, y, u, v)) for u, v, w in P(x, y)]
        return out
    return wrap


def nonstandard_twist_T(Phi: Scalar) -> Callable[[Provider], Provider]:
    """T-weights times Phi^<bottom>."""
    def wrap(P: Provider) -> Provider:
        @lru_cache(maxsize=None)
        def out(x, y):
            return [(u, v, w * Phi ** _palette_count(v)) for u, v, w in P(x, y)]
        return out
    return wrap


def nonstandard_twist_R(Phi: Scalar) -> Callable[[Provider], Provider]:
    """R-weights times Phi^(<b> - <c>)."""
    def wrap(P: Provider) -> Provider:
        @lru_cache(maxsize=None)
        def out(x, y):
            return [(u, v, w * Phi ** (_palette_count(y) - _palette_count(u))) for u, v, w in P(x, y)]
        return out
    return wrap


def compose(*wraps):
    def wrap(P):
        for f in wraps:
            P = f(P)
        return P
    return wrap


def apply_drinfeld_twist(provider: Provider, kind: str, data, vertex: str = "T") -> Provider:
    """Apply a standard (``data`` = phi) or nonstandard (``data`` = Phi) twist."""
    if kind == "standard":
        return standard_twist(data)(provider)
    if kind == "nonstandard":
        return (nonstandard_twist_T(data) if vertex == "T" else nonstandard_twist_R(data))(provider)
    raise ValueError(f"unknown twist kind {kind!r}")


def base_twist(m: int) -> TwistSpec:
    """Family member with Phi = 1 and every alpha = 1."""
    one = Scalar.const(1)
    return TwistSpec(m, "generic", phi_value=one, alpha_fn=_unit_alpha, tag="base")


def _unit_alpha(i, j):
    return Scalar.const(1)


def alpha_phi(twist: TwistSpec) -> Callable[[object, object], Scalar]:
    """phi(c_i, c_j) = alpha_{-i,-j}; trivial on the uncolored element."""
    def phi(x, y):
        if x is None or y is None:
            return Scalar.const(1)
        return twist.alpha(-x, -y)
    return phi


def ratio_phi(num: TwistSpec, den: TwistSpec) -> Callable[[object, object], Scalar]:
    """phi(c_i, c_j) = alpha_num(-i,-j) / alpha_den(-i,-j)."""
    def phi(x, y):
        if x is None or y is None:
            return Scalar.const(1)
        return num.alpha(-x, -y) * den.alpha(-x, -y).inverse()
    return phi


def compare_providers(P: Provider, Q: Provider, X: list, Y: list, label: str) -> Report:
    """Check that two providers define identical weight tables."""
    rep_ = Report(label)
    for x, y in product(X, Y):
        a = {(u, v): w for u, v, w in P(x, y)}
        b = {(u, v): w for u, v, w in Q(x, y)}
        rep_.checked += 1
        if a != b:
            rep_.violate(inputs=str((x, y)), lhs=str(a), rhs=str(b))
    return rep_


def twisted_family_report(m: int, target: TwistSpec, source: TwistSpec) -> Report:
    """Rebuild the target weight tables from the source member by twisting.

    Uses phi = alpha_target / alpha_source and Phi = Phi_target / Phi_source.
    """
    phi = ratio_phi(target, source)
    Phi = target.Phi * source.Phi.inverse()
    H = horizontal_values(m)
    out = Report("twist-reconstruction", {"m": m, "source": source.mode or source.tag, "target": target.mode})
    for col in range(1, m + 1):
        src = t_provider(source, col, 1, 1)
        tgt = t_provider(target, col, 1, 1)
        tw = compose(standard_twist(phi), nonstandard_twist_T(Phi))(src)
        out.merge(compare_providers(tw, tgt, H, [None, col], f"T col {col}"))
    for k in [None] + list(range(1, m + 1)):
        src = r_provider(RMatrixSpec(source, k))
        tgt = r_provider(RMatrixSpec(target, k))
        tw = compose(standard_twist(phi), nonstandard_twist_R(Phi))(src)
        out.merge(compare_providers(tw, tgt, H, H, f"R color {k}"))
    return out


def palette_shift_report(twist: TwistSpec) -> Report:
    """Unfused R at color k equals the fused R after the cyclic shift c_k -> c_1."""
    m = twist.m
    H = horizontal_values(m)
    out = Report("unfused-vs-fused-R", {"m": m, "mode": twist.mode})
    for k in range(1, m + 1):
        shifted = TwistSpec(m, twist.mode, twist.phi_value,
                            (lambda i, j, k=k: twist.alpha(i - (k - 1), j - (k - 1))), tag=f"shift{k}")
        move = lambda x, k=k: None if x is None else rep(x - (k - 1), m)
        for a, b, c, d in product(H, H, H, H):
            u = r_weight(a, b, c, d, RMatrixSpec(twist, k))
            f = r_weight(move(a), move(b), move(c), move(d), RMatrixSpec(shifted, None))
            out.checked += 1
            if u != f:
                out.violate(color=k, edges=str((a, b, c, d)), unfused=str(u), fused=str(f))
    return out
