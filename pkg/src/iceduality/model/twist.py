"""Twist data selecting one member of the weight family."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..algebra import Scalar, rep


@dataclass(frozen=True)
class TwistSpec:
    """Phi, the alpha table and a mode tag.

    ``alpha(i, j)`` takes integer indices and is m-periodic.  Modes are
    ``"generic"``, ``"iwahori"`` and ``"metaplectic"``.
    """

    m: int
    mode: str = "generic"
    phi_value: Scalar | None = None
    alpha_fn: Callable[[int, int], Scalar] | None = None
    tag: str = ""

    @property
    def Phi(self) -> Scalar:
        if self.phi_value is not None:
            return self.phi_value
        if self.mode == "iwahori":
            return Scalar.q(-1)
        if self.mode == "metaplectic":
            return -Scalar.q(1)
        return Scalar.phi(1)

    def alpha(self, i: int, j: int) -> Scalar:
        if self.alpha_fn is not None:
            return self.alpha_fn(i, j)
        m = self.m
        if rep(i, m) == rep(j, m):
            return Scalar.const(1)
        if self.mode == "iwahori":
            return iwahori_alpha(i, j, m)
        if self.mode == "metaplectic":
            return metaplectic_alpha(i, j, m)
        return Scalar.alpha(i, j, m)

    @property
    def v(self) -> Scalar:
        """The residue-cardinality alias v."""
        if self.mode == "iwahori":
            return Scalar.q(-2)
        if self.mode == "metaplectic":
            return Scalar.q(2)
        raise ValueError("v is only defined for the iwahori and metaplectic modes")


def generic_twist(m: int) -> TwistSpec:
    return TwistSpec(m, "generic")


def iwahori_twist(m: int) -> TwistSpec:
    return TwistSpec(m, "iwahori")


def metaplectic_twist(n: int) -> TwistSpec:
    return TwistSpec(n, "metaplectic")


def twist_for_mode(mode: str, m: int) -> TwistSpec:
    if mode not in ("generic", "iwahori", "metaplectic"):
        raise ValueError(f"unknown mode {mode!r}")
    return TwistSpec(m, mode)


def iwahori_alpha(a: int, b: int, m: int) -> Scalar:
    """alpha_{a,b} under alpha_{-i,-j} = 1/q (i<j), q (i>j), 1 <= i, j <= m."""
    i, j = rep(-a, m), rep(-b, m)
    if i == j:
        return Scalar.const(1)
    return Scalar.q(-1) if i < j else Scalar.q(1)


def metaplectic_alpha(a: int, b: int, n: int) -> Scalar:
    """alpha_{a,b} = -g(a-b)/q (and 1 on the diagonal)."""
    if (a - b) % n == 0:
        return Scalar.const(1)
    return -Scalar.gauss(a - b, n) * Scalar.q(-1)


def specialization_assignment(mode: str, m: int) -> dict:
    """Generator assignment for ``algebra.substitute``."""
    tw = TwistSpec(m, mode)
    out: dict = {"Phi": tw.Phi}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            out[("alpha", i, j)] = tw.alpha(i, j)
    return out
