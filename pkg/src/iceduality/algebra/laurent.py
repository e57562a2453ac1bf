"""Sparse multivariate Laurent polynomials with Scalar coefficients.

Terms are stored flat: ``{(z_exponents, scalar_key): rational}``.  Grouping by
``z_exponents`` recovers the Scalar coefficient of each z-monomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .scalar import ONE_KEY, Coeff, MonoKey, Scalar, _clean, mono_factors, mono_inv, mono_json, mono_mul, render_term


class InexactDivision(ArithmeticError):
    """Raised when a Laurent polynomial is not divisible by the given divisor."""


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[tuple, Coeff] | None = None):
        self.rank = rank
        self.terms: dict[tuple, Coeff] = dict(terms) if terms else {}
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> "LaurentPoly":
        return cls(rank, {((0,) * rank, ONE_KEY): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar | Coeff = 1) -> "LaurentPoly":
        exps = tuple(exps)
        if not isinstance(coeff, Scalar):
            coeff = Scalar.const(coeff)
        return cls(len(exps), {(exps, k): c for k, c in coeff.terms.items()})

    @classmethod
    def var(cls, rank: int, i: int, power: int = 1) -> "LaurentPoly":
        """The monomial z_i^power (i is 1-based)."""
        e = [0] * rank
        e[i - 1] = power
        return cls.monomial(e)

    @classmethod
    def from_scalar(cls, rank: int, s: Scalar | Coeff) -> "LaurentPoly":
        return cls.monomial((0,) * rank, s)

    # predicates and access
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficients(self) -> dict[tuple, Scalar]:
        """Group terms into {z_exponent: Scalar}."""
        out: dict[tuple, dict] = {}
        for (e, k), c in self.terms.items():
            out.setdefault(e, {})[k] = c
        return {e: Scalar(d) for e, d in out.items()}

    def coefficient(self, exps: Sequence[int]) -> Scalar:
        exps = tuple(exps)
        return Scalar({k: c for (e, k), c in self.terms.items() if e == exps})

    def support(self) -> list[tuple]:
        return sorted({e for e, _ in self.terms})

    def is_z_free(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def to_scalar(self) -> Scalar:
        if not self.is_z_free():
            raise ValueError("polynomial depends on z")
        return Scalar({k: c for (_, k), c in self.terms.items()})

    def _check(self, other: "LaurentPoly"):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    # arithmetic
    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = LaurentPoly.from_scalar(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _clean(v)
            else:
                out.pop(k, None)
        return LaurentPoly(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly(self.rank)
            return LaurentPoly(self.rank, {k: _clean(c * other) for k, c in self.terms.items()})
        if isinstance(other, Scalar):
            other = LaurentPoly.from_scalar(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        get = out.get
        for (e1, k1), c1 in self.terms.items():
            for (e2, k2), c2 in other.terms.items():
                s, k = mono_mul(k1, k2)
                key = (_add_exp(e1, e2), k)
                v = get(key, 0) + s * c1 * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return LaurentPoly(self.rank, {k: _clean(v) for k, v in out.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if len(self.terms) != 1:
                raise ZeroDivisionError("only monomials can be inverted")
            ((ex, k), c), = self.terms.items()
            inv = LaurentPoly(self.rank, {(tuple(-x for x in ex), mono_inv(k)): _clean(Fraction(1) / c)})
            return inv ** (-e)
        out = LaurentPoly.one(self.rank)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = LaurentPoly.from_scalar(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return False
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self.terms.items())))
        return self._hash

    # z-variable maps
    def map_exponents(self, f: Callable[[tuple], tuple], rank: int | None = None) -> "LaurentPoly":
        """Apply a monomial (linear) map on exponent vectors."""
        out: dict = {}
        for (e, k), c in self.terms.items():
            key = (f(e), k)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return LaurentPoly(self.rank if rank is None else rank, out)

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial z^exps."""
        exps = tuple(exps)
        return LaurentPoly(self.rank, {(_add_exp(e, exps), k): c for (e, k), c in self.terms.items()})

    def weyl_act(self, w: Sequence[int]) -> "LaurentPoly":
        return weyl_act(w, self)

    def map_scalars(self, f: Callable[[MonoKey], Scalar]) -> "LaurentPoly":
        out: dict = {}
        cache: dict = {}
        for (e, k), c in self.terms.items():
            img = cache.get(k)
            if img is None:
                img = cache[k] = f(k)
            for k2, c2 in img.terms.items():
                key = (e, k2)
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return LaurentPoly(self.rank, {k: _clean(v) for k, v in out.items()})

    # rendering
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> list:
        out = []
        for (e, k), c in self.sorted_terms():
            d = mono_json(k, c)
            d["z"] = list(e)
            out.append(d)
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (e, k), c in sorted(self.terms.items(), key=lambda kv: (tuple(-x for x in kv[0][0]), kv[0][1])):
            zf = []
            for i, x in enumerate(e, 1):
                if x:
                    zf.append(f"z{i}" if x == 1 else f"z{i}^{x}")
            parts.append(render_term(c, mono_factors(k) + zf))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def weyl_act(w: Sequence[int], p: LaurentPoly) -> LaurentPoly:
    """Act by the permutation w (one-line notation, 1-based): z_i -> z_{w(i)}."""
    w = tuple(w)
    if sorted(w) != list(range(1, p.rank + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{p.rank}")

    def f(e):
        out = [0] * len(e)
        for i, x in enumerate(e):
            out[w[i] - 1] = x
        return tuple(out)

    return p.map_exponents(f)


def simple_reflection(i: int, r: int) -> tuple[int, ...]:
    w = list(range(1, r + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def longest_element(r: int) -> tuple[int, ...]:
    return tuple(range(r, 0, -1))


def spectral_power(p: LaurentPoly, n: int) -> LaurentPoly:
    """Substitute z_i -> z_i^n."""
    return p.map_exponents(lambda e: tuple(n * x for x in e))


def substitute(p: LaurentPoly, assignment: Mapping) -> LaurentPoly:
    """Homomorphic substitution of generators and z-variables.

    Keys: ``"Phi"``, ``"q"``, ``("alpha", i, j)`` with canonical 1 <= i, j <= m,
    and ``("z", i)`` mapping to a monomial LaurentPoly of the same rank.
    Gauss symbols are kept; reductions are re-applied by the ring product.
    """
    phi_img = assignment.get("Phi")
    q_img = assignment.get("q")
    alpha_img: dict = {}
    for key, val in assignment.items():
        if isinstance(key, tuple) and key[0] == "alpha":
            _, i, j = key
            if i == j:
                if val != Scalar.const(1):
                    raise ValueError("alpha_{i,i} must be 1")
                continue
            if (j, i) in alpha_img or (i, j) in alpha_img:
                a, b = (i, j) if i < j else (j, i)
                prev = alpha_img[(a, b)]
                cur = val if i < j else val.inverse()
                if prev != cur:
                    raise ValueError(f"inconsistent assignment for alpha_{{{i},{j}}} and alpha_{{{j},{i}}}")
                continue
            if i < j:
                alpha_img[(i, j)] = val
            else:
                alpha_img[(j, i)] = val.inverse()
    z_img = {key[1]: val for key, val in assignment.items() if isinstance(key, tuple) and key[0] == "z"}
    pow_cache: dict = {}

    def gen_pow(name, base: Scalar, e: int) -> Scalar:
        key = (name, e)
        if key not in pow_cache:
            pow_cache[key] = base ** e
        return pow_cache[key]

    def image(k: MonoKey) -> Scalar:
        qe, pe, alpha, gauss = k
        kept_alpha = []
        out = Scalar.const(1)
        if qe:
            if q_img is not None:
                out = out * gen_pow("q", q_img, qe)
        if pe:
            if phi_img is not None:
                out = out * gen_pow("Phi", phi_img, pe)
        for ij, e in alpha:
            if ij in alpha_img:
                out = out * gen_pow(ij, alpha_img[ij], e)
            else:
                kept_alpha.append((ij, e))
        rest = (qe if q_img is None else 0, pe if phi_img is None else 0, tuple(kept_alpha), gauss)
        return out * Scalar({rest: 1})

    res = p
    if q_img is not None or phi_img is not None or alpha_img:
        res = p.map_scalars(image)
    if z_img:
        res = _substitute_z(res, z_img)
    return res


def _substitute_z(p: LaurentPoly, z_img: Mapping[int, LaurentPoly]) -> LaurentPoly:
    r = p.rank
    images = {}
    for i in range(1, r + 1):
        img = z_img.get(i, LaurentPoly.var(r, i))
        if len(img.terms) != 1:
            raise ValueError("z-substitutions must be monomial")
        images[i] = img
    out = LaurentPoly(r)
    for (e, k), c in p.terms.items():
        term = LaurentPoly(r, {((0,) * r, k): c})
        for i, x in enumerate(e, 1):
            if x:
                term = term * images[i] ** x
        out = out + term
    return out


def _lex_max(exps: Iterable[tuple]) -> tuple:
    return max(exps)


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return quo with quo * den == num, or raise InexactDivision.

    Lexicographic long division; the lex-leading coefficient of ``den`` must be
    a unit Scalar.  The quotient support is confined to the box determined by
    per-variable minimal and maximal degrees, which bounds the iteration.
    """
    num._check(den)
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return LaurentPoly(num.rank)
    dcoeffs = den.coefficients()
    lead = max(dcoeffs)
    lc = dcoeffs[lead]
    if not lc.is_unit():
        raise ValueError("leading coefficient of the divisor is not a unit")
    lc_inv = LaurentPoly.from_scalar(num.rank, lc.inverse())
    r = num.rank
    nexp = num.support()
    dexp = list(dcoeffs)
    lo = tuple(min(e[i] for e in nexp) - min(e[i] for e in dexp) for i in range(r))
    hi = tuple(max(e[i] for e in nexp) - max(e[i] for e in dexp) for i in range(r))
    rem = num
    quo = LaurentPoly(r)
    while rem:
        rc = rem.coefficients()
        top = max(rc)
        t = tuple(a - b for a, b in zip(top, lead))
        if any(x < a or x > b for x, a, b in zip(t, lo, hi)):
            raise InexactDivision("remainder leaves the quotient box")
        term = LaurentPoly.monomial(t, rc[top]) * lc_inv
        quo = quo + term
        rem = rem - term * den
    return quo


@dataclass(frozen=True)
class RationalExpr:
    numerator: LaurentPoly
    denominator: LaurentPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")

    def clear(self) -> LaurentPoly:
        return exact_div(self.numerator, self.denominator)
