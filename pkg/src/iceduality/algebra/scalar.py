"""Exact coefficient ring generated by q, Phi, alpha_{i,j} and Gauss symbols g(a).

A scalar monomial is stored as a hashable key

    (q_exp, phi_exp, alpha_items, gauss_items)

where ``alpha_items`` is a sorted tuple of ``((i, j), e)`` with ``1 <= i < j <= m``
and ``gauss_items`` a sorted tuple of ``((n, a), e)`` with ``1 <= a <= n - 1`` and
``e > 0``.  The Gauss symbols obey the rewrite rules

    g(a) g(n - a) -> q^2,    g(n/2)^2 -> q^2,    g(0) -> -q^2,

so a reduced key never contains both g(a) and g(n - a), and g(n/2) appears with
exponent at most one.  Under these rules every Gauss monomial is a unit.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]
MonoKey = tuple  # (int, int, tuple, tuple)

ONE_KEY: MonoKey = (0, 0, (), ())


def _clean(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def residue(x: int, m: int) -> int:
    """Least nonnegative residue of x modulo m."""
    return x % m


def rep(x: int, m: int) -> int:
    """Representative of x modulo m in {1, ..., m}."""
    r = x % m
    return m if r == 0 else r


def _reduce_gauss(gauss: dict) -> tuple[int, int, tuple]:
    """Reduce a dict {(n, a): e} to canonical form.

    Returns (sign, extra q exponent, canonical items).
    """
    sign = 1
    qe = 0
    by_n: dict[int, dict[int, int]] = {}
    for (n, a), e in gauss.items():
        if e == 0:
            continue
        a %= n
        if a == 0:
            # g(0) = -v = -q^2
            if e % 2:
                sign = -sign
            qe += 2 * e
            continue
        slot = by_n.setdefault(n, {})
        slot[a] = slot.get(a, 0) + e
    items = []
    for n in sorted(by_n):
        slot = by_n[n]
        for a in sorted({min(x, n - x) for x in slot}):
            b = n - a
            if a == b:
                t, s = divmod(slot[a], 2)
                qe += 2 * t
                if s:
                    items.append(((n, a), 1))
                continue
            x = slot.get(a, 0)
            y = slot.get(b, 0)
            # g(a)^x g(b)^y = q^{2y} g(a)^{x-y}
            qe += 2 * y
            d = x - y
            if d > 0:
                items.append(((n, a), d))
            elif d < 0:
                # g(a)^{-k} = q^{-2k} g(b)^k
                qe += 2 * d
                items.append(((n, b), -d))
    return sign, qe, tuple(sorted(items))


def _gauss_dict(items: Iterable) -> dict:
    out: dict = {}
    for k, e in items:
        out[k] = out.get(k, 0) + e
    return out


def _merge_alpha(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        v = d.get(k, 0) + e
        if v:
            d[k] = v
        else:
            del d[k]
    return tuple(sorted(d.items()))


@lru_cache(maxsize=None)
def mono_mul(k1: MonoKey, k2: MonoKey) -> tuple[int, MonoKey]:
    """Product of two reduced monomial keys as (sign, key)."""
    q1, p1, a1, g1 = k1
    q2, p2, a2, g2 = k2
    alpha = _merge_alpha(a1, a2)
    if not g1 or not g2:
        return 1, (q1 + q2, p1 + p2, alpha, g1 or g2)
    gd = _gauss_dict(g1)
    for k, e in g2:
        gd[k] = gd.get(k, 0) + e
    sign, qe, gauss = _reduce_gauss(gd)
    return sign, (q1 + q2 + qe, p1 + p2, alpha, gauss)


@lru_cache(maxsize=None)
def mono_inv(k: MonoKey) -> MonoKey:
    qe, pe, alpha, gauss = k
    alpha = tuple((key, -e) for key, e in alpha)
    sign, gq, gauss = _reduce_gauss({key: -e for key, e in gauss})
    assert sign == 1
    return (-qe + gq, -pe, alpha, gauss)


def normalize_monomial(q: int = 0, phi: int = 0, alpha: Iterable = (), gauss: Iterable = (),
                       m: int | None = None) -> tuple[int, MonoKey]:
    """Normalize raw generator powers into (sign, reduced key).

    ``alpha`` holds ``((i, j), e)`` with arbitrary integer indices; they are
    reduced into {1..m} (``m`` required when alpha is nonempty).  ``gauss``
    holds ``((n, a), e)``.
    """
    ad: dict = {}
    for (i, j), e in alpha:
        if m is None:
            raise ValueError("palette size m is required to reduce alpha indices")
        i, j = rep(i, m), rep(j, m)
        if i == j or e == 0:
            continue
        if i > j:
            i, j, e = j, i, -e
        ad[(i, j)] = ad.get((i, j), 0) + e
    alpha_t = tuple(sorted((k, e) for k, e in ad.items() if e))
    for (n, a), e in gauss:
        if n < 1:
            raise ValueError(f"bad Gauss modulus {n}")
    sign, qe, gauss_t = _reduce_gauss(_gauss_dict(gauss))
    return sign, (q + qe, phi, alpha_t, gauss_t)


class Scalar:
    """Finite Q-linear combination of reduced monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[MonoKey, Coeff] | None = None):
        self.terms: dict[MonoKey, Coeff] = dict(terms) if terms else {}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: Coeff) -> "Scalar":
        c = _clean(Fraction(c)) if not isinstance(c, int) else c
        return cls({ONE_KEY: c}) if c else cls()

    @classmethod
    def monomial(cls, c: Coeff = 1, q: int = 0, phi: int = 0, alpha: Iterable = (),
                 gauss: Iterable = (), m: int | None = None) -> "Scalar":
        sign, key = normalize_monomial(q, phi, alpha, gauss, m)
        c = _clean(Fraction(c)) * sign if not isinstance(c, int) else c * sign
        return cls({key: c}) if c else cls()

    @classmethod
    def q(cls, e: int = 1) -> "Scalar":
        return cls({(e, 0, (), ()): 1})

    @classmethod
    def phi(cls, e: int = 1) -> "Scalar":
        return cls({(0, e, (), ()): 1})

    @classmethod
    def alpha(cls, i: int, j: int, m: int) -> "Scalar":
        return cls.monomial(alpha=[((i, j), 1)], m=m)

    @classmethod
    def gauss(cls, a: int, n: int) -> "Scalar":
        return cls.monomial(gauss=[((n, a), 1)])

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    is_unit = is_monomial

    def only_q(self) -> bool:
        return all(k[1] == 0 and not k[2] and not k[3] for k in self.terms)

    def free_of_phi_alpha(self) -> bool:
        return all(k[1] == 0 and not k[2] for k in self.terms)

    # arithmetic
    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _clean(v)
            else:
                out.pop(k, None)
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Scalar()
            return Scalar({k: _clean(c * other) for k, c in self.terms.items()})
        if not isinstance(other, Scalar):
            return NotImplemented
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                s, k = mono_mul(k1, k2)
                v = out.get(k, 0) + s * c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Scalar({k: _clean(v) for k, v in out.items()})

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.is_monomial():
            raise ZeroDivisionError(f"scalar {self} is not a unit")
        (k, c), = self.terms.items()
        return Scalar({mono_inv(k): _clean(Fraction(1) / c)})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * _as_scalar(other).inverse()

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            return self.inverse() ** (-e)
        out = Scalar.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[MonoKey, Coeff]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> list:
        return [mono_json(k, c) for k, c in self.sorted_terms()]

    def __str__(self) -> str:
        return render_scalar(self)

    __repr__ = __str__


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    return NotImplemented


def mono_json(k: MonoKey, c: Coeff) -> dict:
    c = Fraction(c)
    qe, pe, alpha, gauss = k
    return {
        "coeff": [c.numerator, c.denominator],
        "q": qe,
        "Phi": pe,
        "alpha": [[i, j, e] for (i, j), e in alpha],
        "g": [[n, a, e] for (n, a), e in gauss],
    }


def _pow(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def mono_factors(k: MonoKey) -> list[str]:
    qe, pe, alpha, gauss = k
    out = []
    if pe:
        out.append(_pow("Phi", pe))
    if qe:
        out.append(_pow("q", qe))
    for (i, j), e in alpha:
        out.append(_pow(f"a[{i},{j}]", e))
    for (n, a), e in gauss:
        out.append(_pow(f"g{n}({a})", e))
    return out


def render_term(c: Coeff, factors: list[str]) -> str:
    c = Fraction(c)
    if not factors:
        return str(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def render_scalar(s: Scalar) -> str:
    if not s.terms:
        return "0"
    parts = [render_term(c, mono_factors(k)) for k, c in s.sorted_terms()]
    return " + ".join(parts).replace("+ -", "- ")


def scalar_normalize(factors: Iterable[tuple], m: int | None = None) -> Scalar:
    """Build a canonical Scalar from a product of generator powers.

    Each factor is one of ``("q", e)``, ``("Phi", e)``, ``("alpha", i, j, e)``,
    ``("g", a, n, e)`` or ``("const", c)``.
    """
    c: Coeff = 1
    q = phi = 0
    alpha: list = []
    gauss: list = []
    for f in factors:
        tag = f[0]
        if tag == "q" and len(f) == 2:
            q += f[1]
        elif tag == "Phi" and len(f) == 2:
            phi += f[1]
        elif tag == "alpha" and len(f) == 4:
            alpha.append(((f[1], f[2]), f[3]))
        elif tag == "g" and len(f) == 4:
            gauss.append(((f[2], f[1]), f[3]))
        elif tag == "const" and len(f) == 2:
            c = c * Fraction(f[1])
        else:
            raise ValueError(f"malformed generator factor {f!r}")
    return Scalar.monomial(_clean(Fraction(c)), q=q, phi=phi, alpha=alpha, gauss=gauss, m=m)
