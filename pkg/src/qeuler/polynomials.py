"""Polynomial families as polynomials in X = q^(base*x) with L-module coefficients.

Every closed form here depends on x only through powers of q^x, and
[x]_q = (1 - X)/(1 - q), so a family member of degree n is a degree-n
polynomial in X.  Evaluating at a fraction a/d becomes a base change
q -> q^d followed by the substitution X = q^a.
"""

from __future__ import annotations

import cmath
from math import comb

from .exactq import LExt, QRat
from .sequences import Family, family_recurrence, q_int

__all__ = [
    "XPoly",
    "build_xpoly",
    "eval_xpoly_at_integer",
    "eval_xpoly_at_fraction",
    "distribution_rhs",
]

_q = QRat.gen()


class XPoly:
    """sum_l coeffs[l] * X^l with X = q^(base*x)."""

    __slots__ = ("family", "n", "base", "coeffs")

    def __init__(self, family, n: int, coeffs, base: int = 1):
        c = [LExt.lift(v) for v in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.family = Family.parse(family) if family is not None else None
        self.n = n
        self.base = base
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, l: int) -> LExt:
        return self.coeffs[l] if 0 <= l < len(self.coeffs) else LExt()

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def __repr__(self):
        body = " + ".join(f"({c})*X^{l}" for l, c in enumerate(self.coeffs) if not c.is_zero())
        return f"XPoly[{self.family and self.family.value}, n={self.n}, X=q^({self.base}x)]({body or '0'})"

    def base_change(self, d: int) -> XPoly:
        """Replace q by q^d everywhere (coefficients and the meaning of X)."""
        return XPoly(self.family, self.n, [c.spread(d) for c in self.coeffs], self.base * d)

    def at(self, xval: QRat) -> LExt:
        """Substitute an exact value for X."""
        acc = LExt()
        for c in reversed(self.coeffs):
            acc = acc * xval + c
        return acc

    def twist(self, a: int) -> XPoly:
        """Substitute X -> q^a X (coefficientwise multiplication by q^(a*l))."""
        return XPoly(
            self.family,
            self.n,
            [c * QRat.monomial(a * l) for l, c in enumerate(self.coeffs)],
            self.base,
        )

    def numeric(self, x, q0) -> complex:
        """Value at real x and numeric q0 using the principal branch of q0^x."""
        lq = cmath.log(complex(q0))
        xv = cmath.exp(self.base * x * lq)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * xv + complex(c.evaluate(q0))
        return acc

    def to_json(self) -> dict:
        return {str(l): c.to_json() for l, c in enumerate(self.coeffs)}


def _euler_type(n: int, shift: int) -> list[QRat]:
    pref = (1 + _q) / (1 - _q) ** n
    return [pref * (comb(n, l) * (-1) ** l) / (QRat.monomial(l + shift) + 1) for l in range(n + 1)]


def _carlitz_expansion(tag: Family, n: int) -> list[LExt]:
    # f_n(x) = sum_i C(n,i) q^(ix) [x]_q^(n-i) f_i, with [x]_q = (1 - X)/(1 - q)
    inv = 1 / (1 - _q)
    out = []
    for l in range(n + 1):
        acc = LExt()
        for i in range(l + 1):
            k = comb(n, i) * comb(n - i, l - i) * (-1) ** (l - i)
            acc = acc + family_recurrence(tag, i) * (inv ** (n - i) * k)
        out.append(acc)
    return out


def build_xpoly(tag, n: int) -> XPoly:
    tag = Family.parse(tag)
    if n < 0:
        raise ValueError("degree index must be nonnegative")
    if tag is Family.MODIFIED_EULER:
        coeffs = _euler_type(n, 0)
    elif tag is Family.KIM_EULER:
        coeffs = _euler_type(n, 1)
    elif tag in (Family.CARLITZ_BERNOULLI, Family.MODIFIED_BERNOULLI):
        coeffs = _carlitz_expansion(tag, n)
    else:
        raise ValueError(f"no polynomial family for {tag.value}")
    return XPoly(tag, n, coeffs)


def eval_xpoly_at_integer(p: XPoly, k: int) -> LExt:
    if k < 0:
        raise ValueError("argument must be a nonnegative integer")
    return p.at(QRat.monomial(p.base * k))


def eval_xpoly_at_fraction(p: XPoly, a: int, d: int) -> LExt:
    """Value at x = a/d; needs d | base*a so that X = q^(base*a/d) is a power of q."""
    if d < 1 or a < 0:
        raise ValueError("need a >= 0 and d >= 1")
    if (p.base * a) % d:
        raise ValueError(
            f"x = {a}/{d} needs fractional powers of q over base q^{p.base}; base-change first"
        )
    return p.at(QRat.monomial(p.base * a // d))


def distribution_rhs(n: int, d: int, tag=Family.MODIFIED_EULER) -> XPoly:
    """[d]_q^n [2]_q/[2]_{q^d} sum_a (-1)^a E_{n,q^d}((x+a)/d) as an XPoly in q^x."""
    if Family.parse(tag) is not Family.MODIFIED_EULER:
        raise ValueError("distribution relation is implemented for the modified q-Euler family")
    if d < 1 or d % 2 == 0:
        raise ValueError("distribution requires odd d")
    inner = build_xpoly(Family.MODIFIED_EULER, n).base_change(d)
    # ((q^d)^((x+a)/d)) = q^a * q^x
    pref = q_int(d) ** n * (1 + _q) / (1 + QRat.monomial(d))
    coeffs = []
    for l, c in enumerate(inner.coeffs):
        twist = QRat.sum(QRat.monomial(a * l, (-1) ** a) for a in range(d))
        coeffs.append(c * (twist * pref))
    return XPoly(Family.MODIFIED_EULER, n, coeffs)
