"""Exact arithmetic in Q(q): polynomials, reduced rational functions, the
rank-2 extension by L = (q-1)/log q, and cyclotomic coefficient vectors.

Rationals are :class:`fractions.Fraction`.  A :class:`QRat` is stored as
``c * N / D`` with ``N`` and ``D`` primitive integer polynomials (positive
leading coefficients, coprime) and ``c`` a rational scalar; that form is
canonical, so equality is a representation check.  The public ``num`` /
``den`` view is the monic-denominator form with the content folded into
the numerator.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from . import _zpoly as zp

__all__ = [
    "PoleError",
    "DivergentLimitError",
    "QPoly",
    "QRat",
    "LExt",
    "CycloElem",
    "qrat_normalize",
    "qrat_arith",
    "subst_power",
    "subst_root",
    "eval_at",
    "limit_q_to_1",
    "cyclo_arith",
    "cyclo_scale",
    "cyclotomic_poly",
    "euler_phi",
    "to_json",
    "qrat_from_json",
    "lext_from_json",
    "cyclo_from_json",
    "Q",
    "L",
]


class PoleError(ZeroDivisionError):
    pass


class DivergentLimitError(ArithmeticError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _clear(coeffs) -> tuple[Fraction, tuple[int, ...]]:
    """Write a rational coefficient list as scalar * primitive integer poly."""
    coeffs = [_frac(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = _lcm(den, c.denominator)
    ints = zp.trim(c.numerator * (den // c.denominator) for c in coeffs)
    g, prim = zp.primitive(ints)
    return Fraction(g, den), prim


def _poly_str(coeffs, var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class QPoly:
    """Polynomial in q with Fraction coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def _from_ints(cls, scalar: Fraction, ints) -> QPoly:
        obj = cls.__new__(cls)
        obj.coeffs = tuple(scalar * c for c in ints) if scalar else ()
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPoly({_poly_str(self.coeffs, 'q')})"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __neg__(self):
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly(c * other for c in self.coeffs)
        sa, ia = _clear(self.coeffs)
        sb, ib = _clear(other.coeffs)
        return QPoly._from_ints(sa * sb, zp.mul(ia, ib))

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise PoleError("division by zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        lb = b[-1]
        quo = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
        for i in range(len(r) - len(b), -1, -1):
            c = r[i + len(b) - 1] / lb
            quo[i] = c
            if c:
                for j, bj in enumerate(b):
                    r[i + j] -= c * bj
        return QPoly(quo), QPoly(r[: len(b) - 1])

    def monic(self) -> QPoly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return QPoly(c / lc for c in self.coeffs)

    def gcd(self, other) -> QPoly:
        """Monic gcd (zero if both are zero)."""
        g = zp.gcd(_clear(self.coeffs)[1], _clear(other.coeffs)[1])
        return QPoly(g).monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _check_var(a, b):
    if a._var != b._var:
        raise ValueError(f"cannot combine expressions in {a._var} and {b._var}")


class QRat:
    """Element of Q(q) in canonical reduced form.

    ``QRat(num, den)`` accepts QPoly or coefficient sequences; scalars are
    accepted as constants.  Instances are immutable.
    """

    __slots__ = ("_c", "_n", "_d", "_var")

    def __init__(self, num=0, den=1, var: str = "q"):
        if isinstance(num, QRat) and den == 1:
            self._c, self._n, self._d, self._var = num._c, num._n, num._d, num._var
            return
        num = _as_coeffs(num)
        den = _as_coeffs(den)
        cn, n = _clear(num)
        cd, d = _clear(den)
        if not d:
            raise PoleError("division by zero polynomial")
        self._var = var
        self._set(cn / cd, n, d)

    def _set(self, c, n, d):
        if c == 0 or not n:
            self._c, self._n, self._d = Fraction(0), zp.ZERO, zp.ONE
            return
        g = zp.gcd(n, d)
        if g != zp.ONE:
            n = zp.divexact(n, g)
            d = zp.divexact(d, g)
        self._c, self._n, self._d = Fraction(c), n, d

    @classmethod
    def _raw(cls, c, n, d, var="q") -> QRat:
        obj = cls.__new__(cls)
        if c == 0 or not n:
            obj._c, obj._n, obj._d = Fraction(0), zp.ZERO, zp.ONE
        else:
            obj._c, obj._n, obj._d = c, n, d
        obj._var = var
        return obj

    @classmethod
    def _make(cls, c, n, d, var="q") -> QRat:
        """Canonicalize c * n / d for arbitrary integer polys n, d."""
        if not d:
            raise PoleError("division by zero polynomial")
        gn, n = zp.primitive(n)
        gd, d = zp.primitive(d)
        obj = cls.__new__(cls)
        obj._var = var
        obj._set(Fraction(c) * gn / gd if gn else 0, n, d)
        return obj

    @classmethod
    def const(cls, value, var="q") -> QRat:
        value = _frac(value)
        return cls._raw(value, zp.ONE, zp.ONE, var)

    @classmethod
    def gen(cls, var="q") -> QRat:
        return cls._raw(Fraction(1), (0, 1), zp.ONE, var)

    @classmethod
    def poly(cls, coeffs, var="q") -> QRat:
        c, n = _clear(coeffs)
        return cls._raw(c, n, zp.ONE, var)

    @classmethod
    def monomial(cls, k: int, coeff=1, var="q") -> QRat:
        """coeff * q**k for any integer k."""
        coeff = _frac(coeff)
        if k >= 0:
            return cls._raw(coeff, zp.shift(zp.ONE, k), zp.ONE, var)
        return cls._raw(coeff, zp.ONE, zp.shift(zp.ONE, -k), var)

    @classmethod
    def sum(cls, terms, var="q") -> QRat:
        """Sum many terms over a common denominator with a single final gcd."""
        terms = [t for t in (_coerce(t, var) for t in terms) if t._c]
        if not terms:
            return cls._raw(0, zp.ZERO, zp.ONE, var)
        if len(terms) == 1:
            return terms[0]
        den = zp.ONE
        for t in terms:
            if t._d != den:
                g = zp.gcd(den, t._d)
                den = zp.mul(den, zp.divexact(t._d, g))
        scal = 1
        for t in terms:
            scal = _lcm(scal, t._c.denominator)
        acc = {}
        for t in terms:
            k = t._c.numerator * (scal // t._c.denominator)
            cof = t._n if t._d == den else zp.mul(t._n, zp.divexact(den, t._d))
            for i, v in enumerate(cof):
                acc[i] = acc.get(i, 0) + k * v
        top = max(acc) if acc else -1
        num = zp.trim(acc.get(i, 0) for i in range(top + 1))
        return cls._make(Fraction(1, scal), num, den, var)

    # views -------------------------------------------------------------
    @property
    def var(self) -> str:
        return self._var

    @property
    def num(self) -> QPoly:
        lc = self._d[-1]
        return QPoly._from_ints(self._c / lc, self._n)

    @property
    def den(self) -> QPoly:
        lc = self._d[-1]
        return QPoly._from_ints(Fraction(1, lc), self._d)

    def is_zero(self) -> bool:
        return self._c == 0

    def is_polynomial(self) -> bool:
        return len(self._d) == 1

    def is_constant(self) -> bool:
        return len(self._d) == 1 and len(self._n) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        if not self._n:
            return Fraction(0)
        return self._c * self._n[0] / self._d[0]

    def degrees(self) -> tuple[int, int]:
        return len(self._n) - 1, len(self._d) - 1

    # arithmetic ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat.const(other, self._var)
        if not isinstance(other, QRat):
            return NotImplemented
        return (self._c, self._n, self._d, self._var) == (other._c, other._n, other._d, other._var)

    def __hash__(self):
        return hash((self._c, self._n, self._d, self._var))

    def __bool__(self):
        return self._c != 0

    def __neg__(self):
        return QRat._raw(-self._c, self._n, self._d, self._var)

    def __add__(self, other):
        other = _coerce(other, self._var)
        if other is NotImplemented:
            return NotImplemented
        _check_var(self, other)
        if not self._c:
            return other
        if not other._c:
            return self
        c1, c2 = self._c, other._c
        r1, r2 = c1.denominator, c2.denominator
        d1, d2 = self._d, other._d
        if d1 == d2:
            g, a, b = d1, zp.ONE, zp.ONE
        else:
            g = zp.gcd(d1, d2)
            a = zp.divexact(d1, g)
            b = zp.divexact(d2, g)
        m = zp.add(
            zp.scale(zp.mul(self._n, b), c1.numerator * r2),
            zp.scale(zp.mul(other._n, a), c2.numerator * r1),
        )
        if not m:
            return QRat._raw(0, zp.ZERO, zp.ONE, self._var)
        cm, m = zp.primitive(m)
        h = zp.gcd(m, g)
        if h != zp.ONE:
            m = zp.divexact(m, h)
            g = zp.divexact(g, h)
        d = zp.mul(zp.mul(g, a), b)
        return QRat._raw(Fraction(cm, r1 * r2), m, d, self._var)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self._var)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QRat._raw(self._c * other, self._n, self._d, self._var)
        if not isinstance(other, QRat):
            return NotImplemented
        _check_var(self, other)
        if not self._c or not other._c:
            return QRat._raw(0, zp.ZERO, zp.ONE, self._var)
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        g1 = zp.gcd(n1, d2) if len(d2) > 1 else zp.ONE
        g2 = zp.gcd(n2, d1) if len(d1) > 1 else zp.ONE
        if g1 != zp.ONE:
            n1, d2 = zp.divexact(n1, g1), zp.divexact(d2, g1)
        if g2 != zp.ONE:
            n2, d1 = zp.divexact(n2, g2), zp.divexact(d1, g2)
        return QRat._raw(self._c * other._c, zp.mul(n1, n2), zp.mul(d1, d2), self._var)

    __rmul__ = __mul__

    def inverse(self) -> QRat:
        if not self._c:
            raise PoleError("division by zero polynomial")
        return QRat._raw(1 / self._c, self._d, self._n, self._var)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise PoleError("division by zero polynomial")
            return QRat._raw(self._c / other, self._n, self._d, self._var)
        if not isinstance(other, QRat):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other, self._var) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return QRat.const(1, self._var)
        return QRat._raw(self._c**e, zp.pow_(self._n, e), zp.pow_(self._d, e), self._var)

    # substitutions ------------------------------------------------------
    def spread(self, d: int, var: str | None = None) -> QRat:
        """q -> q**d; coprimality and primitivity survive the substitution."""
        if d < 1:
            raise ValueError("power must be a positive integer")
        return QRat._raw(self._c, zp.spread(self._n, d), zp.spread(self._d, d), var or self._var)

    def relabel(self, var: str) -> QRat:
        return QRat._raw(self._c, self._n, self._d, var)

    # evaluation ----------------------------------------------------------
    def evaluate(self, q0):
        """Exact at a rational point, floating (complex) otherwise."""
        if not self._c:
            return Fraction(0) if isinstance(q0, (int, Fraction)) else 0j
        if isinstance(q0, (int, Fraction)):
            q0 = Fraction(q0)
            u, w = q0.numerator, q0.denominator
            nv = zp.evaluate_homogeneous(self._n, u, w)
            dv = zp.evaluate_homogeneous(self._d, u, w)
            if dv == 0:
                raise PoleError("pole")
            return self._c * Fraction(nv, dv) * Fraction(w) ** (len(self._d) - len(self._n))
        z = complex(q0)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            dv = _horner_c(self._d, z)
            if dv == 0:
                raise PoleError("pole")
            return float(self._c) * _horner_c(self._n, z) / dv
        # floats are binary rationals: evaluate exactly over Q(i), round once
        re_, im_ = Fraction(z.real), Fraction(z.imag)
        w = math.lcm(re_.denominator, im_.denominator)
        g = (int(re_ * w), int(im_ * w))
        nr, ni = _horner_gauss(self._n, g, w)
        dr, di = _horner_gauss(self._d, g, w)
        if dr == 0 and di == 0:
            raise PoleError("pole")
        norm = dr * dr + di * di
        scale = self._c * Fraction(w) ** (len(self._d) - len(self._n)) / norm
        return complex(scale * (nr * dr + ni * di), scale * (ni * dr - nr * di))

    def limit_at_one(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        ns = zp.taylor_shift_one(self._n)
        ds = zp.taylor_shift_one(self._d)
        vn, vd = zp.valuation_x(ns), zp.valuation_x(ds)
        if vn < vd:
            raise DivergentLimitError("divergent at q=1")
        if vn > vd:
            return Fraction(0)
        return self._c * Fraction(ns[vn], ds[vd])

    def __repr__(self):
        return f"QRat({self})"

    def __str__(self):
        c, v = self._c, self._var
        if not c:
            return "0"
        a, b = c.numerator, c.denominator
        nstr = _poly_str(self._n, v)
        multi_n = sum(1 for x in self._n if x) > 1
        if len(self._n) == 1:
            top = str(a * self._n[0])
        elif a == 1:
            top = f"({nstr})" if multi_n and len(self._d) > 1 else nstr
        elif a == -1:
            top = f"-({nstr})" if multi_n else f"-{nstr}"
        else:
            top = f"{a}*({nstr})" if multi_n else f"{a}*{nstr}"
        if len(self._d) == 1:
            b *= self._d[0]
            return top if b == 1 else f"{_paren(top)}/{b}"
        dstr = _poly_str(self._d, v)
        multi_d = sum(1 for x in self._d if x) > 1
        if b == 1:
            bot = f"({dstr})" if multi_d else dstr
        else:
            bot = f"({b}*({dstr}))" if multi_d else f"({b}*{dstr})"
        return f"{top}/{bot}"

    def to_json(self) -> dict:
        return {
            "num": [str(x) for x in self.num.coeffs],
            "den": [str(x) for x in self.den.coeffs],
        }


def _paren(s: str) -> str:
    return s if s.lstrip("-").isdigit() or s.startswith("(") else f"({s})"


def _horner_gauss(a, g, w):
    """w^deg(a) * a(g/w) for a Gaussian integer g = (re, im), as an integer pair."""
    gr, gi = g
    ar = ai = 0
    wk = 1
    for c in reversed(a):
        ar, ai = ar * gr - ai * gi + c * wk, ar * gi + ai * gr
        wk *= w
    return ar, ai


def _horner_c(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _as_coeffs(x):
    if isinstance(x, QPoly):
        return x.coeffs
    if isinstance(x, (int, Fraction, str)):
        return (x,)
    return tuple(x)


def _coerce(x, var="q"):
    if isinstance(x, QRat):
        return x
    if isinstance(x, (int, Fraction)):
        return QRat.const(x, var)
    return NotImplemented


Q = QRat.gen()


@lru_cache(maxsize=None)
def _gregory(order: int) -> tuple[Fraction, ...]:
    """Series coefficients of h / log(1 + h) up to h**order."""
    inner = [Fraction((-1) ** k, k + 1) for k in range(order + 1)]
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(-sum(inner[i] * out[k - i] for i in range(1, k + 1)))
    return tuple(out)


class LExt:
    """plain + logpart * L over Q(q), where L = (q-1)/log q.

    Only module operations are allowed: a product of two elements that both
    carry an L-part would need L**2 and is rejected.
    """

    __slots__ = ("plain", "logpart")

    def __init__(self, plain=0, logpart=0):
        self.plain = plain if isinstance(plain, QRat) else QRat.const(plain)
        self.logpart = logpart if isinstance(logpart, QRat) else QRat.const(logpart)

    @classmethod
    def lift(cls, x) -> LExt:
        if isinstance(x, LExt):
            return x
        return cls(x, 0)

    def has_log(self) -> bool:
        return not self.logpart.is_zero()

    def is_zero(self) -> bool:
        return self.plain.is_zero() and self.logpart.is_zero()

    def __eq__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            other = LExt.lift(other)
        if not isinstance(other, LExt):
            return NotImplemented
        return self.plain == other.plain and self.logpart == other.logpart

    def __hash__(self):
        return hash((self.plain, self.logpart))

    def __add__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            other = LExt.lift(other)
        if not isinstance(other, LExt):
            return NotImplemented
        return LExt(self.plain + other.plain, self.logpart + other.logpart)

    __radd__ = __add__

    def __neg__(self):
        return LExt(-self.plain, -self.logpart)

    def __sub__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            other = LExt.lift(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LExt):
            if self.has_log() and other.has_log():
                raise TypeError("product of two L-bearing elements is outside the L-module")
            if other.has_log():
                return other * self.plain
            other = other.plain
        if not isinstance(other, (QRat, int, Fraction)):
            return NotImplemented
        return LExt(self.plain * other, self.logpart * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LExt):
            if other.has_log():
                raise TypeError("division by an L-bearing element is outside the L-module")
            other = other.plain
        return LExt(self.plain / other, self.logpart / other)

    def spread(self, d: int) -> LExt:
        # L(q^d) = (q^d - 1)/(d log q) is not a QRat multiple of L(q) in general;
        # only the L-free part can be base-changed.
        if self.has_log():
            raise ValueError("base change of the L-part is not supported")
        return LExt(self.plain.spread(d), 0)

    def evaluate(self, q0):
        base = self.plain.evaluate(q0)
        if not self.has_log():
            return base
        lv = _L_value(q0)
        return base + self.logpart.evaluate(q0) * lv

    def limit_at_one(self) -> Fraction:
        if not self.has_log():
            return self.plain.limit_at_one()
        a, b = self.plain, self.logpart
        if a.is_zero():
            a_n, a_d, a_c = zp.ZERO, zp.ONE, Fraction(0)
        else:
            a_n, a_d, a_c = a._n, a._d, a._c
        den = zp.taylor_shift_one(zp.mul(a_d, b._d))
        v = zp.valuation_x(den)
        p1 = zp.taylor_shift_one(zp.mul(a_n, b._d))
        p2 = zp.taylor_shift_one(zp.mul(b._n, a_d))
        g = _gregory(v)
        numer = []
        for k in range(v + 1):
            s = a_c * (p1[k] if k < len(p1) else 0)
            s += b._c * sum((p2[i] if i < len(p2) else 0) * g[k - i] for i in range(k + 1))
            numer.append(s)
        if any(numer[:v]):
            raise DivergentLimitError("divergent at q=1")
        return numer[v] / den[v]

    def __repr__(self):
        return f"LExt({self})"

    def __str__(self):
        if not self.has_log():
            return str(self.plain)
        lp = str(self.logpart)
        lterm = "L" if lp == "1" else f"-L" if lp == "-1" else f"({lp})*L"
        if self.plain.is_zero():
            return lterm
        return f"{self.plain} + {lterm}"

    def to_json(self) -> dict:
        out = self.plain.to_json()
        out["logpart"] = self.logpart.to_json()
        return out


def _L_value(q0):
    if isinstance(q0, (int, Fraction)):
        if q0 == 1:
            return 1.0
        if q0 <= 0:
            raise ValueError("L needs q > 0 at a real point (principal log)")
        return float(q0 - 1) / math.log(q0)
    z = complex(q0)
    if z == 1:
        return 1.0
    if z == 0:
        raise PoleError("pole")
    return (z - 1) / cmath.log(z)


L = LExt(0, 1)


# cyclotomic -----------------------------------------------------------------

def euler_phi(m: int) -> int:
    out, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1
    if n > 1:
        out -= out // n
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, ascending."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = (-1,) + (0,) * (m - 1) + (1,)
    for d in range(1, m):
        if m % d == 0:
            poly = zp.divexact(poly, cyclotomic_poly(d))
    return poly


@lru_cache(maxsize=None)
def _root_power_vector(m: int, t: int) -> tuple[int, ...]:
    """zeta_m ** t reduced modulo the cyclotomic polynomial, as an int vector."""
    phi = cyclotomic_poly(m)
    k = len(phi) - 1
    vec = [0] * max(t + 1, k)
    vec[t % m] = 1
    return tuple(_reduce_int(vec, phi)[:k])


def _reduce_int(vec, phi):
    vec = list(vec)
    k = len(phi) - 1
    for i in range(len(vec) - 1, k - 1, -1):
        c = vec[i]
        if c:
            for j in range(k + 1):
                vec[i - k + j] -= c * phi[j]
    return vec + [0] * max(0, k - len(vec))


class CycloElem:
    """Vector over Q(q) in the power basis 1, z, ..., z^(phi(m)-1) of Q(zeta_m)."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords):
        k = euler_phi(order)
        coords = [c if isinstance(c, QRat) else QRat.const(c) for c in coords]
        if len(coords) > k:
            coords = _reduce_q(coords, cyclotomic_poly(order))
        coords += [QRat.const(0)] * (k - len(coords))
        self.order = order
        self.coords = tuple(coords)

    @classmethod
    def root_power(cls, m: int, t: int) -> CycloElem:
        return cls(m, [QRat.const(c) for c in _root_power_vector(m, t % m)])

    @classmethod
    def zero(cls, m: int) -> CycloElem:
        return cls(m, [])

    @classmethod
    def scalar(cls, m: int, value) -> CycloElem:
        return cls(m, [value])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def is_rational(self) -> bool:
        return all(c.is_zero() for c in self.coords[1:])

    def __eq__(self, other):
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.order == other.order and self.coords == other.coords

    def __hash__(self):
        return hash((self.order, self.coords))

    def _check(self, other):
        if self.order != other.order:
            raise ValueError(f"mismatched cyclotomic orders {self.order} and {other.order}")

    def __add__(self, other):
        self._check(other)
        return CycloElem(self.order, [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return CycloElem(self.order, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QRat, int, Fraction)):
            return CycloElem(self.order, [a * other for a in self.coords])
        if not isinstance(other, CycloElem):
            return NotImplemented
        self._check(other)
        k = len(self.coords)
        prod = [[] for _ in range(2 * k - 1)]
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if not b.is_zero():
                    prod[i + j].append(a * b)
        return CycloElem(self.order, [QRat.sum(t) for t in prod])

    __rmul__ = __mul__

    def conjugate(self) -> CycloElem:
        """Image under zeta -> zeta**-1."""
        m = self.order
        acc = [[] for _ in self.coords]
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, v in enumerate(_root_power_vector(m, (-i) % m)):
                if v:
                    acc[j].append(a * v)
        return CycloElem(m, [QRat.sum(t) for t in acc])

    def embed(self, q0) -> complex:
        """Numeric value with zeta = exp(2 pi i / m) and q = q0."""
        z = cmath.exp(2j * math.pi / self.order)
        return sum(complex(c.evaluate(q0)) * z**i for i, c in enumerate(self.coords) if not c.is_zero())

    def __repr__(self):
        parts = [f"({c})*z^{i}" for i, c in enumerate(self.coords) if not c.is_zero()]
        return f"CycloElem[{self.order}](" + (" + ".join(parts) or "0") + ")"

    def to_json(self) -> dict:
        return {"order": self.order, "coords": [c.to_json() for c in self.coords]}


def _reduce_q(coords, phi):
    vec = list(coords)
    k = len(phi) - 1
    for i in range(len(vec) - 1, k - 1, -1):
        c = vec[i]
        if not c.is_zero():
            for j in range(k):
                vec[i - k + j] = vec[i - k + j] - c * phi[j]
    return vec[:k]


# functional surface ------------------------------------------------------------

def qrat_normalize(num, den) -> QRat:
    return QRat(num, den)


def qrat_arith(a: QRat, b: QRat, op: str) -> QRat:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def subst_power(a, d: int):
    """q -> q**d, a ring homomorphism on Q(q) (QRat or L-free LExt)."""
    return a.spread(d)


def subst_root(a: QRat, d: int, var: str = "Q") -> QRat:
    """Rewrite q as Q**d; the result lives in Q(Q)."""
    return a.spread(d, var)


def eval_at(a, q0):
    return a.evaluate(q0)


def limit_q_to_1(a) -> Fraction:
    if isinstance(a, (int, Fraction)):
        return Fraction(a)
    return a.limit_at_one()


def cyclo_arith(a: CycloElem, b: CycloElem, op: str) -> CycloElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyclo_scale(a: CycloElem, s) -> CycloElem:
    return a * s


# JSON -------------------------------------------------------------------------

def to_json(x):
    if isinstance(x, (QRat, LExt, CycloElem)):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    raise TypeError(f"no JSON form for {type(x).__name__}")


def qrat_from_json(obj) -> QRat:
    return QRat([Fraction(s) for s in obj["num"]], [Fraction(s) for s in obj["den"]])


def lext_from_json(obj) -> LExt:
    log = obj.get("logpart")
    return LExt(qrat_from_json(obj), qrat_from_json(log) if log else 0)


def cyclo_from_json(obj) -> CycloElem:
    return CycloElem(int(obj["order"]), [qrat_from_json(c) for c in obj["coords"]])
