"""Dense univariate polynomials over Z, stored as tuples in ascending degree.

The zero polynomial is ``()``; otherwise the last entry is nonzero.  This is
the workhorse underneath the rational-function field: keeping numerators and
denominators as primitive integer polynomials lets every gcd run through
Python's native big-integer arithmetic (heuristic gcd, Kronecker
substitution) instead of through Fraction objects.
"""

from __future__ import annotations

from math import gcd as igcd
from math import isqrt

ZERO: tuple[int, ...] = ()
ONE: tuple[int, ...] = (1,)

_SCHOOLBOOK = 24


def trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(a) -> int:
    return len(a) - 1


def maxnorm(a) -> int:
    return max((abs(c) for c in a), default=0)


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def neg(a):
    return tuple(-c for c in a)


def sub(a, b):
    return add(a, neg(b))


def scale(a, k: int):
    if k == 0:
        return ZERO
    return tuple(k * c for c in a)


def shift(a, k: int):
    """Multiply by x**k."""
    if not a:
        return ZERO
    return (0,) * k + tuple(a)


def _pack(a, k: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc << k) + c
    return acc


def _unpack(v: int, k: int, length: int | None = None) -> list[int]:
    base = 1 << k
    half = base >> 1
    mask = base - 1
    out = []
    while v:
        d = v & mask
        if d >= half:
            d -= base
        out.append(d)
        v = (v - d) >> k
    if length is not None and len(out) > length:
        return None
    return out


def _mul_school(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def mul(a, b):
    if not a or not b:
        return ZERO
    if min(len(a), len(b)) < _SCHOOLBOOK:
        return tuple(_mul_school(a, b))
    # Kronecker substitution: slots wide enough for any product coefficient
    bound = maxnorm(a) * maxnorm(b) * min(len(a), len(b))
    k = bound.bit_length() + 2
    prod = _unpack(_pack(a, k) * _pack(b, k), k)
    return trim(prod)


def _divexact_long(a, b):
    if not a:
        return ZERO
    n, m = len(a), len(b)
    if m > n:
        return None
    r = list(a)
    quo = [0] * (n - m + 1)
    lb = b[-1]
    for i in range(n - m, -1, -1):
        c, rem = divmod(r[i + m - 1], lb)
        if rem:
            return None
        quo[i] = c
        if c:
            for j in range(m):
                r[i + j] -= c * b[j]
    if any(r[: m - 1]):
        return None
    return tuple(quo)


def divexact(a, b):
    """Return a/b if b divides a in Z[x], else None."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return ZERO
    if len(b) > len(a):
        return None
    if len(b) == 1:
        lb = b[0]
        if any(c % lb for c in a):
            return None
        return tuple(c // lb for c in a)
    if a[-1] % b[-1] or (b[0] and a[0] % b[0]):
        return None
    if len(b) < _SCHOOLBOOK or len(a) - len(b) < _SCHOOLBOOK:
        return _divexact_long(a, b)
    # guess through big-integer division, then confirm by multiplying back
    k = maxnorm(a).bit_length() + maxnorm(b).bit_length() + 2 * len(a).bit_length() + 16
    qa, ra = divmod(_pack(a, k), _pack(b, k))
    if ra == 0:
        cand = _unpack(qa, k, len(a) - len(b) + 1)
        if cand is not None:
            cand = trim(cand)
            if mul(cand, b) == a:
                return cand
    return _divexact_long(a, b)


def prem(a, b):
    """Pseudo-remainder of a by b."""
    r = list(a)
    m = len(b)
    lb = b[-1]
    while len(r) >= m and r:
        c = r[-1]
        off = len(r) - m
        r = [lb * x for x in r]
        for j in range(m):
            r[off + j] -= c * b[j]
        r = list(trim(r))
    return tuple(r)


def content(a) -> int:
    g = 0
    for c in a:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Split a into (signed content, primitive part with positive leading coefficient)."""
    if not a:
        return 0, ZERO
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return 1, tuple(a)
    return g, tuple(c // g for c in a)


def evaluate(a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def evaluate_homogeneous(a, u: int, w: int) -> int:
    """Return w**deg(a) * a(u/w) as an integer."""
    acc = 0
    wp = 1
    for c in reversed(a):
        acc = acc * u + c * wp
        wp *= w
    return acc


def _interpolate(h: int, xi: int):
    half = xi // 2
    out = []
    while h:
        d = h % xi
        if d > half:
            d -= xi
        out.append(d)
        h = (h - d) // xi
    return tuple(out)


def _gcd_prs(a, b):
    while b:
        r = prem(a, b)
        a, b = b, primitive(r)[1]
    return primitive(a)[1]


def gcd(a, b):
    """Primitive gcd with positive leading coefficient; gcd(0, 0) = 0."""
    if not a:
        return primitive(b)[1]
    if not b:
        return primitive(a)[1]
    ca, a = primitive(a)
    cb, b = primitive(b)
    if len(a) == 1 or len(b) == 1:
        return ONE
    # common power of x
    za = next(i for i, c in enumerate(a) if c)
    zb = next(i for i, c in enumerate(b) if c)
    z = min(za, zb)
    if za or zb:
        a, b = a[za:], b[zb:]
        if len(a) == 1 or len(b) == 1:
            return shift(ONE, z)
    # heuristic gcd; xi >= 2*min(|a|,|b|) + 2 makes a dividing candidate correct
    xi = 2 * min(maxnorm(a), maxnorm(b)) + 2
    for _ in range(8):
        va, vb = evaluate(a, xi), evaluate(b, xi)
        if va and vb:
            h = _interpolate(igcd(va, vb), xi)
            h = primitive(h)[1]
            if h and divexact(a, h) is not None and divexact(b, h) is not None:
                return shift(h, z)
        xi = xi * 73794 * isqrt(isqrt(xi)) // 27011 + 1
    return shift(_gcd_prs(a, b), z)


def spread(a, d: int):
    """Substitute x -> x**d."""
    if d == 1 or not a:
        return tuple(a)
    out = [0] * ((len(a) - 1) * d + 1)
    for i, c in enumerate(a):
        out[i * d] = c
    return tuple(out)


def taylor_shift_one(a):
    """Coefficients of a(1 + h) in powers of h."""
    c = list(a)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return tuple(c)


def valuation_x(a) -> int:
    """Order of vanishing at x = 0 (a must be nonzero)."""
    return next(i for i, c in enumerate(a) if c)


def pow_(a, e: int):
    out = ONE
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out
