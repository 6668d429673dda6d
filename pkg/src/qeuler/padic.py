"""Truncated p-adic numbers and finite-level Riemann sums for I_q and I_{-q}.

A nonzero :class:`PadicNum` is p^v * u with u a unit known modulo p^prec
(relative precision).  A zero carries ``prec`` as the absolute precision to
which it is known to vanish, so the difference of two nearly equal sums
still reports how far the agreement reaches.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .exactq import LExt, QRat
from .identities import ORACLE, integral_exact
from .sequences import Family

__all__ = [
    "PadicNum",
    "padic_arith",
    "padic_pow",
    "padic_log",
    "padic_eval",
    "RiemannSumConfig",
    "riemann_sum",
    "ProfileRow",
    "convergence_profile",
    "FAMILY_INTEGRANDS",
]

INF = math.inf


def _val(n: int, p: int) -> int:
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicNum:
    __slots__ = ("p", "v", "u", "prec")

    def __init__(self, p: int, v, u: int, prec: int):
        self.p = p
        self.v = v
        self.u = u
        self.prec = prec

    @classmethod
    def zero(cls, p: int, absprec) -> PadicNum:
        return cls(p, INF, 0, absprec)

    @classmethod
    def from_rational(cls, x, p: int, prec: int) -> PadicNum:
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, INF)
        vn, vd = _val(x.numerator, p), _val(x.denominator, p)
        un = x.numerator // p**vn
        ud = x.denominator // p**vd
        mod = p**prec
        return cls(p, vn - vd, un * pow(ud, -1, mod) % mod, prec)

    @classmethod
    def from_residue(cls, r: int, p: int, absprec: int) -> PadicNum:
        """The integer r known modulo p^absprec."""
        r %= p**absprec
        if r == 0:
            return cls.zero(p, absprec)
        v = _val(r, p)
        prec = absprec - v
        return cls(p, v, (r // p**v) % p**prec, prec)

    def is_zero(self) -> bool:
        return self.v == INF

    @property
    def abs_prec(self):
        return self.prec if self.is_zero() else self.v + self.prec

    def valuation(self):
        return self.v

    def residue(self, absprec: int | None = None) -> int:
        """Integer representative modulo p^absprec (needs v >= 0)."""
        absprec = self.abs_prec if absprec is None else absprec
        if self.is_zero():
            return 0
        if self.v < 0:
            raise ValueError("negative valuation has no integer residue")
        return self.u * self.p**self.v % self.p**absprec

    def truncate(self, prec: int) -> PadicNum:
        if self.is_zero() or prec >= self.prec:
            return self
        return PadicNum(self.p, self.v, self.u % self.p**prec, prec)

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mismatched primes")

    def _coerce(self, other):
        if isinstance(other, PadicNum):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            # exact operand: never the precision bottleneck
            A = self.abs_prec if self.abs_prec != INF else 64
            vx = _val(Fraction(other).numerator, self.p) - _val(Fraction(other).denominator, self.p)
            rel = self.prec if self.prec != INF else 64
            prec = max(1, rel, (A - vx) if vx != INF else 1)
            return PadicNum.from_rational(other, self.p, prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        A = min(self.abs_prec, other.abs_prec)
        if self.is_zero() and other.is_zero():
            return PadicNum.zero(p, A)
        if self.is_zero():
            return other._cap(A)
        if other.is_zero():
            return self._cap(A)
        v = min(self.v, other.v)
        width = A - v
        if width <= 0:
            return PadicNum.zero(p, A)
        mod = p**width
        s = (self.u * p ** (self.v - v) + other.u * p ** (other.v - v)) % mod
        if s == 0:
            return PadicNum.zero(p, A)
        w = _val(s, p)
        prec = width - w
        return PadicNum(p, v + w, (s // p**w) % p**prec, prec)

    __radd__ = __add__

    def _cap(self, absprec):
        if self.abs_prec <= absprec:
            return self
        if absprec <= self.v:
            return PadicNum.zero(self.p, absprec)
        return self.truncate(absprec - self.v)

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicNum(self.p, self.v, (-self.u) % self.p**self.prec, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        if self.is_zero() or other.is_zero():
            if self.is_zero() and other.is_zero():
                return PadicNum.zero(p, self.prec + other.prec)
            z, x = (self, other) if self.is_zero() else (other, self)
            return PadicNum.zero(p, z.prec + x.v)
        prec = min(self.prec, other.prec)
        return PadicNum(p, self.v + other.v, self.u * other.u % p**prec, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("p-adic division by zero")
        p = self.p
        if self.is_zero():
            return PadicNum.zero(p, self.prec - other.v)
        prec = min(self.prec, other.prec)
        mod = p**prec
        return PadicNum(p, self.v - other.v, self.u * pow(other.u, -1, mod) % mod, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        return padic_pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, PadicNum):
            return NotImplemented
        return (self.p, self.v, self.u, self.prec) == (other.p, other.v, other.u, other.prec)

    def __hash__(self):
        return hash((self.p, self.v, self.u, self.prec))

    def agrees_with(self, other) -> bool:
        """Equal on all digits both operands know."""
        return (self - other).is_zero()

    def __repr__(self):
        if self.is_zero():
            return f"PadicNum(0 + O({self.p}^{self.prec}))"
        return f"PadicNum({self.p}^{self.v} * {self.u} + O({self.p}^{self.abs_prec}))"


def padic_arith(a: PadicNum, b: PadicNum, op: str) -> PadicNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def padic_pow(a: PadicNum, e: int) -> PadicNum:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    out = PadicNum(a.p, 0, 1, a.prec if not a.is_zero() else INF)
    if e == 0:
        return out
    base = a
    while e:
        if e & 1:
            out = out * base
        e >>= 1
        if e:
            base = base * base
    return out


def padic_log(a: PadicNum) -> PadicNum:
    """Iwasawa-free log on 1 + pZ_p by the series sum (-1)^(k+1) y^k / k, y = a - 1."""
    p = a.p
    if a.is_zero() or a.v != 0 or a.u % p != 1:
        raise ValueError("p-adic log needs a = 1 mod p")
    y = a - 1
    if y.is_zero():
        return PadicNum.zero(p, y.prec)
    target = y.abs_prec
    acc = PadicNum.zero(p, INF)
    power = y
    k = 1
    # k*v - log_p(k) increases in k and bounds the valuation of every later term
    while k * y.v - math.log(k, p) < target:
        term = power / k
        acc = acc + (term if k % 2 else -term)
        k += 1
        power = power * y
    return acc._cap(target)


def padic_eval(x, q, p: int, prec: int) -> PadicNum:
    """Value of a QRat/LExt at a p-adic q (rational q evaluates exactly first)."""
    x = LExt.lift(x)
    if isinstance(q, (int, Fraction)):
        out = PadicNum.from_rational(x.plain.evaluate(Fraction(q)), p, prec)
        if x.has_log():
            qp = PadicNum.from_rational(q, p, prec + 4)
            lval = (qp - 1) / padic_log(qp)
            out = out + PadicNum.from_rational(x.logpart.evaluate(Fraction(q)), p, prec) * lval
        return out
    out = _horner_padic(x.plain, q)
    if x.has_log():
        out = out + _horner_padic(x.logpart, q) * ((q - 1) / padic_log(q))
    return out


def _horner_padic(r: QRat, q: PadicNum) -> PadicNum:
    def ev(poly):
        acc = PadicNum.zero(q.p, INF)
        for c in reversed(poly.coeffs):
            acc = acc * q + PadicNum.from_rational(c, q.p, q.prec)
        return acc

    return ev(r.num) / ev(r.den)


# Riemann sums ---------------------------------------------------------------------------

# family -> (measure, weight exponent of q^(wx) in front of [x]_q^n)
FAMILY_INTEGRANDS = {
    Family.CARLITZ_BERNOULLI: ("bosonic", 0),
    Family.MODIFIED_BERNOULLI: ("bosonic", -1),
    Family.KIM_EULER: ("fermionic", 0),
    Family.MODIFIED_EULER: ("fermionic", -1),
}


@dataclass(frozen=True)
class RiemannSumConfig:
    """Level-N sum for f(x) = q^(jx) (monomial=j) or f(x) = q^(wx) [x]_q^n."""

    p: int
    q: object
    N: int
    M: int = 30
    kind: str = "fermionic"
    weight: int = 0
    power: int = 0
    monomial: int | None = None
    budget: int = 10**6

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or any(self.p % r == 0 for r in range(3, math.isqrt(self.p) + 1, 2)):
            raise ValueError("p must be an odd prime")
        if self.kind not in ("bosonic", "fermionic"):
            raise ValueError("kind must be 'bosonic' or 'fermionic'")
        if self.N < 0 or self.p**self.N > self.budget:
            raise ValueError(f"level {self.N} exceeds the work budget p^N <= {self.budget}")
        if self.power < 0:
            raise ValueError("power must be nonnegative")
        if _q_residue(self.q, self.p, 1) % self.p != 1:
            raise ValueError("q must be congruent to 1 mod p")

    @classmethod
    def for_family(cls, family, n: int, **kw) -> RiemannSumConfig:
        kind, w = FAMILY_INTEGRANDS[Family.parse(family)]
        return cls(kind=kind, weight=w, power=n, **kw)

    @property
    def working_prec(self) -> int:
        return self.M + 2 * self.N + 4

    def exact(self) -> LExt:
        if self.monomial is not None:
            return ORACLE(self.kind, self.monomial)
        return integral_exact(self.kind, self.weight, self.power)


def _q_residue(q, p: int, absprec: int) -> int:
    mod = p**absprec
    if isinstance(q, PadicNum):
        if q.abs_prec < absprec:
            raise ValueError(f"q is only known to {q.abs_prec} digits")
        return q.residue(absprec)
    q = Fraction(q)
    if _val(q.denominator, p):
        raise ValueError("q must be a p-adic integer")
    return q.numerator * pow(q.denominator, -1, mod) % mod


def _qint_mod(qr: int, s: int, mod: int) -> int:
    """[s]_q mod `mod` for an integer representative qr of q."""
    if qr == 1:
        return s % mod
    big = mod * (qr - 1)
    return (pow(qr, s, big) - 1) // (qr - 1) % mod


def _partial_sum(args) -> int:
    qr, mod, start, stop, kind, weight, power, monomial = args
    sgn = -1 if kind == "fermionic" else 1
    if monomial is not None:
        ratio = sgn * pow(qr, monomial + 1, mod) % mod
        cur = pow(ratio, start, mod)
        acc = 0
        for _ in range(start, stop):
            acc += cur
            cur = cur * ratio % mod
        return acc % mod
    ratio = sgn * pow(qr, weight + 1, mod) % mod
    cur = pow(ratio, start, mod)
    qx = pow(qr, start, mod)
    qint = _qint_mod(qr, start, mod)
    acc = 0
    for _ in range(start, stop):
        acc += cur * pow(qint, power, mod)
        cur = cur * ratio % mod
        qint = (qint + qx) % mod
        qx = qx * qr % mod
    return acc % mod


def riemann_sum(config: RiemannSumConfig, partitions: int = 1, jobs: int = 1) -> PadicNum:
    """(1/[p^N]_{+-q}) sum_{x<p^N} f(x) (+-q)^x, to the configured precision.

    Splitting the x-range into ``partitions`` chunks does not change the result.
    """
    p, N = config.p, config.N
    K = config.working_prec
    mod = p**K
    qr = _q_residue(config.q, p, K)
    total = p**N
    edges = [total * i // partitions for i in range(partitions + 1)]
    tasks = [
        (qr, mod, edges[i], edges[i + 1], config.kind, config.weight, config.power, config.monomial)
        for i in range(partitions)
    ]
    if jobs > 1 and partitions > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_partial_sum, tasks))
    else:
        parts = [_partial_sum(t) for t in tasks]
    s = PadicNum.from_residue(sum(parts), p, K)
    if config.kind == "bosonic":
        norm = _qint_mod(qr, total, mod)
    else:
        # [p^N]_{-q} = (1 + q^(p^N))/(1 + q), a unit for odd p
        norm = (1 + pow(qr, total, mod)) * pow(1 + qr, -1, mod) % mod
    out = s / PadicNum.from_residue(norm, p, K)
    return out._cap(out.abs_prec if out.is_zero() else out.v + config.M)


@dataclass
class ProfileRow:
    N: int
    pN: int
    valuation: float
    exhausted: bool
    seconds: float

    def valuation_text(self) -> str:
        return f">={int(self.valuation)}" if self.exhausted else str(int(self.valuation))


@dataclass
class Profile:
    config: RiemannSumConfig
    rows: list = field(default_factory=list)

    @property
    def valuations(self) -> list:
        return [r.valuation for r in self.rows]

    @property
    def nondecreasing(self) -> bool:
        v = self.valuations
        return all(a <= b for a, b in zip(v, v[1:]))

    @property
    def offset(self) -> float:
        """Smallest c with valuation >= N - c on every row."""
        return max(r.N - r.valuation for r in self.rows)


def convergence_profile(config: RiemannSumConfig, levels, partitions: int = 1, jobs: int = 1) -> Profile:
    """Valuation of S_N - exact for each level N (exact value evaluated p-adically)."""
    prof = Profile(config)
    target_cache = {}
    for N in levels:
        cfg = replace(config, N=N)
        t0 = time.perf_counter()
        s = riemann_sum(cfg, partitions, jobs)
        secs = time.perf_counter() - t0
        K = cfg.working_prec
        if K not in target_cache:
            target_cache[K] = padic_eval(cfg.exact(), cfg.q, cfg.p, K)
        diff = s - target_cache[K]
        if diff.is_zero():
            prof.rows.append(ProfileRow(N, cfg.p**N, diff.prec, True, secs))
        else:
            prof.rows.append(ProfileRow(N, cfg.p**N, diff.v, False, secs))
    return prof
