"""Complex evaluation of the q-zeta function, the generating function and the l-series.

Termwise, sum_n (-1)^n [n+x]_q^(-s) does not converge for |q| < 1 because
[n+x]_q -> 1/(1-q).  Expanding [n+x]_q^(-s) = (1-q)^s (1 - q^(n+x))^(-s)
binomially and summing the alternating geometric series in n gives

    zeta_q(s, x) = [2]_q (1-q)^s sum_j r_j(s) q^(jx) / (1 + q^j),
    r_j(s) = (s)_j / j!,

where the j = 0 term takes the Abel value 1/2 of sum (-1)^n.  At s = -n the
r_j vanish past j = n and the sum is exactly the modified q-Euler polynomial.
Branches are principal throughout.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import comb

__all__ = [
    "ConvergenceError",
    "ZetaParams",
    "zeta_q",
    "gen_fn",
    "gen_fn_taylor",
    "taylor_from_samples",
    "l_series",
    "distribution_numeric",
    "BRANCH_NOTE",
]

BRANCH_NOTE = "principal branches for (1-q)^s, q^(jx) and [d]_q^(-s)"


class ConvergenceError(ArithmeticError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def _check_q(q: complex) -> None:
    if not 0 < abs(q) < 1:
        raise ValueError("need 0 < |q| < 1")
    if q.imag == 0 and q.real < 0:
        raise ValueError("q on the negative real axis has no principal q^x")


def _nonpositive_int(s: complex):
    if s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real):
        return int(-s.real)
    return None


def zeta_q(s, x, q, *, tolerance: float = 1e-15, max_terms: int = 1_000_000, log_q=None) -> complex:
    """Regularized q-zeta value zeta_q(s, x).

    ``log_q`` overrides the principal log of q (used after a base change
    q -> q^d so that (q^d)^(a/d) stays equal to q^a).
    """
    q, s, x = complex(q), complex(s), float(x)
    _check_q(q)
    lq = cmath.log(q) if log_q is None else complex(log_q)
    pref = (1 + q) * cmath.exp(s * cmath.log(1 - q))
    n = _nonpositive_int(s)
    if n is not None:
        acc = 0j
        for j in range(n + 1):
            acc += (-1) ** j * comb(n, j) * cmath.exp(j * x * lq) / (1 + cmath.exp(j * lq))
        return pref * acc
    if x <= 0:
        raise ValueError("series undefined at x=0")
    rho = math.exp(x * lq.real)
    qa = abs(q)
    sa = abs(s)
    acc = 0j
    r = 1 + 0j
    j = 0
    while True:
        acc += r * cmath.exp(j * x * lq) / (1 + cmath.exp(j * lq))
        r = r * (s + j) / (j + 1)
        j += 1
        # |r_{k+1}/r_k| <= max(1, (j+|s|)/(j+1)) and 1/|1+q^k| <= 1/(1-|q|^j) for k >= j
        ratio = rho * max(1.0, (j + sa) / (j + 1))
        if ratio < 1:
            tail = abs(r) * rho**j / (1 - qa**j) / (1 - ratio)
            if tail * abs(pref) < tolerance:
                return pref * acc
        if j >= max_terms:
            raise ConvergenceError(
                f"tolerance {tolerance} not reached within {max_terms} terms", pref * acc
            )


@dataclass(frozen=True)
class ZetaParams:
    q: complex
    x: float
    s: complex
    tolerance: float = 1e-15
    max_terms: int = 1_000_000

    def __post_init__(self):
        _check_q(complex(self.q))
        if self.x < 0:
            raise ValueError("x must be nonnegative")
        if self.x == 0 and _nonpositive_int(complex(self.s)) is None:
            raise ValueError("series undefined at x=0")

    def evaluate(self) -> complex:
        return zeta_q(self.s, self.x, self.q, tolerance=self.tolerance, max_terms=self.max_terms)


def gen_fn(t, x, q, truncation: int = 10_000) -> complex:
    """F_q(t, x) = [2]_q e^(t/(1-q)) sum_j (-t/(1-q))^j q^(jx) / (j! (1+q^j))."""
    q, t, x = complex(q), complex(t), float(x)
    _check_q(q)
    lq = cmath.log(q)
    u = -t / (1 - q)
    rho = math.exp(x * lq.real)
    acc = 0j
    mag = 1.0  # |u|^j / j!
    for j in range(truncation):
        acc += u**j / math.factorial(j) * cmath.exp(j * x * lq) / (1 + cmath.exp(j * lq))
        mag *= abs(u) / (j + 1)
        # later terms shrink by at most |u| rho/(j+2) <= 1/2 once j+2 > 2|u| rho
        if j + 2 > 2 * abs(u) * rho and mag * rho ** (j + 1) / (1 - abs(q) ** (j + 1)) * 2 < 1e-18 * max(abs(acc), 1e-300):
            return (1 + q) * cmath.exp(-u) * acc
    raise ConvergenceError("generating-function series did not settle", (1 + q) * cmath.exp(-u) * acc)


def gen_fn_taylor(n_max: int, x, q) -> list[complex]:
    """n! [t^n] F_q(t, x) for n <= n_max, by multiplying the two t-series."""
    q, x = complex(q), float(x)
    _check_q(q)
    lq = cmath.log(q)
    w = 1 / (1 - q)
    a = [w**i / math.factorial(i) for i in range(n_max + 1)]
    b = [
        (-w) ** j * cmath.exp(j * x * lq) / (math.factorial(j) * (1 + cmath.exp(j * lq)))
        for j in range(n_max + 1)
    ]
    return [
        (1 + q) * math.factorial(n) * sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(n_max + 1)
    ]


def taylor_from_samples(func, n_max: int, radius: float = 1.0, points: int = 64) -> list[complex]:
    """n! [t^n] func via the trapezoid rule on the circle |t| = radius."""
    samples = [func(radius * cmath.exp(2j * math.pi * k / points)) for k in range(points)]
    out = []
    for n in range(n_max + 1):
        c = sum(f * cmath.exp(-2j * math.pi * k * n / points) for k, f in enumerate(samples)) / points
        out.append(c / radius**n * math.factorial(n))
    return out


def l_series(chi, s, q, *, tolerance: float = 1e-15, max_terms: int = 1_000_000) -> complex:
    """l_q(s, chi) = [2]_q sum_{n>=1} chi(n)(-1)^n [n]_q^(-s), regularized.

    For modulus d > 1 the sum is split by residues:
    [d]_q^(-s) [2]_q/[2]_{q^d} sum_a chi(a)(-1)^a zeta_{q^d}(s, a/d).
    """
    q, s = complex(q), complex(s)
    _check_q(q)
    d = chi.modulus
    if d == 1:
        # n = m + 1 turns the sum into -zeta_q(s, 1)
        return -zeta_q(s, 1, q, tolerance=tolerance, max_terms=max_terms)
    lq = cmath.log(q)
    qd = cmath.exp(d * lq)
    qint_d = (1 - qd) / (1 - q)
    pref = cmath.exp(-s * cmath.log(qint_d)) * (1 + q) / (1 + qd)
    acc = 0j
    for a in range(1, d):
        c = chi.numeric(a)
        if c:
            acc += c * (-1) ** a * zeta_q(
                s, a / d, qd, tolerance=tolerance, max_terms=max_terms, log_q=d * lq
            )
    return pref * acc


def distribution_numeric(n: int, d: int, x, q) -> tuple[complex, complex]:
    """Both sides of the distribution relation at s = -n, through zeta_q."""
    q = complex(q)
    lq = cmath.log(q)
    qd = cmath.exp(d * lq)
    lhs = zeta_q(-n, x, q)
    pref = ((1 - qd) / (1 - q)) ** n * (1 + q) / (1 + qd)
    rhs = pref * sum((-1) ** a * zeta_q(-n, (x + a) / d, qd, log_q=d * lq) for a in range(d))
    return lhs, rhs
