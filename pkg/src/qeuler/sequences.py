"""The q-Euler and q-Bernoulli number families.

Every family is available two ways: by solving its umbral recurrence for the
top index (memoized), and by an explicit finite sum.  The two routes share
nothing but the kernel arithmetic, so agreement between them is a real check.
"""

from __future__ import annotations

import threading
from enum import Enum
from fractions import Fraction
from math import comb

from .exactq import LExt, QRat, L

__all__ = [
    "Family",
    "q_int",
    "family_recurrence",
    "family_closed",
    "modified_euler_closed",
    "kim_euler_closed",
    "carlitz_bernoulli_closed",
    "modified_bernoulli_closed",
    "classical_euler",
    "number_table",
]


class Family(str, Enum):
    MODIFIED_EULER = "modified_euler"
    KIM_EULER = "kim_euler"
    CARLITZ_BERNOULLI = "carlitz_bernoulli"
    MODIFIED_BERNOULLI = "modified_bernoulli"
    CARLITZ_XI = "carlitz_xi"
    CLASSICAL_EULER = "classical_euler"

    @classmethod
    def parse(cls, name) -> Family:
        if isinstance(name, Family):
            return name
        return cls(str(name).strip().lower().replace("-", "_"))


Q_FAMILIES = (
    Family.MODIFIED_EULER,
    Family.KIM_EULER,
    Family.CARLITZ_BERNOULLI,
    Family.MODIFIED_BERNOULLI,
)

_q = QRat.gen()


def q_int(n: int, sign: str = "plus") -> QRat:
    """[n]_q (sign='plus') or [n]_{-q} (sign='minus')."""
    if sign == "plus":
        if n >= 0:
            return QRat.poly([1] * n)
        return (1 - QRat.monomial(n)) / (1 - _q)
    if sign == "minus":
        if n >= 0:
            return QRat.poly([(-1) ** i for i in range(n)])
        return (1 - QRat.monomial(n, -1 if n % 2 else 1)) / (1 + _q)
    raise ValueError(f"sign must be 'plus' or 'minus', not {sign!r}")


class _Memo:
    """Append-only table; readers only ever see fully computed prefixes."""

    def __init__(self, step):
        self._step = step
        self._values = []
        self._lock = threading.Lock()

    def __getitem__(self, n: int):
        if n < 0:
            raise ValueError("index must be nonnegative")
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            while len(values) <= n:
                values.append(self._step(len(values), values))
        return values[n]


def _umbral(n: int, prev, shift: int = 0) -> list:
    # sum_{j<n} C(n,j) q^(j+shift) a_j
    return [QRat.monomial(j + shift, comb(n, j)) * prev[j] for j in range(n)]


def _mod_euler_step(n, prev):
    if n == 0:
        return (1 + _q) / 2
    return -QRat.sum(_umbral(n, prev)) / (QRat.monomial(n) + 1)


def _kim_euler_step(n, prev):
    if n == 0:
        return QRat.const(1)
    return -QRat.sum(_umbral(n, prev, 1)) / (QRat.monomial(n + 1) + 1)


def _carlitz_beta_step(n, prev):
    if n == 0:
        return QRat.const(1)
    rhs = QRat.sum([1 if n == 1 else 0] + [-t for t in _umbral(n, prev, 1)])
    return rhs / (QRat.monomial(n + 1) - 1)


def _xi_step(n, prev):
    if n == 0:
        return QRat.const(1)
    rhs = QRat.sum([1 if n == 1 else 0] + [-t for t in _umbral(n, prev)])
    return rhs / (QRat.monomial(n) - 1)


def _mod_bernoulli_step(n, prev):
    if n == 0:
        return L
    plain = [QRat.const(1 if n == 1 else 0)]
    logs = []
    for j in range(n):
        w = QRat.monomial(j, comb(n, j))
        plain.append(-w * prev[j].plain)
        logs.append(-w * prev[j].logpart)
    lead = QRat.monomial(n) - 1
    return LExt(QRat.sum(plain) / lead, QRat.sum(logs) / lead)


def _classical_step(n, prev):
    if n == 0:
        return Fraction(1)
    return -sum(comb(n, j) * prev[j] for j in range(n)) / 2


_RECURRENCES = {
    Family.MODIFIED_EULER: _Memo(_mod_euler_step),
    Family.KIM_EULER: _Memo(_kim_euler_step),
    Family.CARLITZ_BERNOULLI: _Memo(_carlitz_beta_step),
    Family.MODIFIED_BERNOULLI: _Memo(_mod_bernoulli_step),
    Family.CARLITZ_XI: _Memo(_xi_step),
    Family.CLASSICAL_EULER: _Memo(_classical_step),
}


def family_recurrence(tag, n: int) -> LExt:
    """Value of family ``tag`` at index n from its defining recurrence."""
    tag = Family.parse(tag)
    v = _RECURRENCES[tag][n]
    if tag is Family.CLASSICAL_EULER:
        return LExt(QRat.const(v))
    return LExt.lift(v)


def _alternating_sum(n: int, term) -> QRat:
    return QRat.sum(term(l) * ((-1) ** l * comb(n, l)) for l in range(n + 1))


def modified_euler_closed(n: int) -> QRat:
    s = _alternating_sum(n, lambda l: 1 / (QRat.monomial(l) + 1))
    return s * (1 + _q) / (1 - _q) ** n


def kim_euler_closed(n: int) -> QRat:
    s = _alternating_sum(n, lambda l: 1 / (QRat.monomial(l + 1) + 1))
    return s * (1 + _q) / (1 - _q) ** n


def carlitz_bernoulli_closed(n: int) -> QRat:
    # (l+1)(1-q)/(1-q^(l+1)) = (l+1)/[l+1]_q
    s = _alternating_sum(n, lambda l: (l + 1) / q_int(l + 1))
    return s / (1 - _q) ** n


def modified_bernoulli_closed(n: int) -> LExt:
    # only the l = 0 term reaches the weight q^(-x) and contributes L
    plain = QRat.sum(comb(n, l) * (-1) ** l * l / q_int(l) for l in range(1, n + 1))
    scale = (1 - _q) ** n
    return LExt(plain / scale, 1 / scale)


_CLOSED = {
    Family.MODIFIED_EULER: modified_euler_closed,
    Family.KIM_EULER: kim_euler_closed,
    Family.CARLITZ_BERNOULLI: carlitz_bernoulli_closed,
    Family.MODIFIED_BERNOULLI: modified_bernoulli_closed,
}


def family_closed(tag, n: int) -> LExt:
    """Value from the explicit finite sum; not available for the Carlitz xi family."""
    tag = Family.parse(tag)
    if tag is Family.CLASSICAL_EULER:
        return LExt(QRat.const(classical_euler(n)))
    try:
        fn = _CLOSED[tag]
    except KeyError:
        raise ValueError(f"no closed form for {tag.value}") from None
    return LExt.lift(fn(n))


def classical_euler(n: int) -> Fraction:
    """E_n with 2/(e^t + 1) = sum E_n t^n/n!, so E_1 = -1/2."""
    return _RECURRENCES[Family.CLASSICAL_EULER][n]


def number_table(tag, n_max: int, method: str = "recurrence") -> list[LExt]:
    tag = Family.parse(tag)
    if method == "recurrence":
        return [family_recurrence(tag, n) for n in range(n_max + 1)]
    if method == "closed":
        return [family_closed(tag, n) for n in range(n_max + 1)]
    raise ValueError(f"unknown method {method!r}")
