"""Dirichlet characters of odd modulus and the generalized modified q-Euler numbers."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .exactq import CycloElem, QRat, euler_phi
from .identities import IdentityReport
from .polynomials import build_xpoly, eval_xpoly_at_fraction
from .sequences import Family, q_int

__all__ = [
    "DirichletCharacter",
    "GeneralizedNumber",
    "enumerate_characters",
    "get_character",
    "generalized_euler",
    "generalized_euler_oracle",
    "verify_char_decomp",
]

_q = QRat.gen()


def _factor(n: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root(p: int, e: int) -> int:
    mod = p**e
    phi = p ** (e - 1) * (p - 1)
    primes = [r for r, _ in _factor(phi)]
    for g in range(2, mod):
        if math.gcd(g, p) == 1 and all(pow(g, phi // r, mod) != 1 for r in primes):
            return g
    return 1  # only reached for mod = 1


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(a) = zeta_order ** exponents[a]; exponents[a] is None off the units."""

    modulus: int
    index: int
    order: int
    exponents: tuple

    def exponent(self, a: int):
        return self.exponents[a % self.modulus]

    def value(self, a: int) -> CycloElem:
        t = self.exponent(a)
        if t is None:
            return CycloElem.zero(self.order)
        return CycloElem.root_power(self.order, t)

    def numeric(self, a: int) -> complex:
        t = self.exponent(a)
        if t is None:
            return 0j
        return cmath.exp(2j * math.pi * t / self.order)

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def conductor(self) -> int:
        d = self.modulus
        for f in range(1, d + 1):
            if d % f == 0 and all(
                self.exponents[a] == 0 for a in range(d) if self.exponents[a] is not None and a % f == 1 % f
            ):
                return f
        return d

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def conjugate(self) -> DirichletCharacter:
        target = tuple(None if t is None else (-t) % self.order for t in self.exponents)
        for chi in enumerate_characters(self.modulus):
            if chi.order == self.order and chi.exponents == target:
                return chi
        raise RuntimeError("conjugate character missing from enumeration")

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "index": self.index,
            "order": self.order,
            "conductor": self.conductor,
            "primitive": self.is_primitive,
            "values": {str(a): self.value(a).to_json() for a in range(self.modulus)},
        }


@lru_cache(maxsize=None)
def enumerate_characters(d: int) -> tuple[DirichletCharacter, ...]:
    """All characters mod odd d; index 0 is the principal character.

    Index i encodes exponents (k_1, ..., k_r) in mixed radix over the cyclic
    factors (Z/p^e)^*, last prime fastest, with chi(g_p) = exp(2 pi i k_p / phi(p^e))
    for the least primitive root g_p mod p^e.
    """
    if d < 1 or d % 2 == 0:
        raise ValueError("characters are supported for odd modulus only")
    parts = []
    for p, e in _factor(d):
        mod = p**e
        phi = euler_phi(mod)
        g = _primitive_root(p, e)
        dlog = {}
        x = 1
        for k in range(phi):
            dlog[x] = k
            x = x * g % mod
        parts.append((mod, phi, dlog))
    radices = [phi for _, phi, _ in parts]
    total = math.prod(radices)
    out = []
    for index in range(total):
        ks, rest = [], index
        for r in reversed(radices):
            ks.append(rest % r)
            rest //= r
        ks.reverse()
        order = 1
        for k, phi in zip(ks, radices):
            order = math.lcm(order, phi // math.gcd(k, phi))
        exps = []
        for a in range(d):
            if math.gcd(a, d) != 1:
                exps.append(None)
                continue
            t = 0
            for k, (mod, phi, dlog) in zip(ks, parts):
                g = math.gcd(k, phi)
                t += (k // g) * dlog[a % mod] * (order // (phi // g))
            exps.append(t % order)
        out.append(DirichletCharacter(d, index, order, tuple(exps)))
    return tuple(out)


def get_character(modulus: int, index: int) -> DirichletCharacter:
    chars = enumerate_characters(modulus)
    if not 0 <= index < len(chars):
        raise ValueError(f"character index must be in [0, {len(chars)}) for modulus {modulus}")
    return chars[index]


@dataclass(frozen=True)
class GeneralizedNumber:
    n: int
    character: DirichletCharacter
    value: CycloElem

    def embed(self, q0) -> complex:
        return self.value.embed(q0)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "modulus": self.character.modulus,
            "index": self.character.index,
            "value": self.value.to_json(),
        }


def _combine(chi: DirichletCharacter, terms) -> CycloElem:
    """sum_a chi(a) * terms[a] as a cyclotomic vector (terms in Q(q))."""
    m = chi.order
    acc = [[] for _ in range(euler_phi(m))]
    for a, t in terms:
        e = chi.exponent(a)
        if e is None or t.is_zero():
            continue
        for i, v in enumerate(CycloElem.root_power(m, e).coords):
            if not v.is_zero():
                acc[i].append(t * v.constant_value())
    return CycloElem(m, [QRat.sum(c) for c in acc])


def generalized_euler(chi: DirichletCharacter, n: int) -> GeneralizedNumber:
    """[d]^n [2]_q/[2]_{q^d} sum_a chi(a) (-1)^a E_{n,q^d}(a/d)."""
    d = chi.modulus
    poly = build_xpoly(Family.MODIFIED_EULER, n).base_change(d)
    terms = [(a, eval_xpoly_at_fraction(poly, a, d).plain * (-1) ** a) for a in range(d)]
    pref = q_int(d) ** n * (1 + _q) / (1 + QRat.monomial(d))
    return GeneralizedNumber(n, chi, _combine(chi, terms) * pref)


def generalized_euler_oracle(chi: DirichletCharacter, n: int) -> GeneralizedNumber:
    """Same number from the fermionic integral over Z/dp^N, expanded on monomials.

    I_{-q}(chi(x) q^((l-1)x)) = [2]_q sum_a chi(a)(-1)^a q^(la)/(1+q^(ld)).
    """
    d = chi.modulus
    terms = []
    for a in range(d):
        s = QRat.sum(
            QRat.monomial(l * a, comb(n, l) * (-1) ** l) / (1 + QRat.monomial(l * d)) for l in range(n + 1)
        )
        terms.append((a, s * (-1) ** a))
    pref = (1 + _q) / (1 - _q) ** n
    return GeneralizedNumber(n, chi, _combine(chi, terms) * pref)


def _decomp_check(item):
    chi = get_character(item["modulus"], item["index"])
    return generalized_euler(chi, item["n"]).value - generalized_euler_oracle(chi, item["n"]).value


def verify_char_decomp(moduli, n_max: int) -> IdentityReport:
    """d-fold decomposition vs the direct integral over X, every character of each modulus."""
    report = IdentityReport("char-decomp", {"moduli": list(moduli), "n_max": n_max})
    for d in moduli:
        for chi in enumerate_characters(d):
            for n in range(n_max + 1):
                item = {"modulus": d, "index": chi.index, "n": n}
                report.add(item, _decomp_check(item))
    return report
