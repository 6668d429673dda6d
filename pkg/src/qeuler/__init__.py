"""Exact q-Euler and q-Bernoulli numbers, identity checks, p-adic Riemann sums and q-zeta values."""

from .exactq import L, LExt, CycloElem, QRat, Q
from .sequences import Family, family_closed, family_recurrence, number_table, q_int
from .polynomials import XPoly, build_xpoly
from .characters import DirichletCharacter, enumerate_characters, generalized_euler
from .padic import PadicNum, RiemannSumConfig, convergence_profile, riemann_sum
from .analytic import ZetaParams, l_series, zeta_q

__version__ = "0.1.0"

__all__ = [
    "L",
    "LExt",
    "CycloElem",
    "QRat",
    "Q",
    "Family",
    "family_closed",
    "family_recurrence",
    "number_table",
    "q_int",
    "XPoly",
    "build_xpoly",
    "DirichletCharacter",
    "enumerate_characters",
    "generalized_euler",
    "PadicNum",
    "RiemannSumConfig",
    "convergence_profile",
    "riemann_sum",
    "ZetaParams",
    "l_series",
    "zeta_q",
]
