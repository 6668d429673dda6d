import cmath

import mpmath as mp
import pytest

from qeuler.analytic import (
    ConvergenceError,
    ZetaParams,
    distribution_numeric,
    gen_fn,
    gen_fn_taylor,
    l_series,
    taylor_from_samples,
    zeta_q,
)
from qeuler.characters import enumerate_characters, generalized_euler, get_character
from qeuler.polynomials import build_xpoly

QS = [0.3, 0.5, 0.5 + 0.2j]
XS = [0, 0.5, 1, 2]


def _ref_zeta(s, x, q, terms=400):
    """High-precision partial sum of the binomially expanded series."""
    with mp.workdps(50):
        q, s, x = mp.mpc(q), mp.mpc(s), mp.mpf(x)
        acc = mp.mpf(1) / 2
        r = mp.mpf(1)
        for j in range(1, terms):
            r = r * (s + j - 1) / j
            acc += r * mp.exp(j * x * mp.log(q)) / (1 + q**j)
        return complex((1 + q) * mp.exp(s * mp.log(1 - q)) * acc)


def test_examples():
    for x in (0.3, 1, 2.5):
        assert abs(zeta_q(0, x, 0.5) - 0.75) < 1e-15
    assert abs(zeta_q(-1, 0, 0.5) + 0.5) < 1e-15
    assert abs(zeta_q(-2, 0, 0.5) + 0.2) < 1e-15


@pytest.mark.parametrize("q", QS)
@pytest.mark.parametrize("x", XS)
def test_interpolation(q, x):
    for n in range(9):
        exact = build_xpoly("modified_euler", n).numeric(x, q)
        assert abs(zeta_q(-n, x, q) - exact) < 1e-10


def test_non_integer_s_against_high_precision():
    for s, x, q in ((0.5, 0.7, 0.5), (2 + 1j, 1.5, 0.3 + 0.1j), (-1.5, 2, 0.4), (3, 0.9, 0.5 + 0.2j)):
        assert abs(zeta_q(s, x, q) - _ref_zeta(s, x, q)) < 1e-12


def test_errors():
    with pytest.raises(ValueError, match="series undefined at x=0"):
        zeta_q(0.5, 0, 0.5)
    with pytest.raises(ValueError):
        zeta_q(-1, 1, 1.2)
    with pytest.raises(ValueError):
        zeta_q(-1, 1, -0.5)
    with pytest.raises(ConvergenceError) as info:
        zeta_q(0.5, 0.001, 0.9, max_terms=50)
    assert info.value.partial is not None
    with pytest.raises(ValueError):
        ZetaParams(q=0.5, x=0, s=0.5)


def test_params_evaluate():
    assert ZetaParams(q=0.5, x=0, s=-1).evaluate() == zeta_q(-1, 0, 0.5)


def test_truncation_stable_at_negative_integers():
    for n in range(6):
        a = zeta_q(-n, 0.5, 0.4)
        b = zeta_q(-n, 0.5, 0.4, max_terms=n + 1)
        assert a == b


def test_near_negative_integers():
    for n in range(5):
        for x in (0.5, 1, 2):
            exact = build_xpoly("modified_euler", n).numeric(x, 0.5)
            for eps in (1e-6, -1e-6):
                assert abs(zeta_q(-n + eps, x, 0.5) - exact) < 1e-4


def test_gen_fn():
    assert abs(gen_fn(0, 0.7, 0.5) - 0.75) < 1e-15
    assert abs(gen_fn_taylor(1, 0, 0.5)[1] + 0.5) < 1e-15
    coeffs = gen_fn_taylor(8, 1, 0.3)
    for n, c in enumerate(coeffs):
        assert abs(c - build_xpoly("modified_euler", n).numeric(1, 0.3)) < 1e-9


def test_gen_fn_taylor_by_contour():
    for x, q in ((1, 0.3), (0.5, 0.5 + 0.2j)):
        series = gen_fn_taylor(8, x, q)
        contour = taylor_from_samples(lambda t: gen_fn(t, x, q), 8, radius=1.0, points=64)
        for a, b in zip(series, contour):
            assert abs(a - b) < 1e-9


def test_gen_fn_matches_its_taylor_polynomial():
    t, x, q = 0.05, 1, 0.3
    coeffs = gen_fn_taylor(12, x, q)
    approx = sum(c * t**n / mp.factorial(n) for n, c in enumerate(coeffs))
    assert abs(gen_fn(t, x, q) - complex(approx)) < 1e-13


@pytest.mark.parametrize("d", [3, 5])
def test_l_series_interpolation(d):
    for chi in enumerate_characters(d):
        for n in range(7):
            assert abs(l_series(chi, -n, 0.4) - generalized_euler(chi, n).embed(0.4)) < 1e-9


def test_l_series_examples():
    assert abs(l_series(get_character(3, 1), 0, 0.5) + 1.5) < 1e-14



def test_l_series_modulus_one():
    # the sum starts at n = 1, so at s = -n it is -E_n(1) = E_n for n >= 1, and -[2]_q/2 at n = 0
    chi1 = get_character(1, 0)
    for n in range(1, 7):
        assert abs(l_series(chi1, -n, 0.5) - build_xpoly("modified_euler", n).numeric(0, 0.5)) < 1e-12
    assert abs(l_series(chi1, 0, 0.5) + 0.75) < 1e-15


def test_l_series_branch_with_large_argument():
    # d * arg(q) > pi: the base change must keep (q^d)^(a/d) = q^a
    q = 0.6 * cmath.exp(0.9j)
    chi = get_character(5, 1)
    for n in range(4):
        assert abs(l_series(chi, -n, q) - generalized_euler(chi, n).embed(q)) < 1e-9


def test_distribution_numeric():
    for n, d, x, q in ((3, 3, 0.5, 0.4), (5, 5, 1.3, 0.5 + 0.2j), (2, 1, 0.7, 0.3), (6, 3, 2.0, 0.5)):
        lhs, rhs = distribution_numeric(n, d, x, q)
        assert abs(lhs - rhs) < 1e-9
