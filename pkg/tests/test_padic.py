from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler.exactq import L, LExt, QRat
from qeuler.identities import ORACLE
from qeuler.padic import (
    PadicNum,
    RiemannSumConfig,
    convergence_profile,
    padic_arith,
    padic_eval,
    padic_log,
    padic_pow,
    riemann_sum,
)
from qeuler.sequences import modified_euler_closed


def P(x, p=5, prec=10):
    return PadicNum.from_rational(x, p, prec)


# arithmetic ------------------------------------------------------------------------------

def test_log_examples():
    assert padic_log(P(1, 5)).is_zero()
    assert padic_log(P(4, 3)).v == 1
    assert padic_pow(P(6, 5), 5).agrees_with(P(1 + 25, 5, 3)._cap(3))
    r = padic_pow(P(6, 5, 6), 5).residue(3)
    assert r == (1 + 25) % 125


def test_log_rejects_non_one_units():
    with pytest.raises(ValueError):
        padic_log(P(2, 5))
    with pytest.raises(ValueError):
        padic_log(P(5, 5))


def test_log_is_additive():
    a, b = P(6, 5, 20), P(11, 5, 20)
    assert padic_log(a * b).agrees_with(padic_log(a) + padic_log(b))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        padic_arith(P(1), PadicNum.zero(5, 10), "div")


def test_precision_min_rule():
    a = PadicNum.from_residue(1 + 5, 5, 4)     # known mod 5^4
    b = PadicNum.from_residue(2, 5, 9)         # known mod 5^9
    s = a + b
    assert s.abs_prec == 4
    d = a - PadicNum.from_residue(1, 5, 9)    # cancellation: 5 known mod 5^4
    assert d.v == 1 and d.abs_prec == 4
    m = P(Fraction(3, 7), 5, 6) * P(25, 5, 9)
    assert m.v == 2 and m.prec == 6


@given(st.fractions(max_denominator=50).filter(lambda x: x != 0 and Fraction(x).denominator % 7),
       st.fractions(max_denominator=50).filter(lambda x: x != 0 and Fraction(x).denominator % 7))
@settings(max_examples=60, deadline=None)
def test_arith_matches_rationals(x, y):
    p, prec = 7, 12
    a, b = P(x, p, prec), P(y, p, prec)
    for op, ref in (("add", x + y), ("sub", x - y), ("mul", x * y), ("div", x / y)):
        got = padic_arith(a, b, op)
        if ref == 0:
            assert got.is_zero()
        else:
            assert got.agrees_with(P(ref, p, 40))


def test_eval_L_at_padic_q():
    # L = (q-1)/log q at q = 6 in Q_5
    val = padic_eval(L, 6, 5, 20)
    qp = P(6, 5, 24)
    assert val.agrees_with((qp - 1) / padic_log(qp))
    assert padic_eval(LExt((1 + QRat.gen()) / 2), Fraction(6), 5, 20).agrees_with(P(Fraction(7, 2), 5, 20))


# configuration ---------------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ValueError):
        RiemannSumConfig(p=4, q=5, N=1)
    with pytest.raises(ValueError):
        RiemannSumConfig(p=5, q=7, N=1)
    with pytest.raises(ValueError, match="budget"):
        RiemannSumConfig(p=7, q=8, N=8)
    with pytest.raises(ValueError):
        RiemannSumConfig(p=5, q=6, N=1, kind="gaussian")


# Riemann sums ------------------------------------------------------------------------------

def test_fermionic_constant_is_exact():
    for N in range(1, 6):
        s = riemann_sum(RiemannSumConfig(p=3, q=4, N=N, kind="fermionic", monomial=0))
        assert s.agrees_with(P(1, 3, 40)) and s.v == 0 and s.u == 1


def test_q_equal_one_gives_one():
    for N in range(1, 4):
        cfg = RiemannSumConfig.for_family("modified_euler", 0, p=5, q=1, N=N)
        assert riemann_sum(cfg).agrees_with(P(1, 5, 40))


def test_bosonic_L_convergence():
    prof = convergence_profile(RiemannSumConfig(p=5, q=6, N=0, kind="bosonic", monomial=-1), range(1, 5))
    assert prof.valuations == [2, 3, 4, 5]


def test_beta1_p3():
    cfg = RiemannSumConfig.for_family("carlitz_bernoulli", 1, p=3, q=4, N=0)
    prof = convergence_profile(cfg, range(1, 6))
    assert prof.valuations == [1, 2, 3, 4, 5]
    assert prof.nondecreasing and prof.offset == 0
    assert cfg.exact() == LExt(-1 / (1 + QRat.gen()))


def test_modified_euler_p5_strictly_increasing():
    cfg = RiemannSumConfig.for_family("modified_euler", 2, p=5, q=6, N=0)
    v = convergence_profile(cfg, range(1, 5)).valuations
    assert all(a < b for a, b in zip(v, v[1:]))


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("j", [-1, 1, 2, 3])
@pytest.mark.parametrize("kind", ["bosonic", "fermionic"])
def test_monomials_reach_oracle(p, j, kind):
    prof = convergence_profile(RiemannSumConfig(p=p, q=1 + p, N=0, M=20, kind=kind, monomial=j), range(1, 5))
    assert all(r.valuation >= r.N for r in prof.rows)
    assert prof.nondecreasing


@pytest.mark.parametrize("p", [3, 5])
def test_functional_equations_at_finite_level(p):
    q = 1 + p
    for N in range(1, 4):
        for j in (0, 1, 2):
            # bosonic shift carries the derivative term (q-1)/log q * f'(0) = j(q-1)
            sb = riemann_sum(RiemannSumConfig(p=p, q=q, N=N, kind="bosonic", monomial=j))
            lhs = q * q**j * sb - sb - (q - 1) * (1 + j)
            assert lhs.is_zero() or lhs.v >= N
            sf = riemann_sum(RiemannSumConfig(p=p, q=q, N=N, kind="fermionic", monomial=j))
            lhs = q * q**j * sf + sf - (1 + q)
            assert lhs.is_zero() or lhs.v >= N


def test_partition_invariance():
    base = RiemannSumConfig.for_family("modified_bernoulli", 3, p=3, q=4, N=5)
    ref = riemann_sum(base, partitions=1)
    for k in (2, 3, 7, 16):
        assert riemann_sum(base, partitions=k) == ref
    assert riemann_sum(base, partitions=3, jobs=2) == ref


def test_precision_propagation():
    for fam, n in (("modified_euler", 3), ("carlitz_bernoulli", 4), ("modified_bernoulli", 2), ("kim_euler", 5)):
        a = riemann_sum(RiemannSumConfig.for_family(fam, n, p=5, q=6, N=3, M=20))
        b = riemann_sum(RiemannSumConfig.for_family(fam, n, p=5, q=6, N=3, M=30))
        assert a.agrees_with(b)
        assert b.truncate(a.prec) == a


def test_profile_against_exact_rational_sums():
    # the level-N sum is a rational number at rational q; compare it digit for digit
    p, q, n = 3, 4, 5
    for N in (1, 2, 3):
        Pn = p**N
        s = sum(Fraction(q) ** (-x) * Fraction(1 - q**x, 1 - q) ** n * (-q) ** x for x in range(Pn))
        s *= Fraction(1 + q, 1 + q**Pn)
        cfg = RiemannSumConfig.for_family("modified_euler", n, p=p, q=q, N=N, M=30)
        assert riemann_sum(cfg).agrees_with(P(s, p, 60))


def test_non_monotone_level_profile():
    # p = 3, q = 4, n = 5: valuations of S_N - E_5 are 4, 3, 4, 5 (genuine extra cancellation at N = 1)
    p, q, n = 3, 4, 5
    exact = modified_euler_closed(n).evaluate(Fraction(q))
    vals = []
    for N in (1, 2, 3):
        Pn = p**N
        s = sum(Fraction(q) ** (-x) * Fraction(1 - q**x, 1 - q) ** n * (-q) ** x for x in range(Pn))
        s *= Fraction(1 + q, 1 + q**Pn)
        vals.append(P(s - exact, p, 10).v)
    assert vals == [4, 3, 4]
    prof = convergence_profile(RiemannSumConfig.for_family("modified_euler", n, p=p, q=q, N=0), range(1, 5))
    assert prof.valuations == [4, 3, 4, 5]
    assert not prof.nondecreasing
    assert prof.offset <= 0


def test_exact_targets_match_oracle():
    assert RiemannSumConfig(p=3, q=4, N=1, kind="fermionic", monomial=2).exact() == ORACLE.fermionic(2)
