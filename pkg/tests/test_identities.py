from fractions import Fraction

import pytest

from qeuler.exactq import L, LExt, QRat
from qeuler.identities import (
    FUNCTIONAL_EQUATIONS,
    ORACLE,
    IdentityReport,
    integral_exact,
    verify_eq14,
    verify_equation,
    verify_functional_equation,
    verify_lemma4_corrected,
    verify_lemma4_verbatim,
    verify_power_sum_bernoulli,
    verify_theorem6,
    verify_theorem7,
    verify_theorem11,
)
from qeuler.sequences import modified_euler_closed

q = QRat.gen()


def _finite_sum(kind, j, P):
    """Level sum (1/[P]_{+-q}) sum_{x<P} q^(jx) (+-q)^x, summed term by term."""
    sgn = -1 if kind == "fermionic" else 1
    total = QRat.sum(QRat.monomial((j + 1) * x, sgn**x) for x in range(P))
    norm = QRat.sum(QRat.monomial(x, sgn**x) for x in range(P))
    return total / norm


@pytest.mark.parametrize("j", [0, 1, 2, 3])
@pytest.mark.parametrize("P", [3, 9])
def test_oracle_from_finite_sums(j, P):
    # bosonic: (1-q)/(1-q^(j+1)) * [j+1]_{q^P}; letting q^P -> 1 leaves (j+1)(1-q)/(1-q^(j+1))
    qP = QRat.monomial(P)
    bos = _finite_sum("bosonic", j, P)
    qint = QRat.sum(qP**i for i in range(j + 1))
    assert bos == (1 - q) / (1 - q ** (j + 1)) * qint
    assert ORACLE.bosonic(j) == LExt((j + 1) * (1 - q) / (1 - q ** (j + 1)))
    # fermionic: [2]_q (1 + q^((j+1)P)) / ((1 + q^P)(1 + q^(j+1))); q^P -> 1 leaves [2]_q/(1+q^(j+1))
    fer = _finite_sum("fermionic", j, P)
    assert fer == (1 + q) * (1 + qP ** (j + 1)) / ((1 + qP) * (1 + q ** (j + 1)))
    assert ORACLE.fermionic(j) == LExt((1 + q) / (1 + q ** (j + 1)))


def test_oracle_special_values():
    assert ORACLE("bosonic", -1) == L
    assert ORACLE("fermionic", -1) == LExt((1 + q) / 2)
    assert ORACLE("fermionic", 0) == LExt(QRat.const(1))
    with pytest.raises(ValueError):
        ORACLE("gaussian", 0)


def test_integral_exact_examples():
    assert integral_exact("fermionic", -1, 0) == LExt((1 + q) / 2)
    assert integral_exact("bosonic", 0, 1) == LExt(-1 / (1 + q))
    assert integral_exact("bosonic", -1, 0) == L
    with pytest.raises(ValueError):
        integral_exact("bosonic", 0, -1)


def test_eq5_intermediate():
    j = 1
    lhs = q * q**j * (j + 1) * (1 - q) / (1 - q ** (j + 1)) - (j + 1) * (1 - q) / (1 - q ** (j + 1))
    assert lhs == (j + 1) * (q - 1)


@pytest.mark.parametrize("name", sorted(FUNCTIONAL_EQUATIONS))
def test_functional_equations(name):
    report = verify_equation(name, range(-1, 5), 5)
    assert report.passed, report.first_counterexample
    assert report.instances


def test_functional_equation_single_shift():
    r = verify_functional_equation("fermionic", 0, 2, [1])
    assert r.identity == "eq16" and r.passed
    r = verify_functional_equation("bosonic", 0, 1, [-1, 0, 1])
    assert r.identity == "eq5" and r.passed
    r = verify_functional_equation("fermionic", -1, 1, [0])
    assert r.identity == "eq19" and r.passed


def test_theorem6():
    r = verify_theorem6(20)
    assert r.status == "pass"
    assert len(r.instances) == 21


def test_theorem6_small_cases_by_hand():
    e = modified_euler_closed
    assert e(0) + e(0) == 1 + q
    assert q * e(1) + e(0) + e(1) == 0


def test_theorem6_catches_mutation():
    def corrupted(n):
        v = modified_euler_closed(n)
        return v + QRat.const(Fraction(1, 10**6)) * q**2 if n == 4 else v

    r = verify_theorem6(8, values=corrupted)
    assert not r.passed
    bad = [i["params"]["n"] for i in r.failures]
    assert 4 in bad
    assert r.first_counterexample["diff"] != "0"


def test_theorem6_independent_of_memo_order():
    # values computed high index first agree with an in-order sweep
    high_first = [modified_euler_closed(n) for n in reversed(range(12))][::-1]
    assert verify_theorem6(11, values=lambda n: high_first[n]).passed


def test_theorem7():
    assert verify_theorem7(8, 6).passed


def test_lemma4_corrected_and_verbatim():
    assert verify_lemma4_corrected(6, 6).passed
    r = verify_lemma4_verbatim(3, 3)
    assert r.status == "erratum confirmed"
    failing = sorted((i["params"]["m"], i["params"]["n"]) for i in r.failures)
    assert failing == [(0, 3), (1, 3), (2, 3), (3, 3)]


def test_prop2_and_eq14():
    assert verify_power_sum_bernoulli(6, 6).passed
    assert verify_eq14(6, 6).passed


def test_theorem11():
    assert verify_theorem11(6, [1, 3, 5]).passed


def test_report_json_and_status():
    r = IdentityReport("demo", {"n": 1})
    r.add({"n": 0}, QRat.const(0))
    assert r.to_json()["status"] == "pass"
    r.add({"n": 1}, q)
    js = r.to_json()
    assert js["status"] == "fail"
    assert js["first_counterexample"] == {"params": {"n": 1}, "passed": False, "diff": "q"}
    e = IdentityReport("demo", {}, expected_failure=True)
    e.add({}, QRat.const(0))
    assert e.status == "erratum not reproduced"


def test_parallel_sweep_matches_serial():
    a = verify_theorem7(5, 4, jobs=1).to_json()
    b = verify_theorem7(5, 4, jobs=2).to_json()
    assert a == b
