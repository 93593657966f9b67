import cmath
from fractions import Fraction

import pytest
from mpmath import mp
from sympy import isprime

from invariantcr.errors import BadParameters, DomainViolation
from invariantcr.fpq import (
    expected_pm1_counts,
    fp2_recurrence,
    fp_pm1_structure,
    fpq_compute,
    fpq_csv,
    fpq_sweep,
    golden_ratio_scalar,
    prime_test,
    proposition41_check,
)
from invariantcr.hermpoly import MomentPoly
from invariantcr.intervals import lower, upper


def numeric_fpq(p, q):
    """1 - prod_k (1 - w^k x - w^(qk) y) expanded in complex floats, then rounded."""
    prod = {(0, 0): 1 + 0j}
    for k in range(p):
        a, b = cmath.exp(2j * cmath.pi * k / p), cmath.exp(2j * cmath.pi * k * q / p)
        nxt = {}
        for (i, j), c in prod.items():
            for key, m in (((i, j), 1), ((i + 1, j), -a), ((i, j + 1), -b)):
                nxt[key] = nxt.get(key, 0) + c * m
        prod = nxt
    out = {}
    for key, c in prod.items():
        v = (1 if key == (0, 0) else 0) - c
        if abs(v) > 1e-6:
            assert abs(v.imag) < 1e-6
            out[key] = round(v.real)
    return out


def test_golden_fixtures():
    assert fpq_compute(4, 3) == MomentPoly(2, {(4, 0): 1, (0, 4): 1, (1, 1): 4, (2, 2): -2})
    assert fpq_compute(5, 4) == MomentPoly(2, {(5, 0): 1, (0, 5): 1, (1, 1): 5, (2, 2): -5})
    assert fpq_compute(6, 5) == MomentPoly(2, {(6, 0): 1, (0, 6): 1, (1, 1): 6, (2, 2): -9, (3, 3): 2})
    assert fpq_compute(7, 6) == MomentPoly(2, {(7, 0): 1, (0, 7): 1, (1, 1): 7, (2, 2): -14, (3, 3): 7})


@pytest.mark.parametrize("p,q", [(5, 2), (7, 3), (8, 3), (9, 4), (10, 7), (12, 5)])
def test_matches_numeric_product(p, q):
    assert {k: int(c) for k, c in fpq_compute(p, q).items()} == numeric_fpq(p, q)


def test_fpq_properties():
    for p in range(2, 14):
        for q in range(1, p):
            f = fpq_compute(p, q)
            assert f.is_integral()
            assert f.eval([Fraction(1, 3), Fraction(2, 3)]) == 1


def test_parameter_errors():
    for bad in [(1, 1), (5, 5), (5, 0), (-3, 2)]:
        with pytest.raises(BadParameters):
            fpq_compute(*bad)
    with pytest.raises(BadParameters):
        fp2_recurrence(1)


def test_fp2_recurrence():
    # p = 2 is the formal q = 2 case: the group generated by diag(-1, 1)
    assert fp2_recurrence(2) == MomentPoly(2, {(2, 0): 1, (0, 2): -1, (0, 1): 2})
    for p in range(3, 25):
        assert fp2_recurrence(p) == fpq_compute(p, 2)


def test_prime_test():
    assert prime_test(7, 2).prime
    v = prime_test(6, 5)
    assert not v.prime and v.witness == ((2, 2), -9)
    assert v.to_json() == {"p": 6, "q": 5, "verdict": "composite", "witness": {"exp": [2, 2], "coeff": -9}}
    for p in range(3, 26):
        for q in {2, p - 1}:
            assert prime_test(p, q).prime == isprime(p)


def test_golden_ratio():
    phi = (1 + mp.sqrt(5)) / 2
    g100, g200 = golden_ratio_scalar(100), golden_ratio_scalar(200)
    assert g100.value == fp2_recurrence(100).eval([1, 1])
    gap100 = max(abs(upper(g100.root) - phi), abs(lower(g100.root) - phi))
    gap200 = max(abs(upper(g200.root) - phi), abs(lower(g200.root) - phi))
    assert gap200 < gap100 and gap200 <= 0.01
    assert golden_ratio_scalar(3).value == 5


def test_pm1_structure():
    assert expected_pm1_counts(6) == (4, 1)
    for p in range(3, 30):
        rep = fp_pm1_structure(p)
        assert rep.ok and rep.counts == expected_pm1_counts(p)


def test_limit_report():
    (r,) = proposition41_check(60, [(1, 1)])
    assert upper(r.gap) < 0.02
    with pytest.raises(DomainViolation):
        proposition41_check(5, [(0, 1)])
    with pytest.raises(DomainViolation):
        proposition41_check(5, [(-1, 1)])


def test_sweep_csv():
    rows = fpq_sweep([(4, 3), (5, 2)])
    text = fpq_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "p,q,coefficients,S_p,S_p_root,prime"
    assert lines[1].startswith("4,3,") and lines[1].endswith(",0")
    assert rows[1]["S"] == fp2_recurrence(5).eval([1, 1])
