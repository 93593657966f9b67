"""Acceptance checks, one test per criterion.

Each test carries a ``criterion`` marker; the summary at the end of the run
prints a PASS/FAIL line for every criterion (see conftest.py).
"""

import time
from fractions import Fraction

import pytest
from mpmath import mp
from sympy import isprime

from invariantcr.cyclotomic import CycNum, root_of_unity
from invariantcr.fpq import (
    expected_pm1_counts,
    fp2_recurrence,
    fp_pm1_structure,
    fpq_compute,
    golden_ratio_scalar,
    prime_test,
)
from invariantcr.groups import (
    UnitaryMatrix,
    all_small_groups,
    make_dihedral,
    make_example_3_3,
    make_gamma_pq,
    make_metacyclic,
    make_scalar_cyclic,
    swap_matrix,
)
from invariantcr.hermpoly import HermPoly, MomentPoly
from invariantcr.intervals import lower, upper
from invariantcr.invariant import (
    example_3_3_formula,
    phi_dihedral,
    phi_gamma,
    phi_metacyclic,
    verify_invariant,
)
from invariantcr.quadmap import build_gp, verify_quadmap
from invariantcr.signature import Component, QuadMap, coeff_matrix, decompose, inertia, signature_ratio


def moment(pairs):
    return MomentPoly(2, dict(pairs))


@pytest.mark.criterion(1, "golden fixtures reproduced exactly (< 5 s)")
def test_criterion_01_golden_fixtures():
    start = time.perf_counter()
    fixtures = {
        (4, 3): {(4, 0): 1, (0, 4): 1, (1, 1): 4, (2, 2): -2},
        (5, 4): {(5, 0): 1, (0, 5): 1, (1, 1): 5, (2, 2): -5},
        (6, 5): {(6, 0): 1, (0, 6): 1, (1, 1): 6, (2, 2): -9, (3, 3): 2},
        (7, 6): {(7, 0): 1, (0, 7): 1, (1, 1): 7, (2, 2): -14, (3, 3): 7},
    }
    for (p, q), terms in fixtures.items():
        assert fpq_compute(p, q) == moment(terms)
    binom = moment({(6 - k, k): c for k, c in enumerate([1, 6, 15, 20, 15, 6, 1])})
    assert phi_gamma(make_scalar_cyclic(6, 2)).diagonal().to_moment() == binom
    assert phi_gamma(make_gamma_pq(6, 5)).diagonal().to_moment() == moment(fixtures[(6, 5)])
    assert example_3_3_formula() == phi_gamma(make_example_3_3()).diagonal()
    assert time.perf_counter() - start < 5


@pytest.mark.criterion(2, "defining properties for every constructed group of order <= 24 (< 2 min)")
def test_criterion_02_property_suite():
    start = time.perf_counter()
    groups = list(all_small_groups(24))
    assert len(groups) > 300
    failures = []
    for G in groups:
        rep = verify_invariant(G)
        if not rep.ok:
            failures.append((G.labels, rep.to_json()))
    assert not failures
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(3, "dihedral and metacyclic formulas equal the direct product, p <= 8")
def test_criterion_03_cross_construction():
    i = root_of_unity(4, 1)
    for p in range(2, 9):
        direct = phi_gamma(make_dihedral(p))
        assert phi_dihedral(p) == direct.diagonal()
        assert phi_metacyclic(p, 2, swap_matrix()) == direct
        if p % 2:
            for B in (UnitaryMatrix.diagonal([i, i]), UnitaryMatrix([[0, i], [i, 0]])):
                assert phi_metacyclic(p, 4, B) == phi_gamma(make_metacyclic(p, 4, B))


@pytest.mark.criterion(4, "inertia (7,0,0), (4,1,0), (4,2,0) and the decompositions of the first two examples")
def test_criterion_04_signatures():
    problems = []
    P1 = phi_gamma(make_scalar_cyclic(6, 2)).diagonal()
    P2 = phi_gamma(make_gamma_pq(6, 5)).diagonal()
    P3 = phi_gamma(make_example_3_3()).diagonal()
    for name, P, want in [("scalar(6)", P1, (7, 0, 0)), ("gamma(6,5)", P2, (4, 1, 0)), ("example 3.3", P3, (4, 2, 0))]:
        got = tuple(inertia(coeff_matrix(P)))
        if got != want:
            problems.append(f"{name}: inertia {got}, expected {want}")

    qm = decompose(P1)
    weights = [int(c.coeff_sq) for c in qm.plus]
    if qm.signature != (7, 0) or weights != [1, 6, 15, 20, 15, 6, 1]:
        problems.append(f"scalar(6) decomposition {qm.signature} {weights}")

    qm = decompose(P2)
    got = {c.monomial: (1, c.coeff_sq) for c in qm.plus} | {c.monomial: (-1, c.coeff_sq) for c in qm.minus}
    order = [(6, 0), (0, 6), (1, 1), (3, 3), (2, 2)]
    want = {(6, 0): (1, 1), (0, 6): (1, 1), (1, 1): (1, 6), (3, 3): (1, 2), (2, 2): (-1, 9)}
    if got != want or [got[m][0] for m in order] != [1, 1, 1, 1, -1]:
        problems.append(f"gamma(6,5) decomposition {got}")
    # The example 3.3 form has 11 monomials in its support and rank 6, so the
    # zero count cannot be 0; this criterion is expected to fail on that entry.
    assert not problems, "; ".join(problems)


@pytest.mark.criterion(5, "coefficient primality test agrees with trial division, p <= 50 (< 5 min)")
def test_criterion_05_primality():
    start = time.perf_counter()
    mismatches = []
    for p in range(2, 51):
        for q in sorted({2, 3, p - 1}):
            if 1 <= q < p and prime_test(p, q).prime != isprime(p):
                mismatches.append((p, q))
    assert not mismatches
    assert time.perf_counter() - start < 300


@pytest.mark.criterion(6, "closed form for f_{p,2} equals the product, 3 <= p <= 40")
def test_criterion_06_fp2():
    for p in range(3, 41):
        assert fp2_recurrence(p) == fpq_compute(p, 2), p


@pytest.mark.criterion(7, "S_p^(1/p) within 0.01 of the golden ratio at p = 200, closer than at p = 100")
def test_criterion_07_golden_ratio():
    with mp.workprec(256):
        phi = (1 + mp.sqrt(5)) / 2

        def gap(p):
            r = golden_ratio_scalar(p, 256).root
            return max(abs(upper(r) - phi), abs(lower(r) - phi))

        g100, g200 = gap(100), gap(200)
    assert g200 <= mp.mpf(1) / 100
    assert g200 < g100


@pytest.mark.criterion(8, "R_p = 1 for Gamma(p,1); p mod 4 counts and the ratio bound for Gamma(p,p-1)")
def test_criterion_08_signature_ratios():
    for row in signature_ratio("gamma-p-1", range(2, 61)):
        assert row.ratio == 1, row
    rows = signature_ratio("gamma-p-pm1", range(3, 61))
    for row in rows:
        assert (row.n_plus, row.n_minus) == expected_pm1_counts(row.p), row
        assert abs(row.ratio - Fraction(1, 2)) <= Fraction(6, row.p), row
    by_class = {}
    for row in rows:
        by_class.setdefault(row.p % 4, []).append(row.ratio)
    for ratios in by_class.values():
        assert all(a > b for a, b in zip(ratios, ratios[1:]))


@pytest.mark.criterion(9, "sign pattern of the coefficients n_j of f_{p,p-1}, 3 <= p <= 60")
def test_criterion_09_structure():
    for p in range(3, 61):
        rep = fp_pm1_structure(p, strict=False)
        assert rep.ok, rep.violations
        for j, c in rep.n.items():
            assert 2 * j <= p
            assert (c > 0) if j % 2 else (c < 0)


@pytest.mark.criterion(10, "g_p for p = 1..4 maps Q(2,2p+1) into Q(N(p),2p+1), degree 2p (< 1 min)")
def test_criterion_10_quadmap():
    start = time.perf_counter()
    for p in range(1, 5):
        g = build_gp(p)
        rep = verify_quadmap(g, (2, 2 * p + 1))
        assert rep.ok, p
        assert len(g.minus) == 2 * p + 1
        assert g.degree() == 2 * p
        if p == 1:
            assert len(g.plus) == 8
            plus = sorted(c.coeff_sq for c in g.plus)
            minus = sorted(c.coeff_sq for c in g.minus)
            assert plus == [1, 1, 1, 2, 2, 2, 2, 2]
            assert minus == [1, 1, 2]
    assert time.perf_counter() - start < 60


def _bump(P: HermPoly, key, delta) -> HermPoly:
    terms = dict(P.terms)
    terms[key] = terms[key] + CycNum.coerce(delta)
    return HermPoly(P.dim, terms, P.form)


@pytest.mark.criterion(11, "perturbing any single coefficient makes verification fail")
def test_criterion_11_soundness():
    # maps: every component weight of g_1 and g_2
    for p in (1, 2):
        g = build_gp(p)
        for side in ("plus", "minus"):
            comps = getattr(g, side)
            for idx, c in enumerate(comps):
                changed = list(comps)
                changed[idx] = Component(c.poly, CycNum.coerce(c.weight) + Fraction(1, 3))
                parts = {"plus": g.plus, "minus": g.minus, side: changed}
                h = QuadMap(g.dim, parts["plus"], parts["minus"], True, g.source)
                assert not verify_quadmap(h, (2, 2 * p + 1)).ok, (p, side, idx)

    # invariant polynomials, diagonal and non-diagonal groups
    for G in (make_gamma_pq(6, 5), make_example_3_3(), make_dihedral(3)):
        phi = phi_gamma(G)
        assert verify_invariant(G, phi).ok
        for key in phi.terms:
            assert not verify_invariant(G, _bump(phi, key, Fraction(1, 5))).ok, key

    # f_{p,q}: every coefficient bump breaks f = 1 on x + y = 1
    f = fpq_compute(6, 5)
    line = MomentPoly.linear([1, 1], -1)
    assert (f - 1).reduce_linear(line, var=1).is_zero()
    for key in f.terms:
        g = MomentPoly(2, {**f.terms, key: f.terms[key] + 1})
        assert not (g - 1).reduce_linear(line, var=1).is_zero()
