import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from invariantcr.intervals import center
from invariantcr.cyclotomic import (
    CycNum,
    cyc_arith,
    cyc_embed,
    cyclotomic_polynomial,
    root_of_unity,
    totient,
)


def test_totient_and_polynomials():
    assert [totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    for n in range(1, 40):
        assert len(cyclotomic_polynomial(n)) == totient(n) + 1


def test_roots_of_unity():
    assert root_of_unity(1, 0) == 1
    i = root_of_unity(4, 1)
    assert i * i == -1
    assert root_of_unity(6, 3) == -1
    assert root_of_unity(6, 7) == root_of_unity(6, 1)
    # multiplicative order n / gcd(n, k)
    z = root_of_unity(12, 8)
    assert z**3 == 1 and z != 1


def _close(box, re, im, bits=90):
    # the box is certified; the oracle is computed independently at higher precision
    with mp.workprec(300):
        tol = mp.mpf(2) ** -bits
        return abs(center(box.re) - re) < tol and abs(center(box.im) - im) < tol


def test_root_embedding_matches_exp():
    for n, k in [(6, 3), (5, 2), (12, 7), (7, 3)]:
        box = cyc_embed(root_of_unity(n, k), 100)
        with mp.workprec(300):
            assert _close(box, mp.cospi(mp.mpf(2 * k) / n), mp.sinpi(mp.mpf(2 * k) / n))
        assert abs(box.midpoint() - cmath.exp(2j * cmath.pi * k / n)) < 1e-14


def test_arith_examples():
    z6 = root_of_unity(6, 1)
    assert cyc_arith(z6, root_of_unity(6, 5), "mul") == 1
    z3 = root_of_unity(3, 1)
    assert cyc_arith(z3, z3 * z3, "add") == -1
    i = root_of_unity(4, 1)
    q = cyc_arith(1 + i, 1 - i, "div")
    assert q == i
    assert cyc_embed(q, 100).contains(1j)
    with pytest.raises(ZeroDivisionError):
        cyc_arith(i, CycNum.rational(0), "div")


def test_mixed_conductors_and_hash():
    i = root_of_unity(4, 1)
    w = root_of_unity(3, 1)
    s = i + w
    assert s.n == 12
    assert s - w == i
    assert hash(root_of_unity(6, 3)) == hash(CycNum.rational(-1))
    assert root_of_unity(12, 3) == i
    assert root_of_unity(12, 3).compress().n == 4


def test_embedding_examples():
    one = cyc_embed(CycNum.rational(1), 64)
    assert one.contains(1) and one.width == 0
    z = cyc_embed(root_of_unity(6, 1), 128)
    with mp.workprec(300):
        assert _close(z, mp.mpf(1) / 2, mp.sqrt(3) / 2, 120)
    assert cyc_embed(root_of_unity(4, 1), 64).contains(1j)
    with pytest.raises(ValueError):
        cyc_embed(z6 := root_of_unity(6, 1), 20)
    assert z6.embed(256).width < z6.embed(64).width or z6.embed(64).width == 0


def test_sign_certification():
    r = root_of_unity(5, 1) + root_of_unity(5, 4)  # 2 cos(2 pi / 5) > 0
    assert r.is_real() and r.sign() == 1
    assert (r - 1).sign() == -1
    assert CycNum.rational(0).sign() == 0


def test_json_roundtrip():
    a = root_of_unity(7, 2) * Fraction(3, 5) - 2
    data = a.to_json()
    assert set(data) == {"n", "c"}
    assert CycNum.from_json(data) == a


# -- field axioms on random elements ------------------------------------------

conductors = st.sampled_from([1, 3, 4, 5, 6, 8, 9, 12, 15, 20, 24])


@st.composite
def cyc(draw, n=None):
    n = n if n is not None else draw(conductors)
    k = totient(n)
    coeffs = draw(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=k, max_size=k)
    )
    return CycNum(n, coeffs)


@settings(max_examples=60, deadline=None)
@given(cyc(), cyc(), cyc())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(cyc(), cyc())
def test_conjugation_is_a_ring_homomorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a
    assert (a * a.conj()).is_real()


@settings(max_examples=30, deadline=None)
@given(cyc())
def test_embedding_of_conjugate(a):
    e = cyc_embed(a, 96)
    ec = cyc_embed(a.conj(), 96)
    m = e.midpoint()
    assert ec.contains(m.conjugate()) or ec.width > 0
    assert abs(ec.midpoint() - m.conjugate()) < 1e-12
