from fractions import Fraction

import pytest

from invariantcr.cyclotomic import CycNum, root_of_unity
from invariantcr.errors import NotHermitian
from invariantcr.groups import make_dihedral, make_example_3_3, make_gamma_pq, make_scalar_cyclic
from invariantcr.hermpoly import HermPoly
from invariantcr.invariant import phi_gamma
from invariantcr.signature import (
    CoeffMatrix,
    Inertia,
    QuadMap,
    coeff_matrix,
    decompose,
    inertia,
    signature_csv,
    signature_ratio,
)


def phi(G):
    return phi_gamma(G).diagonal()


def test_coeff_matrix_examples():
    M = coeff_matrix(phi(make_gamma_pq(6, 5)))
    assert M.is_diagonal() and M.size == 5
    assert sorted(int(M[i, i].to_fraction()) for i in range(5)) == [-9, 1, 1, 2, 6]
    with pytest.raises(NotHermitian):
        coeff_matrix(HermPoly.monomial((1, 0), (0, 1), 1, "diagonal"))


def test_inertia_of_examples():
    assert tuple(inertia(coeff_matrix(phi(make_scalar_cyclic(6, 2))))) == (7, 0, 0)
    assert tuple(inertia(coeff_matrix(phi(make_gamma_pq(6, 5))))) == (4, 1, 0)
    assert tuple(inertia(CoeffMatrix.from_dense([[1, 0], [0, -1]]))) == (1, 1, 0)


def test_example_3_3_inertia():
    # 11 monomials in the support, rank 6: target Q(4,2) with a 5-dimensional kernel
    ine = inertia(coeff_matrix(phi(make_example_3_3())))
    assert (ine.n_plus, ine.n_minus) == (4, 2)
    assert ine.n_zero == 5 and ine.rank == 6


def test_inertia_non_diagonal_dense():
    i = root_of_unity(4, 1)
    M = CoeffMatrix.from_dense([[0, i], [-i, 0]])
    assert tuple(inertia(M)) == (1, 1, 0)
    M = CoeffMatrix.from_dense([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
    assert tuple(inertia(M)) == (3, 0, 0)
    M = CoeffMatrix.from_dense([[1, 1], [1, 1]])
    assert tuple(inertia(M)) == (1, 0, 1)


def test_sylvester_congruence_invariance():
    z = root_of_unity(5, 1)
    M = coeff_matrix(phi(make_dihedral(3)))
    k = M.size
    S = [[CycNum.rational(1 if i == j else 0) for j in range(k)] for i in range(k)]
    S[0][1] = z
    S[2][k - 1] = CycNum.rational(Fraction(-3, 2))
    assert tuple(inertia(M.congruent(S))) == tuple(inertia(M))


def test_decompose_binomial():
    qm = decompose(phi(make_scalar_cyclic(6, 2)))
    assert qm.signature == (7, 0)
    assert sorted(int(c.coeff_sq) for c in qm.plus) == sorted([1, 6, 15, 20, 15, 6, 1])
    assert [c.monomial for c in qm.plus][0] == (6, 0)


def test_decompose_gamma_65():
    qm = decompose(phi(make_gamma_pq(6, 5)))
    assert qm.signature == (4, 1)
    assert qm.minus[0].monomial == (2, 2) and qm.minus[0].coeff_sq == 9
    assert qm.hermitian_form() == phi(make_gamma_pq(6, 5))


def test_decompose_simple_form():
    P = HermPoly(2, {(1, 0, 1, 0): 1, (0, 1, 0, 1): -1}, "diagonal")
    qm = decompose(P)
    assert qm.signature == (1, 1)
    assert qm.hermitian_form() == P


def test_decompose_non_diagonal_is_exact():
    for G in (make_example_3_3(), make_dihedral(5)):
        P = phi(G)
        qm = decompose(P)
        assert qm.exact
        assert qm.hermitian_form() == P
        ine = inertia(coeff_matrix(P))
        assert qm.signature == (ine.n_plus, ine.n_minus)


def test_eigen_method_agrees_on_signature():
    for G, sig in [(make_example_3_3(), (4, 2)), (make_dihedral(5), (5, 4)), (make_gamma_pq(6, 5), (4, 1))]:
        qm = decompose(phi(G), method="eigen")
        assert not qm.exact and qm.signature == sig


def test_quadmap_json_roundtrip():
    qm = decompose(phi(make_gamma_pq(6, 5)))
    back = QuadMap.from_json(qm.to_json())
    assert back.hermitian_form() == qm.hermitian_form()


def test_signature_ratio_examples():
    rows = {r.p: r for r in signature_ratio("gamma-p-pm1", [4, 7])}
    assert rows[4].ratio == Fraction(3, 4)
    assert rows[7].ratio == Fraction(4, 5)
    assert all(r.ratio == 1 for r in signature_ratio("gamma-p-1", range(2, 12)))
    text = signature_csv(list(rows.values()))
    assert text.splitlines()[0].startswith("p,order,n_plus")
    assert Inertia(1, 2, 3).to_json() == {"n_plus": 1, "n_minus": 2, "n_zero": 3}
