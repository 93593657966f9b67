import sympy as sp
import pytest

from invariantcr.cyclotomic import CycNum, root_of_unity
from invariantcr.errors import BadParameters
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
from invariantcr.hermpoly import HermPoly, HolPoly, MomentPoly
from invariantcr.signature import coeff_matrix
from invariantcr.invariant import (
    example_3_3_formula,
    noether_basis,
    phi_diagonal_moment,
    phi_dihedral,
    phi_gamma,
    phi_metacyclic,
    reynolds_average,
    verify_invariant,
)


def moment_dict(P):
    return {k: int(c) for k, c in P.diagonal().to_moment().terms.items()}


def test_scalar_six_is_binomial():
    x, y = sp.symbols("x y")
    assert moment_dict(phi_gamma(make_scalar_cyclic(6, 2))) == dict(sp.Poly((x + y) ** 6, x, y).terms())


def test_gamma_65():
    f = moment_dict(phi_gamma(make_gamma_pq(6, 5)))
    assert f == {(6, 0): 1, (0, 6): 1, (1, 1): 6, (2, 2): -9, (3, 3): 2}


def test_diagonal_fast_path_agrees():
    for G in [make_gamma_pq(5, 2), make_gamma_pq(7, 3), make_scalar_cyclic(4, 3), make_gamma_pq(9, 8)]:
        assert phi_diagonal_moment(G) == phi_gamma(G).diagonal().to_moment()
    with pytest.raises(BadParameters):
        phi_diagonal_moment(make_dihedral(3))


def test_trivial_group():
    G = make_scalar_cyclic(1, 2)
    assert phi_gamma(G) == HermPoly.inner_product(None, 2)


def test_dihedral_and_metacyclic_match_direct():
    for p in range(2, 9):
        assert phi_dihedral(p).diagonal() == phi_gamma(make_dihedral(p)).diagonal()
        B = UnitaryMatrix.diagonal([root_of_unity(4, 1), root_of_unity(4, 1)])
        if p % 2:
            assert phi_metacyclic(p, 4, B) == phi_gamma(make_metacyclic(p, 4, B))
        assert phi_metacyclic(p, 2, swap_matrix()) == phi_gamma(make_dihedral(p))


def test_example_3_3_formula():
    G = make_example_3_3()
    phi = phi_gamma(G).diagonal()
    assert example_3_3_formula() == phi
    assert coeff_matrix(phi).size == 11


def test_reynolds_and_noether_basis():
    G = make_example_3_3()
    eta = root_of_unity(3, 1)
    z1, z2 = HolPoly.variable(2, 0), HolPoly.variable(2, 1)
    p_inv = z1**3 + z2**3
    q_inv = z1**2 * z2 + (z1 * z2**2).scale(eta)
    basis = noether_basis(G)
    for inv in (p_inv, q_inv):
        assert reynolds_average(G, inv) == inv
        assert any(b == inv.normalized() for b in basis)
    for b in basis:
        assert all(b.compose(g) == b for g in G)
    assert reynolds_average(G, z1).is_zero()


def test_verify_invariant_report():
    rep = verify_invariant(make_dihedral(4))
    assert rep.ok and rep.degree_z == 8
    assert set(rep.to_json()) >= {"property_1_constant_term_zero", "property_4_group_invariant", "ok"}


def test_verify_invariant_detects_perturbation():
    G = make_gamma_pq(5, 2)
    phi = phi_gamma(G)
    (a, b), c = next(iter(phi.items()))
    bumped = phi + HermPoly.monomial(a, b, 1)
    rep = verify_invariant(G, bumped)
    assert not rep.ok
    # a non-invariant monomial breaks invariance only
    odd = phi + HermPoly.monomial((1, 0), (0, 0)) + HermPoly.monomial((0, 0), (1, 0))
    rep = verify_invariant(G, odd)
    assert not rep.invariant and not rep.ok


def test_properties_on_small_groups():
    for G in all_small_groups(10):
        rep = verify_invariant(G)
        assert rep.ok, (G.labels, rep.to_json())
