import json
import random

import pytest

from invariantcr.cyclotomic import root_of_unity
from invariantcr.errors import BadParameters, EnumerationInvalid, NotUnitary, OrderExceeded
from invariantcr.groups import (
    UnitaryGroup,
    UnitaryMatrix,
    all_small_groups,
    close_group,
    generators_from_json,
    make_cyclic,
    make_dihedral,
    make_example_3_3,
    make_gamma_pq,
    make_metacyclic,
    make_scalar_cyclic,
    metacyclic_enumeration,
    swap_matrix,
)


def z(n, k=1):
    return root_of_unity(n, k)


def test_close_group_examples():
    assert close_group([UnitaryMatrix.identity(2)]).order == 1
    G = close_group([UnitaryMatrix.diagonal([z(6), z(6)])])
    assert G.order == 6
    A = UnitaryMatrix.diagonal([z(5), z(5, 4)])
    assert close_group([A, swap_matrix()]).order == 10


def test_close_group_errors():
    with pytest.raises(NotUnitary):
        close_group([UnitaryMatrix([[1, 1], [0, 1]])])
    with pytest.raises(OrderExceeded):
        close_group([UnitaryMatrix.diagonal([z(7), 1])], max_order=5)
    with pytest.raises(BadParameters):
        close_group([])


def test_gamma_pq():
    G = make_gamma_pq(2, 1)
    assert set(G) == {UnitaryMatrix.identity(2), UnitaryMatrix.diagonal([-1, -1])}
    G65 = make_gamma_pq(6, 5)
    gen = UnitaryMatrix.diagonal([z(6), z(6).conj()])
    assert gen in G65 and G65.order == 6
    G72 = make_gamma_pq(7, 2)
    assert G72.order == 7 and G72.is_diagonal()
    assert G72.element_set() == close_group([UnitaryMatrix.diagonal([z(7), z(7, 2)])]).element_set()
    for bad in [(1, 1), (5, 0), (5, 5)]:
        with pytest.raises(BadParameters):
            make_gamma_pq(*bad)


def test_scalar_cyclic():
    assert make_scalar_cyclic(6, 2).element_set() == close_group([UnitaryMatrix.diagonal([z(6), z(6)])]).element_set()
    T = make_scalar_cyclic(1, 3)
    assert T.order == 1 and T.dim == 3
    assert make_scalar_cyclic(5, 2).order == 5
    with pytest.raises(BadParameters):
        make_scalar_cyclic(0, 2)


def test_dihedral_relations():
    assert make_dihedral(2).order == 4
    D5 = make_dihedral(5)
    A = UnitaryMatrix.diagonal([z(5), z(5, 4)])
    B = swap_matrix()
    assert D5.order == 10
    assert (A**5).is_identity() and (B**2).is_identity()
    assert A @ B == B @ A**4
    assert A in D5 and B in D5
    assert make_dihedral(8).element_set() == close_group([UnitaryMatrix.diagonal([z(8), z(8, 7)]), B]).element_set()


def test_metacyclic():
    G = make_metacyclic(4, 1, UnitaryMatrix.identity(2))
    assert G.element_set() == make_gamma_pq(4, 3).element_set()
    assert make_metacyclic(5, 2, swap_matrix()).element_set() == make_dihedral(5).element_set()
    B = UnitaryMatrix.diagonal([z(4), z(4)])
    G = make_metacyclic(3, 4, B)
    oracle = close_group([UnitaryMatrix.diagonal([z(3), z(3, 2)]), B], max_order=48)
    assert G.order == 12 and G.element_set() == oracle.element_set()
    with pytest.raises(EnumerationInvalid):
        # B^2 = -I = A^2 when p = 4: cosets collide
        metacyclic_enumeration(4, 4, B)


def test_every_element_unitary_and_closed():
    for G in all_small_groups(12):
        assert all(g.is_unitary() for g in G)
        assert G.is_closed()
        assert len(G.element_set()) == G.order


def test_closure_order_independent():
    gens = [UnitaryMatrix.diagonal([z(6), z(6, 5)]), swap_matrix(), UnitaryMatrix.diagonal([z(4), z(4)])]
    ref = close_group(gens).element_set()
    rng = random.Random(7)
    first = [g.key() for g in close_group(gens)]
    for _ in range(4):
        rng.shuffle(gens)
        G = close_group(gens)
        assert G.element_set() == ref
        assert [g.key() for g in G] == first


def test_json_roundtrip():
    G = make_example_3_3()
    data = json.loads(json.dumps(G.to_json()))
    assert set(data) >= {"dim", "elements", "labels"}
    H = UnitaryGroup.from_json(data)
    assert H.element_set() == G.element_set()
    gens = generators_from_json({"dim": 2, "elements": [g.to_json() for g in [swap_matrix()]]})
    assert close_group(gens).order == 2


def test_example_3_3_group():
    G = make_example_3_3()
    assert G.order == 6
    assert not G.is_diagonal()
    A = UnitaryMatrix([[0, 1], [z(3), 0]])
    assert make_cyclic(A).element_set() == G.element_set()
    assert A**2 == UnitaryMatrix.diagonal([z(3), z(3)])
