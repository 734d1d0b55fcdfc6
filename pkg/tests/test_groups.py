import pytest
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import DihedralGroup, SymmetricGroup

from sftgalois.errors import InternalError
from sftgalois.groups import (
    GROUPS,
    FiniteGroupTable,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_isomorphism,
    klein_group,
    quaternion_group,
    subgroup_table,
    symmetric_group,
)

# (number of subgroups, number of normal subgroups)
LATTICES = {"Z2": (2, 2), "Z3": (2, 2), "Z4": (3, 3), "Z6": (4, 4), "Z2xZ2": (5, 5), "S3": (6, 3), "D4": (10, 6), "Q8": (6, 6)}


@pytest.mark.parametrize("key", sorted(GROUPS))
def test_subgroup_lattices(key):
    g = GROUPS[key]()
    g.check_axioms()
    subs = g.subgroups()
    assert (len(subs), sum(g.is_normal(h) for h in subs)) == LATTICES[key]
    assert all(len(g) % len(h) == 0 for h in subs)
    assert [len(h) for h in subs] == sorted(len(h) for h in subs)


@pytest.mark.parametrize("ours,theirs", [(symmetric_group(3), SymmetricGroup(3)), (dihedral_group(4), DihedralGroup(4))])
def test_orders_match_sympy(ours, theirs):
    assert ours.order == theirs.order()
    assert ours.is_abelian() == theirs.is_abelian
    ours_orders = sorted(ours.element_order(x) for x in range(ours.order))
    theirs_orders = sorted(p.order() for p in theirs.elements)
    assert ours_orders == theirs_orders


def test_isomorphism_classes():
    assert group_isomorphism(cyclic_group(4), klein_group()) is None
    assert group_isomorphism(direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6)) is not None
    assert group_isomorphism(dihedral_group(4), quaternion_group()) is None
    f = group_isomorphism(symmetric_group(3), dihedral_group(3))
    assert f is not None and symmetric_group(3).is_homomorphism(dihedral_group(3), f)


def test_quotients_and_cosets():
    g = cyclic_group(6)
    h = frozenset({0, 3})
    q, which = g.quotient(h)
    assert q.order == 3 and group_isomorphism(q, cyclic_group(3)) is not None
    assert which[1] == which[4]
    s3 = symmetric_group(3)
    order2 = next(h for h in s3.subgroups() if len(h) == 2)
    with pytest.raises(ValueError):
        s3.quotient(order2)
    assert len(s3.left_cosets(order2)) == 3


def test_generators_and_subgroup_tables():
    q8 = quaternion_group()
    gens = q8.generators()
    assert q8.closure(gens) == frozenset(range(8)) and len(gens) == 2
    h = next(h for h in q8.subgroups() if len(h) == 4)
    sub, elems = subgroup_table(q8, h)
    assert sub.is_cyclic() and sorted(elems) == sorted(h)


def test_rejects_non_groups():
    with pytest.raises(InternalError):
        FiniteGroupTable(["a", "b"], [[0, 0], [0, 0]])


def test_permutation_group_matches_sympy():
    gens = [(1, 0, 2, 3), (1, 2, 3, 0)]
    ours = symmetric_group(4)
    theirs = PermutationGroup([Permutation(list(p)) for p in gens])
    assert ours.order == theirs.order() == 24
