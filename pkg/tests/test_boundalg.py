import numpy as np
import pytest

from iquantum import boundalg
from iquantum import exceptions
from iquantum.boundalg import FqRep


@pytest.fixture(scope='module')
def a2_algebra(a2_forward):
    return boundalg.build_bound_algebra(a2_forward.quiver)


def test_relations(a2_forward, a3_diagram):
    algebra = boundalg.BoundAlgebra(a2_forward.quiver)
    assert [a.name for a in algebra.arrows] == ['1->2', 'e1', 'e2']
    assert len(algebra.relations) == 3
    assert len(boundalg.BoundAlgebra(a3_diagram.quiver).relations) == 5
    assert 'e1*e1 = 0' in algebra.format_relations()


def test_rank_cap(a3_diagram):
    with pytest.raises(exceptions.RankCapExceeded):
        boundalg.build_bound_algebra(a3_diagram.quiver, rank_cap=2)


def test_generalized_simples(a2_algebra, a3_diagram):
    e1 = FqRep.generalized_simple(a2_algebra, 2, 1)
    assert e1.dims == (2, 0)
    assert e1.satisfies_relations()
    assert e1.has_finite_pd()
    assert not e1.is_kq()
    algebra = boundalg.BoundAlgebra(a3_diagram.quiver)
    e3 = FqRep.generalized_simple(algebra, 3, 1)
    assert e3.dims == (1, 0, 1)
    assert e3.satisfies_relations()
    assert e3.has_finite_pd()


def test_simple_has_infinite_projective_dimension(a2_algebra):
    s1 = FqRep.simple(a2_algebra, 2, 1)
    assert s1.is_kq()
    assert not s1.has_finite_pd()


def test_from_maps_checks_relations(a2_algebra):
    good = FqRep.from_maps(a2_algebra, 2, (1, 1), {'1->2': [[1]]})
    assert good.satisfies_relations()
    bad = FqRep.from_maps(a2_algebra, 3, (1, 1),
                          {'1->2': [[1]], 'e1': [[1]]})
    assert not bad.satisfies_relations()


def test_hom_ext_dims(a2_algebra):
    s1 = FqRep.simple(a2_algebra, 2, 1)
    s2 = FqRep.simple(a2_algebra, 2, 2)
    assert boundalg.hom_ext_dims(s1, s1) == (1, 1)
    assert boundalg.hom_ext_dims(s1, s2) == (0, 1)
    assert boundalg.hom_ext_dims(s2, s1) == (0, 0)


def test_extension_of_simple_by_itself(a2_algebra):
    s1 = FqRep.simple(a2_algebra, 2, 1)
    ext = boundalg.ext_classes(s1, s1)
    middle = boundalg.extension(ext, [1])
    assert middle.dims == (2, 0)
    assert middle.satisfies_relations()
    assert not middle.is_kq()
    assert middle.has_finite_pd()
    split = boundalg.extension(ext, [0])
    assert split.is_kq()


def test_hom_elements_and_compose(a2_algebra):
    m = FqRep.from_maps(a2_algebra, 3, (1, 1), {'1->2': [[1]]})
    s2 = FqRep.simple(a2_algebra, 3, 2)
    homs = list(boundalg.hom_elements(s2, m))
    assert len(homs) == 3
    identity = boundalg.hom_basis(m, m)
    assert len(identity) == 1
    f = identity[0]
    g = boundalg.compose(f, f, 3)
    assert all(np.array_equal(a, b % 3) for a, b in
               zip(g, [(x @ x) % 3 for x in f]))


def test_kernel_and_cokernel(a2_algebra):
    m = FqRep.from_maps(a2_algebra, 2, (1, 1), {'1->2': [[1]]})
    s2 = FqRep.simple(a2_algebra, 2, 2)
    f, = boundalg.hom_basis(s2, m)
    assert boundalg.is_injective(f, s2)
    assert not boundalg.is_surjective(f, m)
    quotient = boundalg.cokernel(f, m)
    assert quotient.dims == (1, 0)
    g, = boundalg.hom_basis(m, quotient)
    sub = boundalg.kernel(g, m)
    assert sub.dims == (0, 1)


def test_linear_algebra_mod_p():
    a = np.array([[1, 1], [1, 1]])
    assert boundalg.rank_mod(a, 2) == 1
    assert boundalg.rank_mod(np.array([[1, 1], [1, -1]]), 2) == 1
    assert boundalg.rank_mod(np.array([[1, 1], [1, -1]]), 3) == 2
    basis = boundalg.nullspace_mod(a, 2)
    assert basis.shape == (2, 1)
    assert not ((a @ basis) % 2).any()
    assert boundalg.gl_order(2, 2) == 6
    assert boundalg.gl_order(1, 3) == 2


def test_brute_force_count(a1):
    algebra = boundalg.BoundAlgebra(a1.quiver)
    reps = list(boundalg.all_representations(algebra, 2, (2,)))
    assert len(reps) == 4
    assert all(r.satisfies_relations() for r in reps)
