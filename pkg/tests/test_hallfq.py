import collections
import random
from fractions import Fraction

import pytest

from iquantum import exceptions
from iquantum import hallfq
from iquantum import iqg
from iquantum import iseq
from iquantum import rootdata
from iquantum.boundalg import BoundAlgebra, FqRep
from iquantum.enums import HallMethod, Level
from iquantum.rootdata import bs_apply
from iquantum.scalars import QuadNum, V


@pytest.fixture(scope='module')
def a1_catalog(a1):
    return hallfq.Catalog(BoundAlgebra(a1.quiver), 2)


@pytest.fixture(scope='module')
def a2_catalog(a2_forward):
    return hallfq.Catalog(BoundAlgebra(a2_forward.quiver), 2)


def elem(catalog, *labels, coeff=1):
    return hallfq.element(catalog, catalog.class_of(labels), coeff)


def test_catalog_arguments(a1):
    with pytest.raises(ValueError):
        hallfq.Catalog(BoundAlgebra(a1.quiver), 4)
    catalog = hallfq.Catalog(BoundAlgebra(a1.quiver), 3, dim_cap=2)
    with pytest.raises(exceptions.SizeCapExceeded):
        catalog.ensure(3)
    with pytest.raises(KeyError):
        catalog.find('S7')


def test_a1_classes(a1_catalog):
    keys = list(a1_catalog.classes_of_dims((2,)))
    assert sorted(a1_catalog.label(k) for k in keys) == ['E1', 'S1+S1']
    assert a1_catalog.aut(a1_catalog.class_of(['E1'])) == 2
    assert a1_catalog.aut(a1_catalog.class_of(['S1', 'S1'])) == 6
    assert hallfq.count_indecomposables(a1_catalog, 3) == 2
    e1 = a1_catalog.indecomposables[a1_catalog.find('E1')]
    assert not e1.kq and e1.finite_pd


def test_a1_product(a1_catalog):
    s = elem(a1_catalog, 'S1')
    untwisted = hallfq.hall_product(s, s, a1_catalog, twisted=False)
    assert hallfq.format_element(untwisted, a1_catalog) == {
        'E1': '1/2', 'S1+S1': '1/2'}
    twisted = hallfq.hall_product(s, s, a1_catalog)
    root = QuadNum.sqrt_power(2, 1)
    assert twisted == {k: c * root for k, c in untwisted.items()}
    by_extensions = hallfq.hall_product(s, s, a1_catalog, twisted=False,
                                        method=HallMethod.EXTENSION)
    assert by_extensions == untwisted


def test_a1_reduced_normal_form(a1, a1_catalog):
    params = iqg.distinguished_parameters(a1)
    x = elem(a1_catalog, 'E1')
    assert a1_catalog.reduced_normal_form(x, params, ()) == {
        ((), ()): QuadNum(1, 0, 2)}


@pytest.mark.parametrize('q', [2, 3])
def test_a2_commutator(a2_forward, q):
    catalog = hallfq.Catalog(BoundAlgebra(a2_forward.quiver), q)
    s1, s2 = elem(catalog, 'S1'), elem(catalog, 'S2')
    left = hallfq.scale(hallfq.hall_product(s1, s2, catalog),
                        QuadNum.sqrt_power(q, 1))
    right = hallfq.hall_product(s2, s1, catalog)
    difference = hallfq.add(left, hallfq.scale(right, -1))
    assert difference == elem(catalog, 'M(1,1)', coeff=q - 1)


def test_a2_counts(a2_catalog):
    assert hallfq.count_indecomposables(a2_catalog, 2) == 5
    labels = {x.label for x in a2_catalog.indecomposables
              if x.rep.total <= 2}
    assert labels == {'S1', 'S2', 'M(1,1)', 'E1', 'E2'}
    report = hallfq.validate_enumeration(a2_catalog, (1, 1))
    assert report['passed'], report


@pytest.mark.parametrize('q', [2, 3])
def test_a3_diagram_product(a3_diagram, q):
    catalog = hallfq.Catalog(BoundAlgebra(a3_diagram.quiver), q)
    s1, s2, s3 = (elem(catalog, f'S{i}') for i in (1, 2, 3))
    product = hallfq.hall_product(hallfq.hall_product(s2, s1, catalog), s3,
                                  catalog)
    expected = hallfq.add(elem(catalog, 'S1', 'S2', 'S3'),
                          elem(catalog, 'S2', 'E1', coeff=q - 1))
    assert product == expected


@pytest.mark.parametrize('diagram', [
    ('A', 1, None, 'id'),
    pytest.param(('A', 2, [(1, 2)], 'id'), marks=pytest.mark.slow),
    pytest.param(('A', 3, [(1, 2), (3, 2)], 'diagram'),
                 marks=pytest.mark.slow),
])
def test_validation(diagram):
    diagram_type, rank, orientation, tau = diagram
    datum = rootdata.build(diagram_type, rank, orientation, tau)
    catalog = hallfq.Catalog(BoundAlgebra(datum.quiver), 2)
    conversion = hallfq.validate_conversion(catalog)
    assert conversion['pairs'] > 0
    assert conversion['passed'], conversion['mismatches']
    report = hallfq.check_associativity(
        hallfq.Catalog(BoundAlgebra(datum.quiver), 2), samples=50, seed=1)
    assert report['samples'] == 50
    assert report['passed'], report['failures']
    with pytest.raises(ValueError):
        hallfq.check_associativity(catalog, total=2)


def test_conversion_needs_classes(a1):
    catalog = hallfq.Catalog(BoundAlgebra(a1.quiver), 2)
    with pytest.raises(exceptions.IQuantumError):
        hallfq.validate_conversion(catalog, total=1)


def test_enumeration_counts_every_representation(a1_catalog):
    report = hallfq.validate_enumeration(a1_catalog, (2,))
    assert report['representations'] == 4
    assert report['passed']


def test_reflect_module():
    datum = rootdata.build('A', 2, orientation=[(2, 1)])
    catalog = hallfq.Catalog(BoundAlgebra(datum.quiver), 2)
    rep_of = {label: catalog.indecomposables[catalog.find(label)].rep
              for label in ('S1', 'S2', 'M(1,1)', 'E1')}
    assert hallfq.reflect_module(rep_of['M(1,1)'], 1).dims == (0, 1)
    assert hallfq.reflect_module(rep_of['S1'], 1).dims == (0, 0)
    reflected = hallfq.reflect_module(rep_of['S2'], 1)
    assert reflected.dims == (1, 1)
    assert reflected.algebra.quiver.orientation == frozenset({(1, 2)})
    assert reflected.satisfies_relations()
    with pytest.raises(exceptions.NotASink):
        hallfq.reflect_module(rep_of['S2'], 2)
    with pytest.raises(ValueError):
        hallfq.reflect_module(rep_of['E1'], 1)


def test_generic_coefficient(a1):
    coefficient = hallfq.hall_generic_coefficient(
        a1.quiver, ['S1'], ['S1'], ['E1'], [2, 3, 5], 2)
    assert coefficient == 1 - V ** -2
    with pytest.raises(exceptions.InsufficientSamples):
        hallfq.hall_generic_coefficient(a1.quiver, ['S1'], ['S1'], ['E1'],
                                        [2, 3], 2)


def test_psi_images(a1, a1_catalog):
    group = iqg.IQuantumGroup(a1)
    assert hallfq.psi(group.B(1), group, a1_catalog) == \
        elem(a1_catalog, 'S1', coeff=-1)
    assert hallfq.psi(group.k(1), group, a1_catalog) == \
        elem(a1_catalog, 'E1', coeff=Fraction(-1, 2))
    with pytest.raises(ValueError):
        hallfq.psi(group.k(1, -1), group, a1_catalog)


def test_psi_cross_check_a1(a1, a1_catalog):
    group = iqg.IQuantumGroup(a1)
    report = hallfq.psi_cross_check([1, 1, 1], group, a1_catalog)
    assert report['word'] == ['B1', 'B1', 'B1']
    assert report['equal']


@pytest.mark.slow
def test_psi_cross_check_a2(a2_split):
    group = iqg.IQuantumGroup(a2_split)
    catalog = hallfq.Catalog(BoundAlgebra(a2_split.quiver), 2)
    assert hallfq.psi_cross_check([2, 1, 1], group, catalog)['equal']


@pytest.mark.slow
def test_root_vector_check(a2_split):
    group = iqg.IQuantumGroup(a2_split, Level.PARAMETER)
    catalog = hallfq.Catalog(BoundAlgebra(a2_split.quiver), 2)
    seq = iseq.i_admissible_complete(a2_split)
    vectors = iqg.q_root_vectors(group, seq)
    assert hallfq.root_vector_check(vectors, group, catalog)['passed']
    with pytest.raises(ValueError):
        hallfq.root_vector_check(vectors, iqg.IQuantumGroup(a2_split),
                                 catalog)


def test_generalized_simple_helpers(a2_catalog):
    index = a2_catalog.generalized_simple(2)
    x = a2_catalog.indecomposables[index]
    assert x.label == 'E2'
    assert x.rep.dims == FqRep.generalized_simple(
        a2_catalog.algebra, 2, 2).dims
    assert a2_catalog.label(a2_catalog.class_of(['S2', 'S1'])) == 'S1+S2'


def test_split_a2_indecomposable_count(a2_catalog):
    assert hallfq.count_indecomposables(a2_catalog, 6) == 9


@pytest.mark.slow
def test_quasi_split_a3_indecomposable_counts(a3_diagram):
    catalog = hallfq.Catalog(BoundAlgebra(a3_diagram.quiver), 2, dim_cap=11)
    catalog.ensure(11)
    by_total = collections.Counter(x.rep.total
                                   for x in catalog.indecomposables)
    assert [by_total[t] for t in range(1, 12)] == \
        [3, 5, 5, 7, 6, 6, 4, 3, 1, 1, 1]
    assert len(catalog.indecomposables) == 42


@pytest.mark.parametrize('diagram, sink', [
    (('A', 2, [(1, 2)], 'id'), 2),
    (('A', 3, None, 'id'), 3),
    (('A', 3, [(1, 2), (3, 2)], 'diagram'), 2),
])
def test_reflection_of_every_kq_indecomposable(diagram, sink):
    diagram_type, rank, orientation, tau = diagram
    datum = rootdata.build(diagram_type, rank, orientation, tau)
    catalog = hallfq.Catalog(BoundAlgebra(datum.quiver), 2)
    catalog.ensure(rank)
    modules = [x.rep for x in catalog.indecomposables if x.kq]
    assert len(modules) == len(datum.roots.positive)
    for module in modules:
        reflected = hallfq.reflect_module(module, sink)
        if module.total == 1 and \
                (module.dim(sink) or module.dim(datum.t(sink))):
            assert reflected.total == 0
            continue
        assert reflected.dims == tuple(bs_apply(datum, sink, module.dims))
        assert reflected.satisfies_relations()
        target = hallfq.Catalog(reflected.algebra, 2)
        key = target.classify(reflected)
        assert len(key) == 1 and key[0][1] == 1, target.label(key)


def test_generalized_simples_are_central(a2_forward):
    catalog = hallfq.Catalog(BoundAlgebra(a2_forward.quiver), 2)
    params = iqg.distinguished_parameters(a2_forward)
    for i in a2_forward.nodes:
        e = hallfq.element(catalog, ((catalog.generalized_simple(i), 1),))
        for label in ('S1', 'S2', 'M(1,1)'):
            x = elem(catalog, label)
            left = hallfq.hall_product(e, x, catalog)
            right = hallfq.hall_product(x, e, catalog)
            assert catalog.reduced_normal_form(left, params, ()) == \
                catalog.reduced_normal_form(right, params, ())


@pytest.mark.slow
@pytest.mark.parametrize('q', [2, 3])
def test_psi_cross_check_random_words(a2_split, q):
    group = iqg.IQuantumGroup(a2_split)
    catalog = hallfq.Catalog(BoundAlgebra(a2_split.quiver), q)
    rng = random.Random(q)
    for _ in range(10):
        word = [rng.choice(a2_split.nodes)
                for _ in range(rng.randint(1, 3))]
        assert hallfq.psi_cross_check(word, group, catalog)['equal'], word


@pytest.mark.slow
@pytest.mark.parametrize('word', [[2], [1, 3], [2, 1, 3], [1, 2, 1]])
def test_psi_cross_check_a3_diagram(a3_diagram, word):
    group = iqg.IQuantumGroup(a3_diagram)
    catalog = hallfq.Catalog(BoundAlgebra(a3_diagram.quiver), 2)
    assert hallfq.psi_cross_check(word, group, catalog)['equal']


@pytest.mark.slow
@pytest.mark.parametrize('q', [2, 3])
def test_root_vector_check_a3_diagram(a3_diagram, q):
    group = iqg.IQuantumGroup(a3_diagram, Level.PARAMETER)
    catalog = hallfq.Catalog(BoundAlgebra(a3_diagram.quiver), q)
    seq = iseq.i_admissible_complete(a3_diagram)
    vectors = iqg.q_root_vectors(group, seq)
    report = hallfq.root_vector_check(vectors, group, catalog)
    assert report['passed'], report
