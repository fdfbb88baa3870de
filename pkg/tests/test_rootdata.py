import pytest

from iquantum import exceptions
from iquantum import rootdata
from iquantum.rootdata import bs_apply, euler_form, reflect_quiver


@pytest.mark.parametrize('diagram_type, rank, positive', [
    ('A', 1, 1), ('A', 3, 6), ('A', 4, 10), ('D', 4, 12), ('D', 5, 20),
    ('E', 6, 36),
])
def test_positive_root_counts(diagram_type, rank, positive):
    datum = rootdata.build(diagram_type, rank)
    assert len(datum.roots.positive) == positive
    assert len(datum.roots.all_roots) == 2 * positive


def test_longest_element_negates_simple_roots(a3_diagram):
    roots = a3_diagram.roots
    w0 = roots.longest_element()
    word = roots.reduced_word(w0)
    assert len(word) == len(roots.positive)
    assert roots.word_to_perm(word) == w0
    for i in a3_diagram.nodes:
        image = roots.apply(w0, a3_diagram.simple(i))
        assert not roots.is_positive(image)


def test_restricted_weyl_a3_diagram(a3_diagram):
    assert a3_diagram.reps.reps == (1, 2)
    assert a3_diagram.weyl.m(1, 2) == 4
    assert a3_diagram.weyl.order() == 8
    assert a3_diagram.weyl.coxeter_type() == 'B2'


def test_restricted_weyl_split(a2_split):
    assert a2_split.weyl.m(1, 2) == 3
    assert a2_split.weyl.order() == 6
    assert a2_split.weyl.coxeter_type() == 'A2'


def test_restricted_weyl_d4_diagram():
    datum = rootdata.build('D', 4, tau='diagram')
    assert datum.t(3) == 4
    assert datum.weyl.coxeter_type() == 'B3'
    assert datum.weyl.order() == 48


@pytest.mark.extended
def test_restricted_weyl_e6_diagram():
    datum = rootdata.build('E', 6, tau='diagram')
    assert datum.t(1) == 6 and datum.t(2) == 5
    assert datum.is_fixed(3) and datum.is_fixed(4)
    assert datum.weyl.coxeter_type() == 'F4'
    assert datum.weyl.order() == 1152


def test_restricted_weyl_order_cap():
    datum = rootdata.build('D', 4)
    with pytest.raises(exceptions.SizeCapExceeded):
        datum.weyl.order(limit=10)


def test_symmetric_labels():
    datum = rootdata.build('A', 3, tau='diagram', labels='symmetric')
    assert datum.nodes == (-1, 0, 1)
    assert datum.t(-1) == 1
    assert datum.reps.reps == (0, 1)
    with pytest.raises(ValueError):
        rootdata.build('A', 4, tau='diagram', labels='symmetric')


def test_a2_has_no_diagram_involution():
    with pytest.raises(exceptions.InvalidInvolution):
        rootdata.build('A', 2, tau='diagram')


def test_invalid_orientation():
    with pytest.raises(exceptions.InvalidOrientation):
        rootdata.build('A', 3, orientation=[(1, 2), (2, 3)], tau='diagram')
    with pytest.raises(exceptions.InvalidOrientation):
        rootdata.build('A', 3, orientation=[(1, 2)])


def test_default_orientation_points_to_root_node():
    assert rootdata.build('A', 3).quiver.sinks() == [3]
    assert rootdata.build('A', 3, tau='diagram').quiver.sinks() == [2]
    assert rootdata.build('D', 4).quiver.sinks() == [2]


def test_bs_apply(a3_diagram):
    assert bs_apply(a3_diagram, 1, a3_diagram.simple(2)) == (1, 1, 1)
    assert bs_apply(a3_diagram, 2, a3_diagram.simple(2)) == (0, -1, 0)


def test_reflect_quiver():
    quiver = rootdata.build('A', 3, orientation=[(2, 1), (2, 3)]).quiver
    once = reflect_quiver(quiver, 1)
    assert once.orientation == frozenset({(1, 2), (2, 3)})
    twisted = rootdata.build('A', 3, orientation=[(2, 1), (2, 3)],
                             tau='diagram').quiver
    reflected = reflect_quiver(twisted, 1)
    assert reflected.orientation == frozenset({(1, 2), (3, 2)})
    assert reflect_quiver(reflected, 2).orientation == twisted.orientation
    with pytest.raises(exceptions.NotASink):
        reflect_quiver(twisted, 2)


def test_euler_form(a2_forward):
    quiver = a2_forward.quiver
    assert euler_form(quiver, (1, 0), (0, 1)) == -1
    assert euler_form(quiver, (0, 1), (1, 0)) == 0
    assert euler_form(quiver, (1, 1), (1, 1)) == 1
