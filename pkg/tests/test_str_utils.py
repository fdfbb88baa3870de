import pytest

from iquantum import str_utils
from iquantum.enums import DiagramType
from iquantum.scalars import ONE, V


def test_parse_diagram():
    assert str_utils.parse_diagram('A3') == (DiagramType.A, 3)
    assert str_utils.parse_diagram(' e6 ') == (DiagramType.E, 6)
    for bad in ('B3', 'A', '3A', 'A3x'):
        with pytest.raises(ValueError):
            str_utils.parse_diagram(bad)


def test_parse_orientation():
    assert str_utils.parse_orientation('1->2, 3->2') == [(1, 2), (3, 2)]
    assert str_utils.parse_orientation('2<-1,-1->0') == [(1, 2), (-1, 0)]
    with pytest.raises(ValueError):
        str_utils.parse_orientation('1-2')


def test_parse_tau():
    assert str_utils.parse_tau('ID') == 'id'
    assert str_utils.parse_tau('diagram') == 'diagram'
    assert str_utils.parse_tau('1:3, 2:2, 3:1') == {1: 3, 2: 2, 3: 1}
    with pytest.raises(ValueError):
        str_utils.parse_tau('1=3')


def test_parse_params():
    assert str_utils.parse_params('distinguished') is None
    assert str_utils.parse_params('s1=-v^-4, s2=1') == {
        1: -(V ** -4), 2: ONE}
    with pytest.raises(ValueError):
        str_utils.parse_params('t1=1')


def test_parse_word_and_product():
    assert str_utils.parse_word('B1*B2*B1') == [1, 2, 1]
    with pytest.raises(ValueError):
        str_utils.parse_word('B1*k2')
    assert str_utils.parse_product('S1*S2+E1') == [['S1'], ['S2', 'E1']]
    assert str_utils.parse_product('M(1,1)') == [['M(1,1)']]
    with pytest.raises(ValueError):
        str_utils.parse_product('S1+*S2')


def test_parse_numbers():
    assert str_utils.parse_pair('1, 2') == (1, 2)
    with pytest.raises(ValueError):
        str_utils.parse_pair('1')
    assert str_utils.parse_int_list('2 3, 5') == [2, 3, 5]
    assert str_utils.parse_int_list('') == []
