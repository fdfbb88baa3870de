import pytest

from iquantum import exceptions
from iquantum import freealg
from iquantum.qgroup import build_ambient, validate_parameters
from iquantum.scalars import ONE, U, V, qint


def test_commutator_relation(a1):
    amb = build_ambient(a1)
    E, F = amb.E(1), amb.F(1)
    expected = F * E + (amb.K(1) - amb.Kp(1)).scale((V - V.inv()).inv())
    assert amb.normal_form(E * F) == expected


def test_torus_commutes_by_cartan(a2_split):
    amb = build_ambient(a2_split)
    assert amb.equal(amb.K(1) * amb.E(1), (amb.E(1) * amb.K(1)).scale(V ** 2))
    assert amb.equal(amb.K(1) * amb.E(2), (amb.E(2) * amb.K(1)).scale(V ** -1))
    assert amb.equal(amb.Kp(1) * amb.F(2),
                     (amb.F(2) * amb.Kp(1)).scale(V ** -1))


def test_serre_relation(a2_split):
    amb = build_ambient(a2_split)
    E1, E2 = amb.E(1), amb.E(2)
    serre = E1 * E1 * E2 - (E1 * E2 * E1).scale(qint(2)) + E2 * E1 * E1
    assert amb.is_zero(serre)
    assert not amb.is_zero(E1 * E2 - E2 * E1)


def test_pbw_words_are_independent(a2_split):
    amb = build_ambient(a2_split)
    E1, E2 = amb.E(1), amb.E(2)
    assert freealg.rank([E1, E2, E1 * E2, E2 * E1], amb.system) == 4


def test_reduced_algebra(a1):
    params = {1: -(V ** -2)}
    amb = build_ambient(a1, reduced=True, params=params)
    assert amb.equal(amb.K(1) * amb.Kp(1), amb.alphabet.scalar(-(V ** -2)))
    universal = build_ambient(a1)
    image = amb.reduce_map(universal.K(1) * universal.Kp(1))
    assert image == amb.alphabet.scalar(-(V ** -2))


def test_ambient_cache(a1):
    assert build_ambient(a1) is build_ambient(a1)
    assert build_ambient(a1) is not build_ambient(a1, cap=8)


def test_reduced_needs_parameters(a1):
    with pytest.raises(exceptions.InvalidParameter):
        build_ambient(a1, reduced=True)


def test_validate_parameters(a1, a3_diagram):
    assert validate_parameters(a1, {1: -(V ** 4)}) == {1: -(V ** 4)}
    for bad in ({}, {1: U}, {1: V * 2}, {1: V + 1}):
        with pytest.raises(exceptions.InvalidParameter):
            validate_parameters(a1, bad)
    with pytest.raises(exceptions.InvalidParameter):
        validate_parameters(a3_diagram, {1: ONE, 2: ONE, 3: V ** 2})
