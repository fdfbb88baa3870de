import pytest

from iquantum import exceptions
from iquantum import freealg
from iquantum.scalars import ONE, V


@pytest.fixture
def commuting():
    alphabet = freealg.Alphabet(['x', 'y'], [(1, 0), (0, 1)])
    x, y = alphabet.gen('x'), alphabet.gen('y')
    system = freealg.complete(alphabet, [y * x - x * y], cap=6)
    return alphabet, x, y, system


def test_arithmetic():
    alphabet = freealg.Alphabet(['x', 'y'], [(1,), (1,)])
    x, y = alphabet.gen('x'), alphabet.gen('y')
    assert (x + y) * (x + y) == x * x + x * y + y * x + y * y
    assert (x - x).is_zero()
    assert (x + 1) - 1 == x
    assert (x * 2).scale(V) == x.scale(2 * V)
    assert (x + y) ** 2 == (x + y) * (x + y)
    assert freealg.v_comm(x, y, V) == x * y - (y * x).scale(V)
    assert (x * y * x).degree() == 3
    assert (x * y + y * x).leading() == ((1, 0), ())
    with pytest.raises(ValueError):
        x ** -1


def test_weights():
    alphabet = freealg.Alphabet(['x', 'y'], [(1, 0), (0, 1)])
    x, y = alphabet.gen('x'), alphabet.gen('y')
    assert (x * y + y * x).is_homogeneous()
    assert not (x + y).is_homogeneous()
    assert alphabet.weight((0, 1, 1)) == (1, 2)


def test_mixing_alphabets():
    a = freealg.Alphabet(['x'], [(1,)])
    b = freealg.Alphabet(['x'], [(1,)])
    with pytest.raises(ValueError):
        a.gen('x') + b.gen('x')


def test_torus_commutation():
    alphabet = freealg.Alphabet(['x'], [(1,)], torus=['t'], pairing=[[1]])
    x, t = alphabet.gen('x'), alphabet.torus_element({'t': 1})
    assert t * x == (x * t).scale(V)
    assert t * alphabet.torus_element({'t': -1}) == alphabet.one()
    assert x.times_torus((2,)) == x * t * t


def test_commuting_normal_form(commuting):
    alphabet, x, y, system = commuting
    assert system.rules == {(1, 0): x * y}
    assert system.normal_form(y * x * y) == x * y * y
    assert system.is_zero(y * x - x * y)
    assert system.is_normal((0, 0, 1))
    assert not system.is_normal((1, 0))
    assert system.recheck() == []
    assert 'y*x -> x*y' in system.dump()


def test_cap(commuting):
    alphabet, x, y, system = commuting
    with pytest.raises(exceptions.CapExceeded):
        system.normal_form(x ** 7)
    with pytest.raises(exceptions.CapExceeded):
        freealg.complete(alphabet, [x ** 3 - y], cap=2)


def test_three_commuting_letters():
    alphabet = freealg.Alphabet(['x', 'y', 'z'], [(1,), (1,), (1,)])
    x, y, z = (alphabet.gen(n) for n in 'xyz')
    system = freealg.complete(alphabet, [y * x - x * y, z * x - x * z,
                                         z * y - y * z], cap=5)
    assert system.normal_form(z * y * x) == x * y * z
    assert system.recheck() == []


def test_rank_and_solve():
    alphabet = freealg.Alphabet(['x', 'y'], [(1,), (1,)])
    x, y = alphabet.gen('x'), alphabet.gen('y')
    assert freealg.rank([x, y, x + y]) == 2
    assert freealg.linear_solve([x + y], [x, y]) == [[ONE, ONE]]
    with pytest.raises(exceptions.Unsolvable):
        freealg.linear_solve([x * y], [x, y])
    relations = freealg.nullspace([x, y, x + y])
    assert len(relations) == 1
    a, b, c = relations[0]
    assert a == b == -c
    coeffs, = freealg.linear_solve([x.scale(V) - y], [x, y])
    assert freealg.combine(coeffs, [x, y]) == x.scale(V) - y


def test_rank_modulo_system(commuting):
    alphabet, x, y, system = commuting
    assert freealg.rank([x * y, y * x]) == 2
    assert freealg.rank([x * y, y * x], system) == 1
