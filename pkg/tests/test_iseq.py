import pytest

from iquantum import iseq
from iquantum import rootdata


def test_a3_diagram_sequence(a3_diagram):
    seq = iseq.i_admissible_complete(a3_diagram)
    assert seq.indices == (2, 1, 2, 1)
    assert seq.t_indices == (1, 2, 4, 5)
    assert len(seq.interleaved()) == len(a3_diagram.roots.positive)
    report = iseq.verify_i_admissible(seq.indices, a3_diagram)
    assert report['passed'], report['failures']
    assert report['betas'] == [list(b) for b in seq.betas]


def test_betas_from_indices_agree(a3_diagram):
    seq = iseq.i_admissible_complete(a3_diagram)
    assert tuple(iseq.betas_from_indices(a3_diagram, seq.indices)) == \
        seq.betas


def test_rejects_non_sink(a3_diagram):
    report = iseq.verify_i_admissible((1, 2, 1, 2), a3_diagram)
    assert not report['passed']
    assert report['failures'][0]['step'] == 1
    assert report['failures'][0]['condition'] == 'sink'


def test_rejects_non_representative(a3_diagram):
    report = iseq.verify_i_admissible((3,), a3_diagram)
    assert report['failures'][0]['condition'] == 'representative'


def test_rejects_short_sequence(a3_diagram):
    report = iseq.verify_i_admissible((2, 1), a3_diagram)
    assert report['failures'][0]['condition'] == 'coverage'
    assert report['failures'][0]['step'] == 3


def test_split_a2_ordering(a2_split):
    ordering = iseq.q_admissible_ordering(a2_split)
    assert ordering.sinks == (1, 2, 1)
    assert ordering.roots == ((1, 0), (1, 1), (0, 1))
    report = iseq.verify_i_admissible((1, 1), a2_split)
    assert report['failures'][0] == {
        'step': 2, 'condition': 'sink', 'index': 1,
        'orientation': '1->2'}


def test_a1():
    datum = rootdata.build('A', 1)
    seq = iseq.i_admissible_complete(datum)
    assert seq.indices == (1,)
    assert iseq.verify_i_admissible(seq.indices, datum)['passed']


def test_expand_word(a3_diagram):
    assert iseq.expand_word(a3_diagram, (2, 1)) == [2, 1, 3]


@pytest.mark.parametrize('diagram_type, rank, tau', [
    ('A', 1, 'id'), ('A', 2, 'id'), ('A', 3, 'id'), ('A', 4, 'id'),
    ('A', 3, 'diagram'), ('A', 5, 'diagram'),
    ('D', 4, 'id'), ('D', 4, 'diagram'), ('D', 5, 'diagram'),
    pytest.param('E', 6, 'id', marks=pytest.mark.extended),
    pytest.param('E', 6, 'diagram', marks=pytest.mark.extended),
])
def test_complete_sequences(diagram_type, rank, tau):
    datum = rootdata.build(diagram_type, rank, tau=tau)
    seq = iseq.i_admissible_complete(datum)
    n_orbits = iseq.count_orbits(datum)
    assert len(seq.indices) == n_orbits
    fixed_betas = sum(1 for b, tb in zip(seq.betas, seq.tau_betas)
                      if b == tb)
    assert 2 * n_orbits - fixed_betas == len(datum.roots.positive)
    assert all(datum.in_reps(i) for i in seq.indices)
    report = iseq.verify_i_admissible(seq.indices, datum)
    assert report['passed'], report['failures']
