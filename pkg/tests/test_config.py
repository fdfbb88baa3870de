import pathlib

import pytest

from iquantum import config
from iquantum import exceptions
from iquantum.console_script import build_parser
from iquantum.enums import DiagramType, HallMethod, Labels, Level
from iquantum.iqg import Caps
from iquantum.scalars import V


@pytest.fixture(autouse=True)
def no_worker_env(monkeypatch):
    monkeypatch.delenv(config.WORKERS_ENV, raising=False)


def load(*argv):
    return config.load(build_parser().parse_args(list(argv)))


def test_defaults():
    cfg = load('iseq')
    assert (cfg.diagram_type, cfg.rank) == (DiagramType.A, 2)
    assert cfg.tau == 'id'
    assert cfg.labels is Labels.STANDARD
    assert cfg.level is Level.UNIVERSAL
    assert cfg.params is None
    assert cfg.caps == Caps()
    assert cfg.q == 2
    assert cfg.primes == [2, 3, 5]
    assert cfg.method is HallMethod.FILTRATION
    assert cfg.workers is None
    assert not cfg.extended
    assert cfg.datum.label() == 'A2'


def test_config_file_and_flags(tmp_path):
    path = tmp_path / 'run.ini'
    path.write_text('[diagram]\n'
                    'type = A\n'
                    'rank = 3\n'
                    'tau = diagram\n'
                    'orientation = 1->2, 3->2\n'
                    '[caps]\n'
                    'completion = 10\n'
                    'iota = 6\n'
                    '[hall]\n'
                    'q = 3\n'
                    'primes = 2, 3, 5, 7\n'
                    '[run]\n'
                    'workers = 4\n', encoding='utf-8')
    cfg = load(str(path), 'iseq')
    assert cfg.rank == 3
    assert cfg.tau == 'diagram'
    assert cfg.orientation == [(1, 2), (3, 2)]
    assert cfg.caps.completion == 10 and cfg.caps.iota == 6
    assert cfg.q == 3
    assert cfg.primes == [2, 3, 5, 7]
    assert cfg.workers == 4
    assert cfg.datum.reps.reps == (1, 2)

    cfg = load(str(path), 'iseq', '--q', '5', '--cap', '8', '--tau', 'id')
    assert cfg.q == 5
    assert cfg.caps.completion == 8
    assert cfg.tau == 'id'
    assert cfg.datum.reps.reps == (1, 2, 3)


def test_custom_parameters_in_file(tmp_path):
    path = tmp_path / 'params.ini'
    path.write_text('[parameters]\n'
                    'kind = custom\n'
                    's1 = -v^-4\n'
                    's2 = -v^-4\n'
                    '[run]\n'
                    'level = parameter\n', encoding='utf-8')
    cfg = load(str(path), 'pbw')
    assert cfg.level is Level.PARAMETER
    assert cfg.params == {1: -(V ** -4), 2: -(V ** -4)}
    assert cfg.to_json()['params'] == {'s1': '-v^-4', 's2': '-v^-4'}


def test_worker_environment_caps_workers(monkeypatch):
    monkeypatch.setenv(config.WORKERS_ENV, '2')
    assert load('iseq', '--workers', '8').workers == 2
    assert load('iseq', '--workers', '1').workers == 1
    assert load('iseq').workers == 2
    with pytest.raises(exceptions.ConfigError):
        load('iseq', '--workers', '0')


@pytest.mark.parametrize('argv', [
    ['iseq', '--diagram', 'B3'],
    ['iseq', '--diagram', 'A2', '--tau', 'diagram'],
    ['iseq', '--diagram', 'A3', '--orientation', '1->2, 2->3',
     '--tau', 'diagram'],
    ['iseq', '--param', 's1=1, s2=1'],
    ['iseq', '--param', 's1=w'],
])
def test_invalid_configurations(argv):
    with pytest.raises(exceptions.ConfigError):
        load(*argv)


def test_to_json():
    cfg = load('iseq', '--diagram', 'A3', '--tau', 'diagram')
    report = cfg.to_json()
    assert report['diagram'] == 'A3'
    assert report['orientation'] == '1->2,3->2'
    assert report['params'] == 'distinguished'
    assert report['caps']['module_dim'] == 6


def test_example_config():
    path = pathlib.Path(__file__).parent.parent / 'example_config.ini'
    cfg = load(str(path), 'iseq')
    assert cfg.datum.label() == 'A3'
    assert cfg.tau == 'diagram'
    assert cfg.orientation == [(1, 2), (3, 2)]
    assert cfg.params is None
    assert cfg.caps == Caps()
    assert cfg.module_dim == 6 and cfg.rank_cap == 3
    assert not cfg.extended


def test_config_error_message():
    with pytest.raises(exceptions.ConfigError) as excinfo:
        load('iseq', '--diagram', 'A2', '--tau', 'diagram')
    assert 'InvalidInvolution' not in str(excinfo.value)
    assert str(excinfo.value)
