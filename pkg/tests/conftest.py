import pytest

from iquantum import rootdata


def pytest_addoption(parser):
    parser.addoption('--run-slow', action='store_true', default=False,
                     help='run checks that take minutes')
    parser.addoption('--run-extended', action='store_true', default=False,
                     help='run type E and other extended checks')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: takes minutes')
    config.addinivalue_line('markers', 'extended: type E and larger cases')


def pytest_collection_modifyitems(config, items):
    skip_slow = pytest.mark.skip(reason='needs --run-slow')
    skip_extended = pytest.mark.skip(reason='needs --run-extended')
    for item in items:
        if 'slow' in item.keywords and not config.getoption('--run-slow'):
            item.add_marker(skip_slow)
        if 'extended' in item.keywords and \
                not config.getoption('--run-extended'):
            item.add_marker(skip_extended)


@pytest.fixture(scope='session')
def a1():
    return rootdata.build('A', 1)


@pytest.fixture(scope='session')
def a2_split():
    """A2 with the arrow 2 -> 1."""
    return rootdata.build('A', 2, orientation=[(2, 1)])


@pytest.fixture(scope='session')
def a2_forward():
    """A2 with the arrow 1 -> 2."""
    return rootdata.build('A', 2, orientation=[(1, 2)])


@pytest.fixture(scope='session')
def a3_diagram():
    """A3 with τ = (1 3) and both arrows pointing to node 2."""
    return rootdata.build('A', 3, orientation=[(1, 2), (3, 2)],
                          tau='diagram')
