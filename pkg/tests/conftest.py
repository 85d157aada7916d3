from nudd.mpcore import Precision
import pytest


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
            help='run desk-scale simulations')


def pytest_configure(config):
    config.addinivalue_line('markers',
            'slow: desk-scale simulation, needs --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def precision():
    with Precision(60) as context:
        yield context


@pytest.fixture
def rng():
    import numpy
    return numpy.random.default_rng(20240601)
