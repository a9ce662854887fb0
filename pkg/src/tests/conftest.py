import numpy
import pytest

from nilsoliton.components import catalog
from nilsoliton.utils.conf import load_config, set_config


@pytest.fixture(autouse=True)
def default_config(monkeypatch):
    monkeypatch.delenv("NILSOLITON_TOL", raising=False)
    config = load_config(environ={})
    set_config(config)
    yield config
    set_config(None)


@pytest.fixture
def rng():
    return numpy.random.default_rng(20090101)


@pytest.fixture
def h3():
    return catalog.heisenberg(3).bracket


@pytest.fixture
def filiform4():
    """lambda(X1, X2) = X3, lambda(X1, X3) = X4"""
    return catalog.filiform(4).bracket


@pytest.fixture
def abc_item():
    return catalog.symplectic_abc(1.0, 1.0, 0.0)


def random_orthogonal(dim, rng):
    q, r = numpy.linalg.qr(rng.standard_normal((dim, dim)))
    return q * numpy.sign(numpy.diag(r))


def random_symmetric(dim, rng):
    a = rng.standard_normal((dim, dim))
    return 0.5 * (a + a.T)
