import numpy as np
import pytest

from horizonplot import DomainRect, sample_function


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


UNIT_DOMAIN = DomainRect(-1.0, 1.0, -1.0, 1.0)


def ripple(x, y):
    rho = 10.0 * np.sqrt(x * x + y * y)
    return np.where(rho > 0.0, np.sin(rho) / np.where(rho > 0.0, rho, 1.0), 1.0)


def saddle(x, y):
    return x * x - y * y


def gauss(x, y):
    return np.exp(-4.0 * (x * x + y * y))


def flat(x, y):
    return np.zeros_like(x)


def ramp(x, y):
    return x + y


def make_grid(f, m, n, domain=UNIT_DOMAIN):
    return sample_function(f, domain, m, n)
