from __future__ import print_function

import math

import numpy as np
from scipy.special import shichi

from decayspectra.core import NumericalFailure, PreconditionError
from decayspectra.numerics import PV_SLACK, pv_integral


def test_logarithm():
    value = pv_integral(lambda x: 1.0 / x, 0.0, (-1.0, 2.0))
    assert abs(value - math.log(2.0)) < 1e-8, value


def test_hyperbolic_sine_integral():
    # PV int_{-1}^{1} e^x / x dx = 2 Shi(1)
    value = pv_integral(lambda x: math.exp(x) / x, 0.0, (-1.0, 1.0))
    assert abs(value - 2 * shichi(1.0)[0]) < 1e-8, value


def test_infinite_domain():
    # PV int 1/((x^2 + 1)(x - a)) dx = -pi a / (a^2 + 1)
    a = 0.5
    value = pv_integral(lambda x: 1.0 / ((x * x + 1) * (x - a)), a,
                        (-np.inf, np.inf))
    assert abs(value + math.pi * a / (a * a + 1)) < 1e-7, value


def test_not_converged():
    # a second, non-integrable pole at 0.3 besides the principal one at 0
    try:
        pv_integral(lambda x: 1.0 / (x * (x - 0.3) ** 2), 0.0, (-1.0, 1.0))
        assert False
    except NumericalFailure as e:
        assert e.estimate is not None


def test_slack():
    # the strict check accepts a well-behaved principal value as well
    value = pv_integral(lambda x: 1.0 / x, 0.0, (-1.0, 2.0), slack=1.0)
    assert abs(value - math.log(2.0)) < 1e-8, value
    assert PV_SLACK == 1e3


def test_pole_outside():
    try:
        pv_integral(lambda x: 1.0 / x, 3.0, (-1.0, 2.0))
        assert False
    except PreconditionError:
        pass


if __name__ == "__main__":
    test_logarithm()
    test_hyperbolic_sine_integral()
    test_infinite_domain()
    test_not_converged()
    test_slack()
    test_pole_outside()
    print("success")
