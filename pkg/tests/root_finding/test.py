from __future__ import print_function

import math

import numpy as np

from decayspectra.breitwigner import short_time_constant
from decayspectra.core import PreconditionError, RangeTooNarrowError, lorentzian
from decayspectra.numerics import (RootBracket, find_root, half_height_width,
                                   lorentzian_tail_bound, power_law_fit)


def test_brent():
    assert abs(find_root(math.cos, RootBracket(1.0, 2.0)) - 0.5 * math.pi) < 1e-12
    assert find_root(lambda x: x, RootBracket(0.0, 1.0)) == 0.0


def test_no_sign_change():
    try:
        find_root(lambda x: x * x + 1, RootBracket(-1.0, 1.0))
        assert False
    except PreconditionError:
        pass


def test_short_time_constant():
    y = short_time_constant()
    assert abs(y - 2.7831) < 1e-3, y
    assert abs(y - math.sqrt(2) * abs(1 - complex(math.cos(y), math.sin(y)))) < 1e-12


def test_half_height_width():
    omega = np.linspace(-10.0, 10.0, 2001)
    width = half_height_width(omega, lorentzian(0.0, 1.0, omega))
    assert abs(width - 1.0) < 1e-3, width

    try:
        half_height_width(omega, lorentzian(0.0, 1.0, omega), peak_index=10)
        assert False
    except PreconditionError:
        pass

    narrow = np.linspace(-0.2, 0.2, 41)
    try:
        half_height_width(narrow, lorentzian(0.0, 1.0, narrow))
        assert False
    except RangeTooNarrowError:
        pass


def test_helpers():
    x = np.geomspace(1e-3, 1e-1, 10)
    assert abs(power_law_fit(x, 3 * x ** 2) - 2.0) < 1e-10
    assert abs(lorentzian_tail_bound(1.0, 50.0) - 0.0063660) < 1e-6


if __name__ == "__main__":
    test_brent()
    test_no_sign_change()
    test_short_time_constant()
    test_half_height_width()
    test_helpers()
    print("success")
