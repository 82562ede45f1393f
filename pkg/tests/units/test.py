from __future__ import print_function

import numpy as np

from decayspectra.core import (BreitWignerParams, ConfigurationError, DomainError,
                               EnergyGrid, convert_energy, convert_time)


def test_lifetime_to_width():
    # hbar / 8.52e-17 s
    width = convert_energy(8.52e-17, "seconds", "eV")
    assert abs(width - 7.72549) < 1e-4, width
    assert abs(convert_energy(width, "eV", "seconds") - 8.52e-17) < 1e-26


def test_energy_units():
    assert convert_energy(1.0, "MeV", "eV") == 1e6
    assert convert_energy(2.5, "natural", "MeV") == 2.5
    assert abs(convert_time(convert_time(3e-9, "seconds", "natural"),
                            "natural", "seconds") - 3e-9) < 1e-20


def test_unknown_unit():
    for bad in [("MeV", "furlong"), ("parsec", "eV")]:
        try:
            convert_energy(1.0, *bad)
            assert False, "unit %s accepted" % (bad,)
        except ConfigurationError:
            pass


def test_breit_wigner_params():
    p = BreitWignerParams.from_lifetime(0.0, 2.0)
    assert p.width == 0.5 and p.lifetime == 2.0
    p = BreitWignerParams.from_lifetime(139.570, 2.6033e-8, "eV")
    assert abs(p.width - 2.5284e-8) < 1e-11
    for width in (0.0, -1.0):
        try:
            BreitWignerParams(1.0, width)
            assert False
        except DomainError as e:
            assert e.value == width


def test_energy_grid():
    grid = EnergyGrid.around(1.0, 2.0, 5)
    assert list(grid.nodes()) == [-1.0, 0.0, 1.0, 2.0, 3.0]
    assert grid.spacing == 1.0
    assert grid.contains(3.0) and not grid.contains(3.5)

    for grading in ("edges", "lower"):
        nodes = EnergyGrid(0.0, 1.0, 101, grading).nodes()
        assert nodes[0] == 0.0 and nodes[-1] == 1.0
        assert np.all(np.diff(nodes) > 0)
        # clustered at the lower end
        assert nodes[1] - nodes[0] < 0.01

    for args in [(1.0, 1.0, 5), (0.0, 1.0, 1), (0.0, np.inf, 5)]:
        try:
            EnergyGrid(*args)
            assert False, args
        except DomainError:
            pass


if __name__ == "__main__":
    test_lifetime_to_width()
    test_energy_units()
    test_unknown_unit()
    test_breit_wigner_params()
    test_energy_grid()
    print("success")
