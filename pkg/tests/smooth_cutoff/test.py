from __future__ import print_function

import numpy as np

from decayspectra.core import ConfigurationError, DomainError
from decayspectra.leemodel import (FormFactorModel, critical_coupling,
                                   find_discrete_levels, form_factor_squared,
                                   propagator, self_energy,
                                   spectral_density, spectral_function,
                                   smooth_model_for_width,
                                   survival_probability_general)
from decayspectra.scenarios import PRESETS, smooth_preset_run

PRESET = PRESETS["smooth_cutoff"]
MODEL = smooth_model_for_width(PRESET["mass"], PRESET["half-width"],
                               PRESET["alpha"], PRESET["cutoff"], PRESET["width"])


def strong(factor):
    g = factor * critical_coupling(MODEL)
    return FormFactorModel.smooth(g, MODEL.mass, MODEL.half_width,
                                  MODEL.alpha, MODEL.cutoff)


def test_width():
    assert abs(MODEL.width - 1.0) < 1e-12
    assert MODEL.support == (MODEL.threshold, np.inf)
    assert form_factor_squared(MODEL, MODEL.threshold - 1.0) == 0.0


def test_below_critical_coupling():
    assert MODEL.coupling < critical_coupling(MODEL)
    assert find_discrete_levels(MODEL) == []


def test_bound_state():
    levels = find_discrete_levels(strong(1.5))
    assert len(levels) == 1
    level = levels[0]
    assert level.energy < MODEL.threshold
    assert 0 < level.residue < 1
    assert abs(level.offset - (MODEL.threshold - level.energy)) < 1e-12
    # a stronger coupling binds deeper
    deeper = find_discrete_levels(strong(2.0))[0]
    assert deeper.energy < level.energy


def test_density():
    th = MODEL.threshold
    energies = np.array([th - 1.0, th + 0.01, MODEL.mass, MODEL.mass + 20.0])
    density = spectral_density(MODEL, energies)
    assert density[0] == 0.0
    assert np.all(density[1:] > 0)
    assert density[2] > density[3]


def test_measure():
    measure = spectral_function(MODEL)
    assert measure.atoms == ()
    assert abs(survival_probability_general(measure, 0.0) - 1.0) < 1e-3
    p = [survival_probability_general(measure, t) for t in (0.5, 1.0, 2.0)]
    assert p[0] > p[1] > p[2]


def test_propagator():
    for E in (MODEL.mass + 0.3, MODEL.threshold - 0.5):
        G = propagator(MODEL, E)
        assert abs(G * (E - MODEL.mass + self_energy(MODEL, E)) - 1) < 1e-12
    # below threshold G is real
    assert abs(np.imag(propagator(MODEL, MODEL.threshold - 0.5))) < 1e-15


def test_preset_run():
    run = smooth_preset_run(times=(0.4,), points=101,
                            survival_times=np.linspace(0.0, 1.0, 3))
    assert run.levels == []
    assert len(run.spectra) == 1 and len(run.spectra[0].omega) == 101
    assert run.spectra[0].omega[0] == MODEL.threshold
    assert abs(run.survival[0] - 1) < 1e-3
    assert run.survival[1] > run.survival[2]


def test_invalid():
    try:
        FormFactorModel.smooth(1.0, 3.0, 2.0, 0.0, None)
        assert False
    except DomainError:
        pass
    try:
        FormFactorModel(1.0, 3.0, "gaussian")
        assert False
    except ConfigurationError:
        pass
    try:
        critical_coupling(FormFactorModel.flat(1.0, 0.0))
        assert False
    except ConfigurationError:
        pass


if __name__ == "__main__":
    test_width()
    test_below_critical_coupling()
    test_bound_state()
    test_density()
    test_measure()
    test_propagator()
    test_preset_run()
    test_invalid()
    print("success")
