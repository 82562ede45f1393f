from __future__ import print_function

import math

import numpy as np

from decayspectra.computation import Computation
from decayspectra.core import DomainError, check_normalization
from decayspectra.files import CSVTable
from decayspectra.leemodel import (FormFactorModel, band_model_for_width,
                                   eta_general, find_discrete_levels,
                                   form_factor_squared, imag_self_energy,
                                   real_self_energy, spectral_function,
                                   survival_amplitude_general,
                                   survival_probability_general)
from decayspectra.numerics import pv_integral
from decayspectra.scenarios import fig4_preset_run, get_preset
from decayspectra.types import Float, FloatList

MODEL = band_model_for_width(0.95, 2.52, 0.0396, 1.0)


def test_width():
    assert abs(MODEL.width - 1.0) < 1e-12
    assert abs(MODEL.mass - (1 / 0.95 ** 2 - 1) / 0.0396) < 1e-12
    # Im Pi(M) = Gamma / 2
    assert abs(imag_self_energy(MODEL, MODEL.mass) - 0.5) < 1e-12
    lo, hi = MODEL.support
    assert imag_self_energy(MODEL, lo - 0.1) == 0.0
    assert imag_self_energy(MODEL, hi + 0.1) == 0.0


def test_closed_form_real_part():
    # the closed form drops the constant (g^2/pi) alpha E0 of the
    # principal value integral
    g2 = MODEL.coupling ** 2
    offset = g2 / math.pi * MODEL.alpha * MODEL.half_width
    for E in (MODEL.mass + 0.3, MODEL.mass - 1.1):
        pv = g2 / (2 * math.pi) * pv_integral(
            lambda k: float(form_factor_squared(MODEL, k)) / (k - E), E,
            MODEL.support)
        assert abs(pv - float(real_self_energy(MODEL, E)) - offset) < 1e-6


def test_levels():
    levels = find_discrete_levels(MODEL)
    assert len(levels) == 2, levels
    lo, hi = MODEL.support
    below, above = levels
    assert below.energy < lo and above.energy > hi
    for level in levels:
        assert 0 < level.residue < 1e-4, level
        assert level.offset > 0


def test_measure():
    measure = spectral_function(MODEL)
    assert len(measure.atoms) == 2
    assert abs(check_normalization(measure)) < 1e-3
    assert abs(survival_probability_general(measure, 0.0) - 1.0) < 1e-3


def test_survival_converges():
    measure = spectral_function(MODEL)
    for t in (0.2, 1.0, 3.0, 10.0, 100.0):
        a = survival_amplitude_general(measure, t)
        assert 0 <= abs(a) <= 1 + 1e-6, (t, a)
    early = [survival_probability_general(measure, t) for t in (0.2, 1.0, 3.0)]
    assert early[0] > early[1] > early[2]


def test_long_time_plateau():
    measure = spectral_function(MODEL)
    bound = sum(z for _, z in measure.atoms) ** 2
    assert bound < 1e-9
    assert survival_probability_general(measure, 100.0) < 1e-4
    # only the discrete levels survive, up to the continuum remainder
    assert survival_probability_general(measure, 1000.0) <= bound + 1e-6


class LongTimeSpectrum(Computation):
    """eta(t, omega) next to d_S(omega) for the band model at a late time."""

    inputs = {"time": Float(100.0),
              "offsets": FloatList((-1.0, -0.5, 0.0, 0.5, 1.0))}
    outputs = {"table": CSVTable(columns=("omega", "eta", "density"))}

    def run(self):
        measure = spectral_function(MODEL)
        omega = MODEL.mass + np.array(self.i.offsets.value)
        eta = eta_general(MODEL, measure, self.i.time.value, omega)
        density = measure.continuum(omega)
        self.o.table.extend(zip(omega, eta, density))
        assert np.all(np.abs(eta / density - 1) < 1e-2), (eta, density)


def test_invalid():
    try:
        # 1 + alpha k < 0 on the band
        FormFactorModel.band(1.0, 0.0, 2.0, 1.0)
        assert False
    except DomainError:
        pass
    try:
        band_model_for_width(1.0, 2.0, 0.0, 2.0)
        assert False
    except DomainError:
        pass


def test_fig4_qualitative():
    run = fig4_preset_run(times=(0.40,), points=401,
                          survival_times=np.linspace(0.0, 2.0, 11))
    assert abs(run.short_time_exponent - 2.0) < 0.1, run.short_time_exponent
    assert len(run.levels) == 2
    assert abs(run.survival[0] - 1.0) < 1e-3
    assert np.all(np.diff(run.survival) < 0)
    spectrum = run.spectra[0]
    assert spectrum.t == 0.40
    assert spectrum.peak[0] > run.model.mass


def test_threshold_reading():
    preset = get_preset("fig4_band_threshold")
    assert abs(preset["half-width"] - (preset["mass"] - 2.52)) < 1e-12
    assert preset.quantities["threshold"].provenance == "published"


if __name__ == "__main__":
    import os
    import shutil
    import tempfile
    test_width()
    test_closed_form_real_part()
    test_levels()
    test_measure()
    test_survival_converges()
    test_long_time_plateau()
    test_invalid()
    test_fig4_qualitative()
    test_threshold_reading()

    tmp = tempfile.mkdtemp()
    out = os.path.join(tmp, "late.csv")
    LongTimeSpectrum()(["--out", out])
    table = CSVTable.read(out)
    assert table.metadata["time"] == "100"
    assert len(table.value) == 5
    shutil.rmtree(tmp)
    print("success")
