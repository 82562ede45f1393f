from __future__ import print_function

from decayspectra.breitwigner import fwhm_bw
from decayspectra.core import BreitWignerParams, ConfigurationError, convert_energy
from decayspectra.numerics import half_height_width
from decayspectra.scenarios import (PRESETS, Quantity, atomic_preset_spectrum,
                                    get_preset, pi0_photon_spread,
                                    piplus_ratios, piplus_spreads)


def test_pi0():
    assert abs(pi0_photon_spread(100.0) / 3.8627 - 1) < 1e-2
    assert pi0_photon_spread(3.0) > pi0_photon_spread(100.0)
    gamma_half = 0.5 * convert_energy(8.52e-17, "seconds", "eV")
    assert abs(pi0_photon_spread(0.1) / (55.66 * gamma_half) - 1) < 2e-2


def test_piplus():
    ratio_mu, ratio_nu = piplus_ratios()
    assert abs(ratio_mu - 0.2134) < 1e-3
    assert abs(ratio_nu - 0.7866) < 1e-3
    assert abs(ratio_mu + ratio_nu - 1) < 1e-14
    spread_mu, spread_nu = piplus_spreads(100.0)
    assert abs(spread_mu / (ratio_mu * 2.5284e-8) - 1) < 1e-2
    assert abs(spread_mu / spread_nu - ratio_mu / ratio_nu) < 1e-12


def test_atomic():
    preset = PRESETS["atomic"]
    width = convert_energy(preset["lifetime"], "seconds", "eV")

    late = atomic_preset_spectrum(100.0)
    assert abs(late.omega[late.values.argmax()] - 10.2) < 1e-3 * width
    assert abs(half_height_width(late.omega, late.values) / width - 1) < 1e-2

    early = atomic_preset_spectrum(1.0)
    expected = fwhm_bw(BreitWignerParams(0.0, 1.0), 1.0) * width
    assert abs(half_height_width(early.omega, early.values) / expected - 1) < 1e-3
    assert abs(early.normalized.max() - 1) < 1e-9


def test_presets():
    for name, preset in PRESETS.items():
        assert preset.name == name
        for key, value in preset.metadata().items():
            assert key.startswith("preset-")
            assert value.endswith("]")
    try:
        get_preset("kaon")
        assert False
    except ConfigurationError as e:
        assert "piplus" in str(e)
    q = Quantity(1.0, "MeV", "derived")
    assert str(q) == "1 MeV [derived]"
    try:
        Quantity(1.0, "MeV", "guessed")
        assert False
    except ConfigurationError:
        pass


if __name__ == "__main__":
    test_pi0()
    test_piplus()
    test_atomic()
    test_presets()
    print("success")
