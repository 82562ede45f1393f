# This file is part of decayspectra.
#
# decayspectra is free software: you can redistribute it and/or modify it under the
# terms of the GNU General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later
# version.
#
# decayspectra is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A
# PARTICULAR PURPOSE.  See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with
# decayspectra.  If not, see <http://www.gnu.org/licenses/>.

"""Physical presets.

Each preset is a named set of :class:`Quantity` values, every one of them
tagged with where the number comes from: ``published`` (quoted in the
literature the presets reproduce), ``user`` (standard tables, chosen by
us) or ``derived`` (computed from the others). Times handed to the
scenario functions are in units of the lifetime tau.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from decayspectra.breitwigner import (eta_bw, eta_peak_bw, fwhm_bw,
                                      fwhm_short_time)
from decayspectra.core import (BreitWignerParams, ConfigurationError,
                               EnergyDistribution, EnergyGrid, convert_energy)
from decayspectra.kinematics import TwoBodyConfig, partial_widths
from decayspectra.leemodel import (FormFactorModel, band_model_for_width,
                                   eta_general, find_discrete_levels,
                                   nonsurvival_probability,
                                   smooth_model_for_width, spectral_function,
                                   survival_probability_general)
from decayspectra.numerics import power_law_fit
from decayspectra.tools import parallel_map

PROVENANCES = ("published", "user", "derived")


@dataclass(frozen=True)
class Quantity:
    value: float
    unit: str
    provenance: str
    note: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ConfigurationError("unknown provenance '%s'" % self.provenance)

    def __str__(self):
        return "%.12g %s [%s]" % (self.value, self.unit, self.provenance)


@dataclass(frozen=True, eq=False)
class ScenarioPreset:
    name: str
    description: str
    quantities: Dict[str, Quantity] = field(default_factory=dict)

    def __getitem__(self, key):
        return self.quantities[key].value

    def metadata(self):
        return {"preset-%s" % key: str(q) for key, q in self.quantities.items()}


def _fig4_quantities(threshold_reading):
    g, a = 0.95, 0.0396
    mass = (1.0 / g ** 2 - 1) / a
    q = {
        "coupling": Quantity(g, "sqrt(Gamma)", "published"),
        "alpha": Quantity(a, "tau", "published"),
        "width": Quantity(1.0, "Gamma", "published", "energies in units of Gamma"),
        "mass": Quantity(mass, "Gamma", "derived", "Gamma = g^2 (1 + alpha M)"),
    }
    if threshold_reading:
        q["threshold"] = Quantity(2.52, "Gamma", "published", "read as M - E0")
        q["half-width"] = Quantity(mass - 2.52, "Gamma", "derived")
    else:
        q["half-width"] = Quantity(2.52, "Gamma", "published", "read as E0")
    return q


PRESETS = {
    "pi0": ScenarioPreset(
        "pi0", "neutral pion decaying into two photons", {
            "lifetime": Quantity(8.52e-17, "s", "published"),
            "mass": Quantity(134.9768, "MeV", "user"),
        }),
    "piplus": ScenarioPreset(
        "piplus", "charged pion decaying into muon and neutrino", {
            "lifetime": Quantity(2.6033e-8, "s", "published"),
            "mass": Quantity(139.570, "MeV", "user"),
            "muon-mass": Quantity(105.658, "MeV", "user"),
            "neutrino-mass": Quantity(0.0, "MeV", "published", "masses neglected"),
        }),
    "atomic": ScenarioPreset(
        "atomic", "excited atom emitting a photon (hydrogen 2p -> 1s)", {
            "transition-energy": Quantity(10.2, "eV", "user"),
            "lifetime": Quantity(1.596e-9, "s", "user"),
        }),
    "fig4_band": ScenarioPreset(
        "fig4_band", "band form factor, 2.52 read as the band half-width",
        _fig4_quantities(False)),
    "fig4_band_threshold": ScenarioPreset(
        "fig4_band_threshold", "band form factor, 2.52 read as the threshold M - E0",
        _fig4_quantities(True)),
    "smooth_cutoff": ScenarioPreset(
        "smooth_cutoff", "phase-space form factor with a smooth cutoff", {
            "mass": Quantity((1.0 / 0.95 ** 2 - 1) / 0.0396, "Gamma", "derived",
                             "same M as fig4_band"),
            "half-width": Quantity(2.52, "Gamma", "user"),
            "alpha": Quantity(0.0396, "tau", "published"),
            "cutoff": Quantity(5.0, "Gamma", "user"),
            "width": Quantity(1.0, "Gamma", "user", "fixes the coupling"),
        }),
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigurationError("unknown scenario '%s' (known: %s)"
                                 % (name, ", ".join(sorted(PRESETS)))) from None


def _width_ev(preset):
    return convert_energy(preset["lifetime"], "seconds", "eV")


_UNIT = BreitWignerParams(0.0, 1.0)


################################################################
# Breit-Wigner examples
################################################################

def pi0_photon_spread(t):
    """Energy spread per photon, delta_omega(t)/2 in eV, at t (in tau)."""
    return 0.5 * fwhm_bw(_UNIT, t) * _width_ev(PRESETS["pi0"])


def piplus_config(preset=None):
    preset = preset or PRESETS["piplus"]
    return TwoBodyConfig(preset["muon-mass"], preset["neutrino-mass"],
                         preset["mass"], 1.0)


def piplus_ratios(preset=None):
    """(Gamma_mu/Gamma, Gamma_nu/Gamma) from the masses."""
    return partial_widths(piplus_config(preset))


def piplus_spreads(t, preset=None):
    """(delta E_mu, delta E_nu) in eV at t (in tau)."""
    preset = preset or PRESETS["piplus"]
    ratio_mu, ratio_nu = piplus_ratios(preset)
    spread = fwhm_bw(_UNIT, t) * _width_ev(preset)
    return ratio_mu * spread, ratio_nu * spread


def atomic_emission_spectrum(delta_e, width, t, grid=None):
    """Photon energy distribution of an atomic transition of energy
    ``delta_e`` and natural width ``width`` at time t (in 1/energy units
    of ``width``). The recoiling atom takes no energy spread, so the
    photon carries eta(t, .) centred on delta_e."""
    p = BreitWignerParams(delta_e, width)
    grid = grid or EnergyGrid.around(delta_e, 25.0 * width, 4001)
    omega = grid.nodes()
    return EnergyDistribution(t, omega, eta_bw(p, t, omega), eta_peak_bw(p, t))


def atomic_preset_spectrum(t, preset=None, grid=None):
    """atomic_emission_spectrum for the preset, t in units of tau."""
    preset = preset or PRESETS["atomic"]
    width = _width_ev(preset)
    return atomic_emission_spectrum(preset["transition-energy"], width,
                                    t / width, grid)


def fwhm_curve(times, width=1.0):
    """Rows (t, delta_omega, delta_omega/Gamma, 2y*/t) for t in tau."""
    p = BreitWignerParams(0.0, width)
    rows = []
    for t, delta in zip(times, parallel_map(lambda t: fwhm_bw(p, t / width), times)):
        rows.append((t, delta, delta / width, fwhm_short_time(t)))
    return rows


################################################################
# Lee model runs
################################################################

@dataclass(frozen=True, eq=False)
class LeeModelRun:
    """Survival curve, normalised spectra and levels of one model."""

    model: FormFactorModel
    levels: list
    survival_times: np.ndarray
    survival: np.ndarray
    spectra: List[EnergyDistribution]
    short_time_exponent: float


def _run(model, times, grid, survival_times, short_times):
    measure = spectral_function(model)
    levels = find_discrete_levels(model)
    width = model.width
    survival_times = np.asarray(survival_times, dtype=float)
    survival = np.array(parallel_map(
        lambda t: survival_probability_general(measure, t / width), survival_times))

    omega = grid.nodes()

    def spectrum(t):
        t_nat = t / width
        values = eta_general(model, measure, t_nat, omega)
        peak = float(eta_general(model, measure, t_nat, np.array([model.mass]))[0])
        return EnergyDistribution(t, omega, values, peak)

    spectra = parallel_map(spectrum, times)
    short = np.asarray(short_times, dtype=float) / width
    exponent = power_law_fit(short, [nonsurvival_probability(measure, t)
                                     for t in short])
    logging.info("short-time exponent of 1 - p(t): %.4f", exponent)
    return LeeModelRun(model, levels, survival_times, survival, spectra, exponent)


_SURVIVAL_TIMES = np.linspace(0.0, 5.0, 101)
_SHORT_TIMES = np.geomspace(1e-3, 1e-2, 8)


def fig4_band_run(coupling, mass, half_width, alpha, times=(0.40, 0.79, 100.0),
                  points=801, survival_times=_SURVIVAL_TIMES):
    """Band-model bundle: p(t), eta(t, .)/eta(t, M) for each t (in tau)
    and the discrete levels."""
    model = FormFactorModel.band(coupling, mass, half_width, alpha)
    lo, hi = model.support
    grid = EnergyGrid(lo, hi, points, "edges")
    return _run(model, times, grid, survival_times, _SHORT_TIMES)


def fig4_preset_run(name="fig4_band", **kwargs):
    preset = get_preset(name)
    model = band_model_for_width(preset["coupling"], preset["half-width"],
                                 preset["alpha"], preset["width"])
    return fig4_band_run(model.coupling, model.mass, model.half_width,
                         model.alpha, **kwargs)


def smooth_cutoff_run(mass, half_width, alpha, cutoff, coupling=None, width=1.0,
                      times=(0.40, 0.79, 100.0), points=801,
                      survival_times=_SURVIVAL_TIMES):
    """The same bundle for the smooth-cutoff form factor. Without a
    coupling, it is chosen so that the golden-rule width is ``width``."""
    if coupling is None:
        model = smooth_model_for_width(mass, half_width, alpha, cutoff, width)
    else:
        model = FormFactorModel.smooth(coupling, mass, half_width, alpha, cutoff)
    grid = EnergyGrid(model.threshold, mass + 10.0 * model.width, points, "lower")
    return _run(model, times, grid, survival_times, _SHORT_TIMES)


def smooth_preset_run(**kwargs):
    preset = PRESETS["smooth_cutoff"]
    return smooth_cutoff_run(preset["mass"], preset["half-width"],
                             preset["alpha"], preset["cutoff"],
                             width=preset["width"], **kwargs)
