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

"""Command line front end.

``decayspectra COMMAND [options]`` runs one :class:`Computation` and
writes its CSV tables. Times are in natural units (inverse energy, so
t = 1 is one lifetime when the width is 1) except for the ``scenario``
command, which takes them in units of the lifetime tau.

Exit codes: 0 success, 2 bad arguments, configuration or domain, 3
numerical failure."""

import logging
import math
import sys

import numpy as np

from decayspectra.breitwigner import (decay_probability_bw,
                                      decay_probability_bw_numeric, eta_bw,
                                      eta_peak_bw, fwhm_bw, survival_amplitude_bw)
from decayspectra.computation import Computation
from decayspectra.core import (BreitWignerParams, ConfigurationError,
                               ConsistencyError, DecaySpectraError,
                               DomainError, EnergyGrid, NumericalFailure, abs2)
from decayspectra.files import CSVTable
from decayspectra.kinematics import (TwoBodyConfig, eta1_narrow, eta2_narrow,
                                     particle_grid, sample_eta_particle)
from decayspectra.leemodel import (FormFactorModel, band_model_for_width,
                                   decay_probability_general, eta_general,
                                   find_discrete_levels, smooth_model_for_width,
                                   spectral_function,
                                   survival_amplitude_general)
from decayspectra.numerics import half_height_width
from decayspectra.plotscript import FIGURES, emit_plotscript
from decayspectra.scenarios import (PRESETS, atomic_preset_spectrum,
                                    fig4_preset_run, get_preset,
                                    piplus_ratios, piplus_spreads,
                                    pi0_photon_spread, smooth_preset_run)
from decayspectra.tools import parallel_map
from decayspectra.types import (Bool, Choice, Float, FloatList, Integer,
                                Optional, String, StringList)

MODELS = ("bw", "flat", "band", "smooth")

BAND_DEFAULTS = {"coupling": 0.95, "half-width": 2.52, "alpha": 0.0396}
SMOOTH_DEFAULTS = {"half-width": 2.52, "alpha": 0.0396, "cutoff": 5.0}


def model_inputs():
    return {
        "model": Choice(MODELS, help="bw (closed forms) or a Lee form factor"),
        "mass": Optional(Float(None, help="peak or bare mass M")),
        "width": Float(1.0, help="width Gamma; fixes the coupling when none is given"),
        "coupling": Optional(Float(None, help="Lee coupling g")),
        "half-width": Optional(Float(None, help="band half-width / threshold distance E0")),
        "alpha": Optional(Float(None, help="slope alpha of the form factor")),
        "cutoff": Optional(Float(None, help="smooth cutoff Lambda")),
    }


def grid_inputs(points=2001):
    return {
        "omega-min": Optional(Float(None)),
        "omega-max": Optional(Float(None)),
        "points": Integer(points, minimum=3),
    }


def resolve_model(i):
    """Build the model the inputs describe, fill in the derived
    defaults and return it: a :class:`BreitWignerParams` for ``bw``,
    a :class:`FormFactorModel` otherwise."""
    kind = i.model.value

    def get(name, default):
        return i[name].value if i[name].was_given() else default

    width = i.width.value
    if not width > 0:
        raise DomainError("width must be positive", width)

    if kind == "bw":
        model = BreitWignerParams(get("mass", 0.0), width)
    elif kind == "flat":
        model = FormFactorModel.flat(get("coupling", math.sqrt(width)), get("mass", 0.0))
    elif kind == "band":
        g = get("coupling", BAND_DEFAULTS["coupling"])
        e0 = get("half-width", BAND_DEFAULTS["half-width"])
        alpha = get("alpha", BAND_DEFAULTS["alpha"])
        if i.mass.was_given():
            model = FormFactorModel.band(g, i.mass.value, e0, alpha)
        elif alpha != 0:
            model = band_model_for_width(g, e0, alpha, width)
        else:
            model = FormFactorModel.band(g, 0.0, e0, alpha)
    else:
        mass = get("mass", PRESETS["smooth_cutoff"]["mass"])
        e0 = get("half-width", SMOOTH_DEFAULTS["half-width"])
        alpha = get("alpha", SMOOTH_DEFAULTS["alpha"])
        cutoff = get("cutoff", SMOOTH_DEFAULTS["cutoff"])
        if i.coupling.was_given():
            model = FormFactorModel.smooth(i.coupling.value, mass, e0, alpha, cutoff)
        else:
            model = smooth_model_for_width(mass, e0, alpha, cutoff, width)

    i.mass.resolve(model.mass)
    i.width.resolve(model.width)
    if kind != "bw":
        i.coupling.resolve(model.coupling)
    if kind in ("band", "smooth"):
        i["half-width"].resolve(model.half_width)
        i.alpha.resolve(model.alpha)
    if kind == "smooth":
        i.cutoff.resolve(model.cutoff)
    logging.debug("model %r", model)
    return model


def default_energy_grid(model, points):
    if isinstance(model, BreitWignerParams) or model.variant == "flat":
        return EnergyGrid.around(model.mass, 25.0 * model.width, points)
    if model.variant == "band":
        lo, hi = model.support
        return EnergyGrid(lo, hi, points)
    return EnergyGrid(model.threshold, model.mass + 10.0 * model.width, points)


def resolve_grid(i, default):
    lo = i.omega_min.value if i.omega_min.was_given() else default.lo
    hi = i.omega_max.value if i.omega_max.was_given() else default.hi
    grid = EnergyGrid(lo, hi, i.points.value)
    i.omega_min.resolve(grid.lo)
    i.omega_max.resolve(grid.hi)
    return grid


class _ModelComputation(Computation):
    """Shared set up of the commands that take a model."""

    def prepare(self):
        self.model = resolve_model(self.i)
        self.measure = None
        if isinstance(self.model, FormFactorModel):
            self.measure = spectral_function(self.model)

    @property
    def is_bw(self):
        return isinstance(self.model, BreitWignerParams)

    def eta(self, t, omega):
        if self.is_bw:
            return eta_bw(self.model, t, omega)
        return eta_general(self.model, self.measure, t, omega)

    def eta_peak(self, t):
        if self.is_bw:
            return eta_peak_bw(self.model, t)
        return float(self.eta(t, np.array([self.model.mass]))[0])


class Survival(_ModelComputation):
    """p(t), w(t) and a(t) at the requested times."""

    title = "survival"
    figure = "survival"
    inputs = dict(model_inputs(), **{
        "times": FloatList((0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0)),
        "unitarity": Bool(False, help="integrate eta for w(t) and require w + p = 1"),
    })
    outputs = {"table": CSVTable(columns=("t", "survival_probability",
                                          "decay_probability",
                                          "re_amplitude", "im_amplitude"))}

    def amplitude(self, t):
        if self.is_bw:
            return survival_amplitude_bw(self.model, t)
        return survival_amplitude_general(self.measure, t)

    def decay_probability(self, t, p):
        if not self.i.unitarity.value:
            return decay_probability_bw(self.model, t) if self.is_bw else 1.0 - p
        if self.is_bw:
            w = decay_probability_bw_numeric(self.model, t)
            if abs(w + p - 1) > 1e-3:
                raise ConsistencyError("w(t) + p(t) = %.6f at t = %g" % (w + p, t),
                                       estimate=w, error=abs(w + p - 1))
            return w
        return decay_probability_general(self.model, self.measure, t)

    def run(self):
        times = self.i.times.value
        for t, a in zip(times, parallel_map(self.amplitude, times)):
            p = float(abs2(a))
            self.o.table.append([t, p, self.decay_probability(t, p), a.real, a.imag])


class Spectrum(_ModelComputation):
    """eta(t, omega) on an energy grid, also normalised to eta(t, M)."""

    title = "spectrum"
    figure = "fig1"
    inputs = dict(model_inputs(), time=Float(1.0), **grid_inputs())
    outputs = {"table": CSVTable(columns=("omega", "eta", "eta_normalized"))}

    def prepare(self):
        _ModelComputation.prepare(self)
        self.grid = resolve_grid(self.i, default_energy_grid(self.model, self.i.points.value))

    def run(self):
        t = self.i.time.value
        omega = self.grid.nodes()
        values = self.eta(t, omega)
        peak = self.eta_peak(t)
        if peak > 0:
            normalized = values / peak
        else:
            logging.warning("eta vanishes at t = %g, normalised values set to zero", t)
            normalized = np.zeros_like(values)
        self.o.table.extend(zip(omega, values, normalized))


class Fwhm(_ModelComputation):
    """delta omega(t): the closed-form solver for ``bw``, the sampled
    general eta for the Lee models."""

    title = "fwhm"
    figure = "fig3"
    inputs = dict(model_inputs(),
                  times=FloatList((0.1, 0.5, 1.0, 3.0, 100.0)),
                  **grid_inputs())
    outputs = {"table": CSVTable(columns=("t", "delta_omega", "delta_omega_over_gamma"))}

    def prepare(self):
        _ModelComputation.prepare(self)
        self.grid = resolve_grid(self.i, default_energy_grid(self.model, self.i.points.value))

    def width_at(self, t):
        if self.is_bw:
            return fwhm_bw(self.model, t)
        omega = self.grid.nodes()
        return half_height_width(omega, self.eta(t, omega))

    def run(self):
        times = self.i.times.value
        gamma = self.model.width
        for t, delta in zip(times, parallel_map(self.width_at, times)):
            self.o.table.append([t, delta, delta / gamma])


class TwoBody(Computation):
    """Energy distribution of one decay product, exact and in the
    narrow-width form."""

    title = "twobody"
    figure = "twobody"
    inputs = dict({
        "mass": Float(1.0, help="parent mass M"),
        "width": Float(0.01, help="parent width Gamma"),
        "m1": Float(0.3),
        "m2": Float(0.0),
        "particle": Choice(("1", "2")),
        "time": Float(100.0),
    }, **grid_inputs())
    outputs = {"table": CSVTable(columns=("omega", "eta_exact", "eta_narrow"))}

    def prepare(self):
        i = self.i
        self.cfg = TwoBodyConfig.from_masses(i.mass.value, i.width.value,
                                             i.m1.value, i.m2.value)
        self.which = int(i.particle.value)
        self.grid = resolve_grid(i, particle_grid(self.cfg, self.which, i.points.value))

    def run(self):
        t = self.i.time.value
        omega, exact = sample_eta_particle(self.cfg, t, self.which, self.grid)
        narrow_fn = eta1_narrow if self.which == 1 else eta2_narrow
        narrow = narrow_fn(self.cfg.params, self.cfg, t, omega)
        self.o.table.extend(zip(omega, exact, narrow))


def level_rows(levels):
    return [[level.energy, level.residue, level.offset, level.edge_degenerate]
            for level in levels]


LEVEL_COLUMNS = ("energy", "residue", "offset_from_edge", "edge_degenerate")


class Poles(_ModelComputation):
    """Discrete levels of a Lee model."""

    title = "poles"
    inputs = model_inputs()
    outputs = {"table": CSVTable(columns=LEVEL_COLUMNS)}

    def prepare(self):
        if self.i.model.value == "bw":
            raise ConfigurationError("poles needs a Lee model (flat, band or smooth)")
        self.model = resolve_model(self.i)

    def run(self):
        levels = find_discrete_levels(self.model)
        if not levels:
            logging.info("no discrete levels")
        self.o.table.extend(level_rows(levels))


LEE_SCENARIOS = ("fig4_band", "fig4_band_threshold", "smooth_cutoff")


class Scenario(Computation):
    """A named preset; times in units of the lifetime tau."""

    title = "scenario"
    inputs = {
        "name": String("", help="one of %s" % ", ".join(sorted(PRESETS))),
        "time": Optional(Float(None)),
        "times": Optional(FloatList(())),
        "points": Integer(801, minimum=3),
    }
    outputs = {
        "table": CSVTable(),
        "survival": CSVTable(columns=("t", "survival_probability")),
        "levels": CSVTable(columns=LEVEL_COLUMNS),
    }

    DEFAULT_TIMES = {
        "pi0": (0.1, 0.5, 1.0, 3.0, 10.0, 100.0),
        "piplus": (1.0,),
        "atomic": (1.0,),
        "fig4_band": (0.40, 0.79, 100.0),
        "fig4_band_threshold": (0.40, 0.79, 100.0),
        "smooth_cutoff": (0.40, 0.79, 100.0),
    }

    def prepare(self):
        if len(self.args) > 1:
            raise ConfigurationError("scenario takes one name, got %s" % " ".join(self.args))
        if self.args:
            self.i.name.resolve(self.args[0])
        self.preset = get_preset(self.i.name.value)
        name = self.preset.name

        if self.i.times.was_given():
            times = self.i.times.value
        elif self.i.time.was_given():
            times = (self.i.time.value,)
        else:
            times = self.DEFAULT_TIMES[name]
        for t in times:
            if not t > 0:
                raise DomainError("scenario times must be positive", t)
        self.i.times.resolve(tuple(times))
        self.i.time.resolve(times[0])

        if name not in LEE_SCENARIOS:
            del self.outputs["survival"]
            del self.outputs["levels"]
            self.figure = "fig1" if name == "atomic" else None
        else:
            self.figure = "fig4"

    def plot_inputs(self):
        if self.figure == "fig4":
            return [self.output_path("survival"), self.output_path()]
        return [self.output_path()]

    def extra_metadata(self):
        metadata = self.preset.metadata()
        if getattr(self, "exponent", None) is not None:
            metadata["short-time-exponent"] = "%.6g" % self.exponent
        return metadata

    def run(self):
        name = self.preset.name
        times = self.i.times.value
        table = self.o.table
        if name == "pi0":
            table.columns = ("t_over_tau", "delta_omega_ev", "photon_spread_ev")
            for t, spread in zip(times, parallel_map(pi0_photon_spread, times)):
                table.append([t, 2 * spread, spread])
        elif name == "piplus":
            table.columns = ("t_over_tau", "ratio_mu", "ratio_nu",
                             "spread_mu_ev", "spread_nu_ev")
            ratio_mu, ratio_nu = piplus_ratios(self.preset)
            for t in times:
                table.append([t, ratio_mu, ratio_nu] + list(piplus_spreads(t, self.preset)))
        elif name == "atomic":
            if len(times) > 1:
                logging.warning("atomic scenario uses the first time only")
            table.columns = ("omega", "eta", "eta_normalized")
            spectrum = atomic_preset_spectrum(times[0], self.preset)
            table.extend(zip(spectrum.omega, spectrum.values, spectrum.normalized))
            logging.info("atomic spectrum around %g eV", self.preset["transition-energy"])
        else:
            if name == "smooth_cutoff":
                run = smooth_preset_run(times=times, points=self.i.points.value)
            else:
                run = fig4_preset_run(name, times=times, points=self.i.points.value)
            self.exponent = run.short_time_exponent
            table.columns = ("t", "omega", "eta", "eta_normalized")
            for spectrum in run.spectra:
                for row in zip(spectrum.omega, spectrum.values, spectrum.normalized):
                    table.append([spectrum.t] + list(row))
            self.o.survival.extend(zip(run.survival_times, run.survival))
            self.o.levels.extend(level_rows(run.levels))


class Plotscript(Computation):
    """Write a gnuplot script for CSV files produced earlier."""

    title = "plotscript"
    suffix = ".gp"
    inputs = {
        "figure": Choice(tuple(sorted(FIGURES)), "fig1"),
        "csv": StringList(),
    }

    def run(self):
        if not self.i.csv:
            raise ConfigurationError("plotscript needs at least one --csv file")
        self.written.append(emit_plotscript(list(self.i.csv), self.i.figure.value,
                                            self.out))


COMMANDS = dict((cls.title, cls) for cls in
                (Survival, Spectrum, Fwhm, TwoBody, Poles, Scenario, Plotscript))


def usage():
    lines = ["usage: decayspectra COMMAND [options]", "", "commands:"]
    for name in COMMANDS:
        lines.append("  %-11s %s" % (name, COMMANDS[name].__doc__.strip().split("\n")[0]))
    lines.append("")
    lines.append("decayspectra COMMAND --help lists the options of a command.")
    return "\n".join(lines) + "\n"


def run(argv):
    """Run one command; returns the exit code."""
    if not argv or argv[0] in ("-h", "--help"):
        sys.stderr.write(usage())
        return 0 if argv else 2
    command, args = argv[0], argv[1:]
    if command not in COMMANDS:
        print("decayspectra: unknown command '%s'" % command, file=sys.stderr)
        sys.stderr.write(usage())
        return 2
    try:
        paths = COMMANDS[command]().execute(args)
    except SystemExit as e:
        # optparse reports bad flags (and --help) this way
        return 0 if e.code in (0, None) else 2
    except NumericalFailure as e:
        print("decayspectra %s: numerical failure: %s" % (command, e), file=sys.stderr)
        return 3
    except (DecaySpectraError, ValueError) as e:
        print("decayspectra %s: error: %s" % (command, e), file=sys.stderr)
        return 2
    for path in paths:
        logging.info("%s", path)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))
