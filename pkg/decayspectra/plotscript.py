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

import logging
import os

from decayspectra.breitwigner import short_time_constant
from decayspectra.core import ConfigurationError
from decayspectra.files import CSVTable, File


class GnuplotScript(File):
    """Can be used as: **output parameter**

    A GnuplotScript is a normal :class:`~decayspectra.files.File` with
    helpers to write gnuplot commands. The script only describes the
    figure; running ``gnuplot fig.gp`` renders it.

    >>> from decayspectra.plotscript import GnuplotScript
    >>> script = GnuplotScript("/tmp/fig.gp")
    >>> script.set("logscale x")
    >>> print(script.value)
    set logscale x
    """

    def __init__(self, filename="plot.gp"):
        File.__init__(self, filename)
        self.value = ""

    def command(self, text):
        self.write(text + "\n", append=True)

    def set(self, option):
        """``set <option>``"""
        self.command("set " + option)

    def comment(self, comment):
        """Add a comment to the script"""
        for line in comment.split("\n"):
            self.write("# %s\n" % line.strip(), append=True)

    def newline(self):
        self.write("\n", append=True)

    def plot(self, clauses):
        """One ``plot`` command, a clause per line."""
        self.command("plot " + ", \\\n     ".join(clauses))


def _quote(text):
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"')


def _using(table, x, y):
    table.require(x, y)
    return "%d:%d" % (table.columns.index(x) + 1, table.columns.index(y) + 1)


def _time_label(table, fallback):
    time = table.metadata.get("time")
    if time:
        return "t = %s" % time
    return fallback


class _Figure:
    def __init__(self, script, tables, script_dir):
        self.script = script
        self.tables = tables
        self.script_dir = script_dir

    def source(self, table):
        return _quote(os.path.relpath(table.path, self.script_dir))

    def curve(self, table, x, y, dash, title, select=None):
        using = _using(table, x, y)
        if select is not None:
            column, value = select
            table.require(column)
            xi, yi = using.split(":")
            using = "%s:($%d == %.12g ? $%s : 1/0)" % (
                xi, table.columns.index(column) + 1, value, yi)
        return "%s using %s with lines dt %d lw 2 title %s" % (
            self.source(table), using, dash, _quote(title))


def _spectra(fig, column, ylabel):
    script = fig.script
    script.set('xlabel "omega"')
    script.set("ylabel %s" % _quote(ylabel))
    script.plot([fig.curve(table, "omega", column, index + 1,
                           _time_label(table, os.path.basename(table.path)))
                 for index, table in enumerate(fig.tables)])


def _fig1(fig):
    if len(fig.tables) > 2:
        logging.warning("fig1 overlays two spectra, got %d", len(fig.tables))
    _spectra(fig, "eta", "eta(t, omega)")


def _fig2(fig):
    _spectra(fig, "eta_normalized", "eta(t, omega) / eta(t, M)")


def _fig3(fig):
    script = fig.script
    y = short_time_constant()
    script.set("logscale x")
    script.set('xlabel "t / tau"')
    script.set('ylabel "delta omega / Gamma"')
    script.command("short(x) = %.6f / x" % (2 * y))
    clauses = [fig.curve(table, "t", "delta_omega_over_gamma", 1,
                         os.path.basename(table.path)) for table in fig.tables]
    clauses.append('short(x) with lines dt 2 lw 1 title "%.2f / t"' % (2 * y))
    script.plot(clauses)


def _fig4(fig):
    script = fig.script
    survival = [t for t in fig.tables if "survival_probability" in t.columns]
    spectra = [t for t in fig.tables if "survival_probability" not in t.columns]
    if not survival or not spectra:
        raise ConfigurationError("fig4 needs a survival table and a spectra table")
    script.set("multiplot layout 2,1")
    script.set('xlabel "t / tau"')
    script.set('ylabel "p(t)"')
    clauses = [fig.curve(table, "t", "survival_probability", 1, "p(t)")
               for table in survival]
    clauses.append('exp(-x) with lines dt 2 lw 1 title "exp(-t/tau)"')
    script.plot(clauses)
    script.set('xlabel "omega"')
    script.set('ylabel "eta(t, omega) / eta(t, M)"')
    clauses = []
    for table in spectra:
        if "t" in table.columns:
            times = sorted(set(table.column("t")))
            for index, t in enumerate(times):
                clauses.append(fig.curve(table, "omega", "eta_normalized",
                                         index + 1, "t = %.12g" % t, ("t", t)))
        else:
            clauses.append(fig.curve(table, "omega", "eta_normalized",
                                     len(clauses) + 1, _time_label(table, "eta")))
    script.plot(clauses)
    script.command("unset multiplot")


def _survival(fig):
    script = fig.script
    script.set('xlabel "t"')
    script.set('ylabel "probability"')
    clauses = []
    for table in fig.tables:
        clauses.append(fig.curve(table, "t", "survival_probability", 1, "p(t)"))
        if "decay_probability" in table.columns:
            clauses.append(fig.curve(table, "t", "decay_probability", 2, "w(t)"))
    script.plot(clauses)


def _twobody(fig):
    script = fig.script
    script.set('xlabel "omega_i"')
    script.set('ylabel "eta_i(t, omega_i)"')
    clauses = []
    for table in fig.tables:
        clauses.append(fig.curve(table, "omega", "eta_exact", 1, "exact"))
        clauses.append(fig.curve(table, "omega", "eta_narrow", 2, "narrow width"))
    script.plot(clauses)


FIGURES = {
    "fig1": _fig1,
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "survival": _survival,
    "twobody": _twobody,
}


def emit_plotscript(csv_paths, figure, out):
    """Write a gnuplot script for ``figure`` reading ``csv_paths``.

    The CSVs are read to check their columns; a missing column raises
    :class:`ConfigurationError`. Returns the script path. The bytes of
    the script depend only on the arguments and the CSV headers."""
    if figure not in FIGURES:
        raise ConfigurationError("unknown figure '%s' (known: %s)"
                                 % (figure, ", ".join(sorted(FIGURES))))
    if not csv_paths:
        raise ConfigurationError("%s needs at least one CSV file" % figure)
    tables = []
    for path in csv_paths:
        if not os.path.exists(path):
            raise ConfigurationError("no such CSV file: %s" % path)
        tables.append(CSVTable.read(path))

    script = GnuplotScript(out)
    stem = os.path.splitext(os.path.basename(script.path))[0]
    script.comment("decayspectra %s" % figure)
    script.comment("render with: gnuplot %s" % os.path.basename(script.path))
    script.set('terminal pngcairo size 800,%d' % (900 if figure == "fig4" else 600))
    script.set("output %s" % _quote(stem + ".png"))
    script.set('datafile separator ","')
    script.set("key autotitle columnhead")
    script.newline()
    FIGURES[figure](_Figure(script, tables, os.path.dirname(script.path)))
    script.flush()
    return script.path

