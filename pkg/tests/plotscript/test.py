from __future__ import print_function

import os
import shutil
import tempfile

from decayspectra import cli
from decayspectra.core import ConfigurationError
from decayspectra.files import CSVTable
from decayspectra.plotscript import FIGURES, GnuplotScript, emit_plotscript


def read(path):
    with open(path) as fd:
        return fd.read()


def spectrum(tmp, name, time):
    path = os.path.join(tmp, name)
    assert cli.run(["spectrum", "--time", str(time), "--points", "201",
                    "--out", path]) == 0
    return path


def test_gnuplot_script(tmp):
    path = os.path.join(tmp, "plain.gp")
    script = GnuplotScript(path)
    script.comment("two\nlines")
    script.set("logscale x")
    script.plot(["sin(x)", "cos(x)"])
    assert not os.path.exists(path)
    script.flush()
    assert read(path) == ("# two\n# lines\nset logscale x\n"
                          "plot sin(x), \\\n     cos(x)\n")


def test_fig1(tmp):
    a = spectrum(tmp, "tau.csv", 1)
    b = spectrum(tmp, "late.csv", 100)
    out = os.path.join(tmp, "fig1.gp")
    assert cli.run(["plotscript", "--figure", "fig1", "--csv", a, "--csv", b,
                    "--out", out]) == 0
    text = read(out)
    assert 'set output "fig1.png"' in text
    assert 'set datafile separator ","' in text
    assert '"tau.csv" using 1:2 with lines dt 1 lw 2 title "t = 1"' in text
    assert '"late.csv" using 1:2 with lines dt 2 lw 2 title "t = 100"' in text

    again = emit_plotscript([a, b], "fig1", os.path.join(tmp, "again.gp"))
    assert read(again) == text.replace("fig1.png", "again.png").replace(
        "fig1.gp", "again.gp")
    assert read(emit_plotscript([a, b], "fig1", out)) == text


def test_fig2_and_fig3(tmp):
    paths = [spectrum(tmp, "s%d.csv" % i, t) for i, t in enumerate((0.1, 0.5, 1, 3, 100))]
    text = read(emit_plotscript(paths, "fig2", os.path.join(tmp, "fig2.gp")))
    assert text.count("using 1:3") == 5
    assert "dt 5" in text

    fwhm = os.path.join(tmp, "fwhm.csv")
    assert cli.run(["fwhm", "--times", "0.1,1,100", "--format", "csv+plotscript",
                    "--out", fwhm]) == 0
    text = read(os.path.join(tmp, "fwhm.gp"))
    assert "set logscale x" in text
    assert "short(x) = 5.56" in text
    assert '"fwhm.csv" using 1:3' in text
    assert 'title "5.57 / t"' in text


def test_fig4(tmp):
    survival = CSVTable(os.path.join(tmp, "band-survival.csv"),
                        columns=("t", "survival_probability"))
    survival.extend([[0.0, 1.0], [1.0, 0.4]])
    survival.flush()
    spectra = CSVTable(os.path.join(tmp, "band.csv"),
                       columns=("t", "omega", "eta", "eta_normalized"))
    spectra.extend([[0.4, 0.0, 0.1, 1.0], [0.4, 1.0, 0.2, 2.0],
                    [100.0, 0.0, 0.3, 1.0], [100.0, 1.0, 0.1, 0.3]])
    spectra.flush()
    text = read(emit_plotscript([survival.path, spectra.path], "fig4",
                                os.path.join(tmp, "fig4.gp")))
    assert "set multiplot layout 2,1" in text
    assert 'exp(-x) with lines dt 2 lw 1 title "exp(-t/tau)"' in text
    assert "unset multiplot" in text
    assert '"band.csv" using 2:($1 == 0.4 ? $4 : 1/0)' in text
    assert '"band.csv" using 2:($1 == 100 ? $4 : 1/0)' in text
    try:
        emit_plotscript([spectra.path], "fig4", os.path.join(tmp, "x.gp"))
        assert False
    except ConfigurationError:
        pass


def test_errors(tmp):
    a = spectrum(tmp, "spectrum.csv", 1)
    out = os.path.join(tmp, "bad.gp")
    try:
        emit_plotscript([a], "fig3", out)
        assert False
    except ConfigurationError as e:
        assert "delta_omega_over_gamma" in str(e)
    for argv in (["--figure", "fig3", "--csv", a],
                 ["--figure", "fig9", "--csv", a],
                 ["--figure", "fig1", "--csv", os.path.join(tmp, "missing.csv")],
                 ["--figure", "fig1"]):
        assert cli.run(["plotscript"] + argv + ["--out", out]) == 2, argv
    assert not os.path.exists(out)
    assert sorted(FIGURES) == ["fig1", "fig2", "fig3", "fig4", "survival", "twobody"]


if __name__ == "__main__":
    tmp = tempfile.mkdtemp()
    try:
        test_gnuplot_script(tmp)
        test_fig1(tmp)
        test_fig2_and_fig3(tmp)
        test_fig4(tmp)
        test_errors(tmp)
    finally:
        shutil.rmtree(tmp)
    print("success")
