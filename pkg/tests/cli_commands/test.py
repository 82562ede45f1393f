from __future__ import print_function

import math
import os
import shutil
import tempfile

from decayspectra import cli
from decayspectra.computation import Computation
from decayspectra.core import NumericalFailure
from decayspectra.files import CSVTable


def csv_run(tmp, name, argv):
    path = os.path.join(tmp, name)
    assert cli.run(argv + ["--out", path]) == 0, argv
    return CSVTable.read(path)


def test_spectrum(tmp):
    table = csv_run(tmp, "eta.csv", [
        "spectrum", "--model", "bw", "--mass", "1", "--width", "0.05",
        "--time", "20", "--omega-min", "-0.25", "--omega-max", "2.25",
        "--points", "2001"])
    assert table.columns == ("omega", "eta", "eta_normalized")
    assert len(table.value) == 2001
    assert table.metadata["command"] == "spectrum"
    assert table.metadata["time"] == "20"
    assert table.metadata["omega-min"] == "-0.25"
    assert len(table.metadata["config-hash"]) == 32
    omega = table.column("omega")
    assert omega[0] == -0.25 and omega[-1] == 2.25
    assert abs(table.column("eta_normalized").max() - 1) < 1e-9

    with open(os.path.join(tmp, "eta.csv"), "rb") as fd:
        raw = fd.read()
    assert b"\r" not in raw
    assert raw.startswith(b"# ")


def test_fwhm(tmp):
    table = csv_run(tmp, "fwhm.csv", ["fwhm", "--model", "bw", "--width", "1",
                                      "--times", "0.1,0.5,1,3,100"])
    assert table.columns == ("t", "delta_omega", "delta_omega_over_gamma")
    t, delta, ratio = table.value[-1]
    assert t == 100
    assert abs(delta - 1) < 1e-2 and abs(ratio - 1) < 1e-2
    assert abs(table.value[0][2] * 0.1 / 5.566 - 1) < 1e-2
    ratios = table.column("delta_omega_over_gamma")
    assert all(a >= b for a, b in zip(ratios, ratios[1:]))


def test_survival(tmp):
    table = csv_run(tmp, "p.csv", ["survival", "--times", "0,1,2"])
    p = table.column("survival_probability")
    w = table.column("decay_probability")
    assert abs(p[0] - 1) < 1e-12 and w[0] == 0
    assert abs(p[1] - math.exp(-1)) < 1e-9
    assert abs(w[2] - (1 - math.exp(-2))) < 1e-9

    flat = csv_run(tmp, "flat.csv", ["survival", "--model", "flat", "--times", "1"])
    assert abs(flat.column("survival_probability")[0] - math.exp(-1)) < 1e-3
    assert flat.metadata["coupling"] == "1"
    assert flat.metadata["unitarity"] == "no"


def test_survival_unitarity(tmp):
    bw = csv_run(tmp, "bw-w.csv", ["survival", "--times", "0,1,3",
                                   "--unitarity", "yes"])
    assert bw.metadata["unitarity"] == "yes"
    w = bw.column("decay_probability")
    assert w[0] == 0
    assert abs(w[1] - (1 - math.exp(-1))) < 1e-4
    assert abs(w[2] - (1 - math.exp(-3))) < 1e-4

    flat = csv_run(tmp, "flat-w.csv", ["survival", "--model", "flat",
                                       "--times", "0.1,1", "--unitarity", "y"])
    w = flat.column("decay_probability")
    p = flat.column("survival_probability")
    assert abs(w[0] - (1 - math.exp(-0.1))) < 1e-3
    assert abs(w[1] + p[1] - 1) < 1e-3

    out = os.path.join(tmp, "never.csv")
    assert cli.run(["survival", "--unitarity", "maybe", "--out", out]) == 2
    assert not os.path.exists(out)



def test_twobody(tmp):
    table = csv_run(tmp, "mu.csv", ["twobody", "--particle", "2", "--points", "501"])
    assert table.columns == ("omega", "eta_exact", "eta_narrow")
    assert len(table.value) == 501
    exact = table.column("eta_exact")
    narrow = table.column("eta_narrow")
    assert abs(exact.max() / narrow.max() - 1) < 5e-2


def test_poles(tmp):
    table = csv_run(tmp, "levels.csv", ["poles", "--model", "band"])
    assert table.columns == ("energy", "residue", "offset_from_edge", "edge_degenerate")
    assert len(table.value) == 2
    mass = float(table.metadata["mass"])
    half_width = float(table.metadata["half-width"])
    assert table.value[0][0] < mass - half_width
    assert table.value[1][0] > mass + half_width
    assert all(0 < row[1] < 1e-4 for row in table.value)

    empty = csv_run(tmp, "none.csv", ["poles", "--model", "flat"])
    assert empty.value == []


def test_scenario(tmp):
    table = csv_run(tmp, "pi.csv", ["scenario", "piplus", "--time", "1.0"])
    assert table.columns[:3] == ("t_over_tau", "ratio_mu", "ratio_nu")
    row = table.value[0]
    assert abs(row[1] - 0.2134) < 1e-3 and abs(row[2] - 0.7866) < 1e-3
    assert table.metadata["name"] == "piplus"
    assert table.metadata["preset-muon-mass"] == "105.658 MeV [user]"
    assert not os.path.exists(os.path.join(tmp, "pi-survival.csv"))

    pi0 = csv_run(tmp, "pi0.csv", ["scenario", "--name", "pi0"])
    assert len(pi0.value) == 6
    assert abs(pi0.value[-1][2] / 3.8627 - 1) < 1e-2

    band = csv_run(tmp, "band.csv", ["scenario", "fig4_band", "--time", "0.4",
                                     "--points", "101"])
    assert band.columns == ("t", "omega", "eta", "eta_normalized")
    assert len(band.value) == 101
    assert abs(float(band.metadata["short-time-exponent"]) - 2) < 0.1
    survival = CSVTable.read(os.path.join(tmp, "band-survival.csv"))
    p = survival.column("survival_probability")
    assert len(p) == 101 and abs(p[0] - 1) < 1e-3 and p[-1] < 2e-2
    levels = CSVTable.read(os.path.join(tmp, "band-levels.csv"))
    assert len(levels.value) == 2



def test_exit_codes(tmp):
    out = os.path.join(tmp, "x.csv")
    assert cli.run([]) == 2
    assert cli.run(["--help"]) == 0
    assert cli.run(["frobnicate"]) == 2
    assert cli.run(["spectrum", "--bogus", "1", "--out", out]) == 2
    assert cli.run(["spectrum", "--points", "2", "--out", out]) == 2
    assert cli.run(["spectrum", "--time", "soon", "--out", out]) == 2
    assert cli.run(["spectrum", "--width", "-1", "--out", out]) == 2
    assert cli.run(["spectrum", "--format", "png", "--out", out]) == 2
    assert cli.run(["poles", "--model", "bw", "--out", out]) == 2
    assert cli.run(["scenario", "kaon", "--out", out]) == 2
    assert cli.run(["twobody", "--m1", "2", "--out", out]) == 2
    assert not os.path.exists(out)


class Broken(Computation):
    """Fails half way through."""

    title = "broken"
    outputs = {"table": CSVTable(columns=("x",))}

    def run(self):
        self.o.table.append([1.0])
        raise NumericalFailure("quadrature did not converge", 0.5, 1e-2)


def test_numerical_failure(tmp):
    out = os.path.join(tmp, "broken.csv")
    cli.COMMANDS["broken"] = Broken
    try:
        assert cli.run(["broken", "--out", out]) == 3
    finally:
        del cli.COMMANDS["broken"]
    assert not os.path.exists(out)
    assert [f for f in os.listdir(tmp) if f.endswith(".tmp")] == []


if __name__ == "__main__":
    tmp = tempfile.mkdtemp()
    try:
        test_spectrum(tmp)
        test_fwhm(tmp)
        test_survival(tmp)
        test_survival_unitarity(tmp)
        test_twobody(tmp)
        test_poles(tmp)
        test_scenario(tmp)
        test_exit_codes(tmp)
        test_numerical_failure(tmp)
    finally:
        shutil.rmtree(tmp)
    print("success")
