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

"""Two-body final states: how the total energy omega of the decay
products is shared between particle 1 (mass m1) and particle 2 (mass m2)
flying back to back, and the resulting per-particle energy
distributions."""

import math
from dataclasses import dataclass

import numpy as np

from decayspectra.breitwigner import eta_bw, fwhm_bw
from decayspectra.core import BreitWignerParams, DomainError, EnergyGrid


@dataclass(frozen=True)
class TwoBodyConfig:
    """Masses of the decay products and the parent resonance."""

    m1: float
    m2: float
    mass: float
    width: float

    def __post_init__(self):
        if self.m1 < 0 or self.m2 < 0:
            raise DomainError("masses must be non-negative")
        if not self.width > 0 or not self.mass > 0:
            raise DomainError("parent mass and width must be positive")
        if abs(self.dm2) >= self.mass ** 2:
            raise DomainError("|m1^2 - m2^2| = %g must stay below M^2 = %g"
                              % (abs(self.dm2), self.mass ** 2), self.dm2)

    @classmethod
    def from_masses(cls, mass, width, m1, m2):
        return cls(m1, m2, mass, width)

    @property
    def params(self):
        return BreitWignerParams(self.mass, self.width)

    @property
    def dm2(self):
        return self.m1 ** 2 - self.m2 ** 2

    @property
    def omega_bar1(self):
        return (self.mass ** 2 + self.dm2) / (2 * self.mass)

    @property
    def omega_bar2(self):
        return (self.mass ** 2 - self.dm2) / (2 * self.mass)

    @property
    def width1(self):
        return (0.5 - self.dm2 / (2 * self.mass ** 2)) * self.width

    @property
    def width2(self):
        return (0.5 + self.dm2 / (2 * self.mass ** 2)) * self.width

    def peak(self, which):
        return self.omega_bar1 if which == 1 else self.omega_bar2

    def partial_width(self, which):
        return self.width1 if which == 1 else self.width2

    def swapped(self):
        return TwoBodyConfig(self.m2, self.m1, self.mass, self.width)


def partial_widths(cfg):
    """(Gamma_1, Gamma_2), summing to Gamma."""
    if abs(cfg.dm2) >= cfg.mass ** 2:
        raise DomainError("partial widths need |dm2| < M^2", cfg.dm2)
    return cfg.width1, cfg.width2


def split_energies(omega, m1, m2):
    """(omega_1, omega_2) of two particles sharing the total energy omega."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise DomainError("total energy must be positive")
    dm2 = m1 * m1 - m2 * m2
    omega1 = (omega * omega + dm2) / (2 * omega)
    omega2 = (omega * omega - dm2) / (2 * omega)
    if omega1.ndim == 0:
        return float(omega1), float(omega2)
    return omega1, omega2


def momentum(omega, m1, m2):
    """Momentum of either particle in the rest frame, through the
    Kallen function lambda(omega^2, m1^2, m2^2)."""
    s = np.asarray(omega, dtype=float) ** 2
    kallen = (s - (m1 + m2) ** 2) * (s - (m1 - m2) ** 2)
    return np.sqrt(np.clip(kallen, 0.0, None)) / (2 * np.sqrt(s))


def _root(omega_i, dm2):
    omega_i = np.asarray(omega_i, dtype=float)
    radicand = omega_i * omega_i - dm2
    if np.any(radicand < 0):
        raise DomainError("omega_i^2 must be at least %g" % dm2)
    return np.sqrt(radicand)


def invert_energy(omega_i, dm2, branch=+1):
    """omega = omega_i +- sqrt(omega_i^2 - dm2)."""
    if branch not in (+1, -1):
        raise DomainError("branch must be +1 or -1", branch)
    value = omega_i + branch * _root(omega_i, dm2)
    return float(value) if np.ndim(value) == 0 else value


def eta1_exact(eta, t, omega1, dm2):
    """Distribution of omega_1 given the distribution eta(t, omega) of
    the total energy: both branches omega = omega_1 +- r, with
    r = sqrt(omega_1^2 - dm2), weighted by |1 +- omega_1/r|. Infinite at
    r = 0."""
    omega1 = np.asarray(omega1, dtype=float)
    r = _root(omega1, dm2)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = omega1 / r
    upper = np.abs(1 + ratio) * eta(t, omega1 + r)
    lower = np.abs(1 - ratio) * eta(t, omega1 - r)
    total = upper + np.where(np.isfinite(ratio), lower, 0.0)
    return total


def eta2_exact(eta, t, omega2, dm2):
    """Particle 2 sees the mass difference with the opposite sign."""
    return eta1_exact(eta, t, omega2, -dm2)


def _narrow(cfg, t, omega_i, which):
    sign = 1 if which == 1 else -1
    scale = 2 * cfg.mass ** 2 / (cfg.mass ** 2 - sign * cfg.dm2)
    omega_i = np.asarray(omega_i, dtype=float)
    return scale * eta_bw(cfg.params, t, cfg.mass + scale * (omega_i - cfg.peak(which)))


def eta1_narrow(p, cfg, t, omega1):
    """Narrow-resonance form of eta1_exact: a Breit-Wigner shape in
    omega_1 with peak omega_bar_1 and width Gamma_1."""
    _check_params(p, cfg)
    return _narrow(cfg, t, omega1, 1)


def eta2_narrow(p, cfg, t, omega2):
    _check_params(p, cfg)
    return _narrow(cfg, t, omega2, 2)


def _check_params(p, cfg):
    if p.mass != cfg.mass or p.width != cfg.width:
        raise DomainError("Breit-Wigner parameters disagree with the two-body "
                          "configuration")


def fwhm_particle(cfg, t, which):
    """Width of the per-particle distribution, (Gamma_i/Gamma) delta_omega(t)."""
    return cfg.partial_width(which) / cfg.width * fwhm_bw(cfg.params, t)


def particle_grid(cfg, which, n=4001, half_width=25.0):
    """omega_bar_i +- 25 Gamma_i."""
    return EnergyGrid.around(cfg.peak(which), half_width * cfg.partial_width(which), n)


def sample_eta_particle(cfg, t, which, grid=None, exact=True):
    """(omega_i, eta_i) on the per-particle grid."""
    grid = grid or particle_grid(cfg, which)
    omega = grid.nodes()
    if exact:
        def eta(time, w):
            return eta_bw(cfg.params, time, w)
        if which == 1:
            values = eta1_exact(eta, t, omega, cfg.dm2)
        else:
            values = eta2_exact(eta, t, omega, cfg.dm2)
    else:
        values = _narrow(cfg, t, omega, which)
    return omega, values
