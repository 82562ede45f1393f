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

"""Shared domain types, the unit system and the error hierarchy.

Internally every energy is a plain float in natural units (hbar = c = 1)
and every time is its inverse. Natural energy units coincide with MeV;
conversion to eV or to seconds happens once, at the I/O boundary, through
:func:`convert_energy`.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

HBAR_MEV_S = 6.582119569e-22
"""Reduced Planck constant in MeV s (exact SI-derived value)."""

UNITS = ("natural", "MeV", "eV", "seconds")

_ENERGY_SCALE = {
    "natural": 1.0,
    "MeV": 1.0,
    "eV": 1.0e-6,
}


################################################################
# Errors
################################################################

class DecaySpectraError(RuntimeError):
    """Base class of every error raised by decayspectra."""
    pass


class ConfigurationError(DecaySpectraError):
    """A flag, config-file entry, unit tag or CSV column is unusable."""
    pass


class DomainError(DecaySpectraError, ValueError):
    """An argument lies outside the domain of a formula."""

    def __init__(self, message, value=None):
        DecaySpectraError.__init__(self, message)
        self.value = value


class UndefinedWidthError(DomainError):
    """A width is requested where none is defined (t = 0, or a mass
    outside the form-factor support)."""
    pass


class PreconditionError(DecaySpectraError):
    """A documented precondition does not hold, e.g. a root bracket
    without sign change."""
    pass


class NumericalFailure(DecaySpectraError):
    """A quadrature or solver did not reach its tolerance.

    The best estimate so far and its error are kept as attributes, so
    callers can report them."""

    def __init__(self, message, estimate=None, error=None):
        DecaySpectraError.__init__(self, message)
        self.estimate = estimate
        self.error = error

    def __str__(self):
        msg = DecaySpectraError.__str__(self)
        if self.error is not None:
            msg += " (estimate %s, error %.3g)" % (self.estimate, self.error)
        return msg


class RangeTooNarrowError(NumericalFailure):
    """No half-height crossing inside the sampled energy range."""
    pass


class NormalizationError(NumericalFailure):
    def __init__(self, message, deficit):
        NumericalFailure.__init__(self, message, estimate=1.0 - deficit,
                                  error=abs(deficit))
        self.deficit = deficit


class ConsistencyError(NumericalFailure):
    """w(t) + p(t) differs from one by more than the tolerance."""
    pass


################################################################
# Units
################################################################

def convert_energy(value, from_unit, to_unit):
    """Convert between natural units, MeV, eV and seconds.

    Seconds count as an inverse energy, so converting a lifetime in
    seconds to an energy unit yields the width hbar/tau and vice versa:
    ``convert_energy(8.52e-17, "seconds", "eV")`` is about 7.725 eV.
    """
    for unit in (from_unit, to_unit):
        if unit not in UNITS:
            raise ConfigurationError("unknown unit tag '%s' (known: %s)"
                                     % (unit, ", ".join(UNITS)))
    if from_unit == to_unit:
        return value
    if from_unit == "seconds":
        return HBAR_MEV_S / value / _ENERGY_SCALE[to_unit]
    if to_unit == "seconds":
        return HBAR_MEV_S / (value * _ENERGY_SCALE[from_unit])
    return value * (_ENERGY_SCALE[from_unit] / _ENERGY_SCALE[to_unit])


def convert_time(value, from_unit, to_unit):
    """Times in natural units are inverse MeV; ``seconds`` are seconds."""
    for unit in (from_unit, to_unit):
        if unit not in ("natural", "seconds"):
            raise ConfigurationError("unknown time unit '%s'" % unit)
    if from_unit == to_unit:
        return value
    if from_unit == "seconds":
        return value / HBAR_MEV_S
    return value * HBAR_MEV_S


def abs2(z):
    """|z|^2 as re^2 + im^2, elementwise."""
    z = np.asarray(z)
    return z.real * z.real + z.imag * z.imag


################################################################
# Domain types
################################################################

@dataclass(frozen=True)
class BreitWignerParams:
    """Peak mass and width of the exponential (Breit-Wigner) limit."""

    mass: float
    width: float

    def __post_init__(self):
        if not np.isfinite(self.mass):
            raise DomainError("mass must be finite", self.mass)
        if not self.width > 0:
            raise DomainError("width must be positive, got %r" % self.width,
                              self.width)

    @property
    def lifetime(self):
        return 1.0 / self.width

    @classmethod
    def from_lifetime(cls, mass, lifetime, unit="natural"):
        """Build the parameters from a lifetime given in ``unit``;
        the width is hbar/tau in the unit of ``mass``."""
        if not lifetime > 0:
            raise DomainError("lifetime must be positive", lifetime)
        if unit == "natural":
            return cls(mass, 1.0 / lifetime)
        return cls(mass, convert_energy(lifetime, "seconds", unit))


GRADINGS = ("uniform", "edges", "lower")


@dataclass(frozen=True)
class EnergyGrid:
    """A strictly increasing set of n >= 2 energies on [lo, hi].

    ``grading`` selects the node distribution: ``uniform`` spacing,
    ``edges`` (nodes cluster at both ends, spacing growing like the square
    root of the distance to the nearer end) or ``lower`` (clustered at
    ``lo`` only, for a threshold)."""

    lo: float
    hi: float
    n: int
    grading: str = "uniform"

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise DomainError("grid bounds must be finite")
        if not self.lo < self.hi:
            raise DomainError("grid needs lo < hi, got [%r, %r]"
                              % (self.lo, self.hi))
        if int(self.n) != self.n or self.n < 2:
            raise DomainError("grid needs at least two nodes", self.n)
        if self.grading not in GRADINGS:
            raise ConfigurationError("unknown grid grading '%s'" % self.grading)

    @classmethod
    def around(cls, center, half_width, n, grading="uniform"):
        return cls(center - half_width, center + half_width, n, grading)

    def nodes(self):
        u = np.linspace(0.0, 1.0, self.n)
        if self.grading == "edges":
            u = 0.5 * (1.0 - np.cos(np.pi * u))
        elif self.grading == "lower":
            u = u * u
        x = self.lo + (self.hi - self.lo) * u
        x[0], x[-1] = self.lo, self.hi
        return x

    @property
    def spacing(self):
        """Mean node distance."""
        return (self.hi - self.lo) / (self.n - 1)

    def contains(self, value):
        return self.lo <= value <= self.hi


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Probability measure of the energy of the unstable state.

    A continuum part sampled on ``grid`` plus point masses ``atoms``
    ((E, Z) pairs). ``density_fn``, when present, evaluates the continuum
    density anywhere and is preferred by the quadratures; ``tail_mass``
    is the analytically known continuum mass outside the grid. ``edges``
    are support ends where the density is not smooth; the quadratures
    grade their panels geometrically towards them."""

    grid: EnergyGrid
    density: np.ndarray
    atoms: Tuple[Tuple[float, float], ...] = ()
    support_min: float = -np.inf
    support_max: float = np.inf
    tail_mass: float = 0.0
    density_fn: Optional[Callable] = None
    tol: float = 1e-4
    scale: Optional[float] = field(default=None)
    edges: Tuple[float, ...] = ()

    def __post_init__(self):
        density = np.asarray(self.density, dtype=float)
        if density.shape != (self.grid.n,):
            raise DomainError("density needs %d samples, got %s"
                              % (self.grid.n, density.shape))
        if np.any(density < 0) or not np.all(np.isfinite(density)):
            raise DomainError("density must be finite and non-negative")
        for energy, weight in self.atoms:
            if not 0 < weight <= 1:
                raise DomainError("atom weight %r at E=%r outside (0, 1]"
                                  % (weight, energy), weight)
        if not self.tol > 0:
            raise DomainError("tolerance must be positive", self.tol)
        object.__setattr__(self, "density", density)
        object.__setattr__(self, "atoms",
                           tuple((float(e), float(z)) for e, z in self.atoms))
        object.__setattr__(self, "edges", tuple(float(e) for e in self.edges))

    def continuum(self, energy):
        """Continuum density at ``energy`` (vectorised)."""
        energy = np.asarray(energy, dtype=float)
        if self.density_fn is not None:
            return self.density_fn(energy)
        return np.interp(energy, self.grid.nodes(), self.density,
                         left=0.0, right=0.0)

    def panel_width(self):
        """Panel width the quadratures use to resolve the density."""
        width = 8.0 * self.grid.spacing
        if self.scale is not None:
            width = min(width, 0.5 * self.scale)
        return width

    def graded_points(self, lo, hi, decades=12):
        """Panel breakpoints edge +- (hi - lo)/2 * 10^-k, k = 1..decades,
        for every edge, restricted to the open interval (lo, hi)."""
        span = 0.5 * (hi - lo)
        offsets = span * 10.0 ** -np.arange(1, decades + 1)
        points = []
        for edge in self.edges:
            for candidate in np.concatenate([edge + offsets, edge - offsets]):
                if lo < candidate < hi:
                    points.append(float(candidate))
        return tuple(sorted(points))


@dataclass(frozen=True, eq=False)
class EnergyDistribution:
    """eta(t, omega) sampled over an energy grid at fixed t."""

    t: float
    omega: np.ndarray
    values: np.ndarray
    normalization: float = 1.0

    @property
    def normalized(self):
        if self.normalization == 0:
            return np.zeros_like(self.values)
        return self.values / self.normalization

    @property
    def integral(self):
        return float(trapezoid(self.values, self.omega))

    @property
    def peak(self):
        index = int(np.argmax(self.values))
        return float(self.omega[index]), float(self.values[index])


def measure_total(measure):
    """Trapezoid mass of the sampled density plus the atom weights."""
    total = float(trapezoid(measure.density, measure.grid.nodes()))
    return total + sum(weight for _, weight in measure.atoms)


def check_normalization(measure, tol=None):
    """Raise :class:`NormalizationError` unless the measure, including its
    known tail mass, integrates to one within ``tol``."""
    tol = measure.tol if tol is None else tol
    deficit = 1.0 - measure_total(measure) - measure.tail_mass
    logging.debug("spectral measure deficit %.3e (tol %.1e)", deficit, tol)
    if abs(deficit) > tol:
        raise NormalizationError("spectral measure is not normalised", deficit)
    return deficit


def lorentzian(mass, width, energy):
    """Breit-Wigner density (width/2pi) / ((E-M)^2 + width^2/4)."""
    x = np.asarray(energy, dtype=float) - mass
    return (width / (2 * np.pi)) / (x * x + 0.25 * width * width)


def lorentzian_mass(mass, width, lo, hi):
    """Mass of the Lorentzian on [lo, hi] in closed form."""
    return (np.arctan(2 * (hi - mass) / width)
            - np.arctan(2 * (lo - mass) / width)) / np.pi
