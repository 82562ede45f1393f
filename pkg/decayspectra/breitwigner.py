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

"""Closed forms of the exponential (Breit-Wigner) limit.

For a state of mass M and width Gamma the survival amplitude is
exp(-iMt - Gamma t/2) and the energy of the decay products, measured at
time t, is distributed as::

    eta(t, w) = Gamma/(2 pi) |exp(-iwt) - exp(-iMt - Gamma t/2)|^2
                / ((w - M)^2 + Gamma^2/4)

The width of that distribution, delta_omega(t), falls from 2 y*/t at
short times to Gamma at long times.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from decayspectra.core import (DomainError, EnergyGrid, RangeTooNarrowError,
                               UndefinedWidthError, lorentzian)
from decayspectra.numerics import (QuadratureSpec, RootBracket, checked_quad,
                                   find_root, panel_integral)

_SHORT_TIME_CONSTANT = None


def _check_time(t):
    if t < 0:
        raise DomainError("time must be non-negative, got %r" % t, t)


def survival_amplitude_bw(p, t):
    _check_time(t)
    return complex(np.exp(complex(-0.5 * p.width * t, -p.mass * t)))


def survival_probability_bw(p, t):
    _check_time(t)
    return math.exp(-p.width * t)


def decay_probability_bw(p, t):
    """w(t) = 1 - exp(-Gamma t)."""
    _check_time(t)
    return -math.expm1(-p.width * t)


def eta_bw(p, t, omega):
    """eta(t, omega), vectorised in omega.

    The numerator is evaluated as (1 - e^{-Gamma t/2})^2
    + 4 e^{-Gamma t/2} sin^2((omega - M) t/2), which equals
    1 + e^{-Gamma t} - 2 e^{-Gamma t/2} cos((omega - M) t) but keeps
    full relative precision at small t."""
    _check_time(t)
    x = np.asarray(omega, dtype=float) - p.mass
    damping = math.exp(-0.5 * p.width * t)
    s = np.sin(0.5 * x * t)
    numerator = math.expm1(-0.5 * p.width * t) ** 2 + 4.0 * damping * s * s
    return (p.width / (2 * math.pi)) * numerator / (x * x + 0.25 * p.width ** 2)


def eta_peak_bw(p, t):
    """eta(t, M); equal to (2/(pi Gamma)) (1 - e^{-Gamma t/2})^2."""
    return float(eta_bw(p, t, p.mass))


def peak_value_printed(p, t):
    """The peak formula (2/(pi Gamma)) (1 - e^{-Gamma t})^2 as it appears
    in print. It disagrees with :func:`eta_peak_bw` and is exposed only
    so that the difference can be reported."""
    _check_time(t)
    return 2.0 / (math.pi * p.width) * math.expm1(-p.width * t) ** 2


def lorentzian_limit(p, omega):
    """eta(t -> infinity, omega)."""
    return lorentzian(p.mass, p.width, omega)


def short_time_constant():
    """The nonzero solution y* of y = sqrt(2) |1 - e^{iy}|, about 2.7831."""
    global _SHORT_TIME_CONSTANT
    if _SHORT_TIME_CONSTANT is None:
        _SHORT_TIME_CONSTANT = find_root(
            lambda y: y - 2.0 * math.sqrt(2.0) * math.sin(0.5 * y),
            RootBracket(2.0, 3.0), tol=1e-14)
    return _SHORT_TIME_CONSTANT


def fwhm_short_time(t):
    """Asymptotic width 2 y*/t for t -> 0."""
    if not t > 0:
        raise UndefinedWidthError("width undefined at t = %r" % t, t)
    return 2.0 * short_time_constant() / t


def fwhm_bw(p, t):
    """Full width at half maximum of eta(t, .).

    The half-height crossing contiguous to the peak is bracketed by a
    scan outward from M, then solved for. eta is symmetric around M, so
    the width is twice that offset."""
    if not t > 0:
        raise UndefinedWidthError("eta(0, .) vanishes, no width at t = %r" % t, t)
    half = 0.5 * eta_peak_bw(p, t)

    def excess(x):
        return float(eta_bw(p, t, p.mass + x)) - half

    step = 0.05 * min(p.width, 2 * math.pi / t)
    reach = 4.0 * max(p.width, 2.0 * short_time_constant() / t)
    offsets = np.arange(1, int(math.ceil(reach / step)) + 2) * step
    below = np.nonzero(eta_bw(p, t, p.mass + offsets) < half)[0]
    if len(below) == 0:
        raise RangeTooNarrowError("no half-height crossing within %g of M" % reach)
    k = below[0]
    lo = offsets[k - 1] if k > 0 else 0.0
    x = find_root(excess, RootBracket(lo, offsets[k]), tol=1e-13 * max(1.0, offsets[k]))
    logging.debug("fwhm_bw(t=%g): half-height offset %.12g", t, x)
    return 2.0 * x


def decay_probability_bw_numeric(p, t, half_width=None, spec=None):
    """w(t) as the integral of eta_bw over all energies.

    Panels cover M +- ``half_width`` (500 Gamma by default); beyond,
    eta_bw = Gamma/(2pi) (A - B cos(xt)) / (x^2 + Gamma^2/4) with
    A = 1 + e^{-Gamma t} and B = 2 e^{-Gamma t/2}, whose non-oscillating
    part has a closed form and whose oscillating part goes to QUADPACK's
    Fourier mode."""
    _check_time(t)
    if t == 0:
        return 0.0
    gamma = p.width
    L = 500.0 * gamma if half_width is None else half_width
    spec = spec or QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10,
                                  panel_width=0.5 * gamma)
    inner, _ = panel_integral(lambda w: eta_bw(p, t, w),
                              (p.mass - L, p.mass + L), spec, points=(p.mass,),
                              max_width=spec.max_width(t))

    a = 1.0 + math.exp(-gamma * t)
    b = 2.0 * math.exp(-0.5 * gamma * t)
    flat_tail = a / math.pi * (0.5 * math.pi - math.atan(2.0 * L / gamma))
    oscillating, _ = checked_quad(lambda x: 1.0 / (x * x + 0.25 * gamma * gamma),
                                  L, np.inf, weight="cos", wvar=t)
    tails = 2.0 * (flat_tail - b * gamma / (2 * math.pi) * oscillating)
    return float(inner) + tails


@dataclass(frozen=True, eq=False)
class EtaSampleSet:
    """eta_bw on a grid, with the values normalised to eta(t, M)."""

    params: object
    t: float
    grid: EnergyGrid
    values: np.ndarray
    normalized_values: np.ndarray


def default_grid(p, n=4001, half_width=25.0):
    """M +- 25 Gamma with 4001 nodes."""
    return EnergyGrid.around(p.mass, half_width * p.width, n)


def sample_eta_bw(p, t, grid=None):
    grid = grid or default_grid(p)
    values = eta_bw(p, t, grid.nodes())
    peak = eta_peak_bw(p, t)
    if peak > 0:
        normalized = values / peak
    else:
        logging.warning("eta vanishes at t = %g, normalised values set to zero", t)
        normalized = np.zeros_like(values)
    return EtaSampleSet(p, t, grid, values, normalized)
