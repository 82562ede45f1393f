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

"""Quadrature and root-finding engines.

All quadratures here are built from Gauss-Legendre panels
(:func:`gauss_panels`). A panel integral is refined by halving every
panel until two successive estimates agree within the tolerances of a
:class:`QuadratureSpec`. Semi-infinite pieces go to QUADPACK through
:func:`scipy.integrate.quad`, in its Fourier mode when t != 0.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import brentq

from decayspectra.core import (DomainError, NumericalFailure,
                               PreconditionError, RangeTooNarrowError)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits of a quadrature.

    ``oscillation_period_hint`` and ``panel_width`` cap the panel width
    in addition to the 2pi/(8t) bound derived from the oscillation
    frequency."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 1 << 17
    oscillation_period_hint: Optional[float] = None
    panel_width: Optional[float] = None
    order: int = 16

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1 or self.order < 2:
            raise DomainError("invalid quadrature limits")

    def accepts(self, error, value):
        return error <= max(self.abs_tol, self.rel_tol * abs(value))

    def max_width(self, t=0.0):
        widths = [w for w in (self.panel_width,) if w]
        if self.oscillation_period_hint:
            widths.append(self.oscillation_period_hint / 8.0)
        if t:
            widths.append(2 * math.pi / (8.0 * abs(t)))
        return min(widths) if widths else None


DEFAULT_SPEC = QuadratureSpec()
PV_SLACK = 1e3


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float


_LEGGAUSS = {}


def _legendre(order):
    if order not in _LEGGAUSS:
        _LEGGAUSS[order] = leggauss(order)
    return _LEGGAUSS[order]


def _panel_edges(domain, points=(), max_width=None, multiplier=1):
    a, b = domain
    cuts = [a] + sorted(p for p in set(points) if a < p < b) + [b]
    edges = [np.array([a])]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        count = 1
        if max_width:
            count = max(1, int(math.ceil((hi - lo) / max_width - 1e-9)))
        count *= multiplier
        edges.append(np.linspace(lo, hi, count + 1)[1:])
    return np.concatenate(edges)


def gauss_panels(domain, points=(), max_width=None, order=16, multiplier=1):
    """Nodes and weights of composite Gauss-Legendre quadrature on the
    finite ``domain``. Every interior point in ``points`` becomes a panel
    boundary; panels are at most ``max_width`` wide before being split
    ``multiplier`` times."""
    a, b = domain
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise DomainError("gauss_panels needs a finite interval, got %r" % (domain,))
    edges = _panel_edges(domain, points, max_width, multiplier)
    xi, wi = _legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    weights = (half[:, None] * wi[None, :]).ravel()
    return nodes, weights


def panel_integral(f, domain, spec=DEFAULT_SPEC, points=(), max_width=None):
    """Integrate the vectorised ``f`` over the finite ``domain``.

    ``f`` maps an array of nodes of shape (n,) to values of shape
    (..., n); the result has shape (...). All panels are halved until two
    successive estimates agree within ``spec`` (measured in the max norm).
    Returns (value, error)."""
    multiplier = 1
    nodes, weights = gauss_panels(domain, points, max_width, spec.order)
    base_panels = len(nodes) // spec.order
    previous = np.asarray(f(nodes)) @ weights
    error = None
    while True:
        multiplier *= 2
        panels = multiplier * base_panels
        if panels > spec.max_subdivisions:
            raise NumericalFailure("panel quadrature on [%g, %g] did not converge"
                                   % domain, estimate=previous, error=error)
        nodes, weights = gauss_panels(domain, points, max_width, spec.order,
                                      multiplier)
        current = np.asarray(f(nodes)) @ weights
        error = float(np.max(np.abs(current - previous)))
        scale = float(np.max(np.abs(current)))
        if spec.accepts(error, scale):
            logging.debug("panel quadrature on [%g, %g]: %d panels, error %.2e",
                          domain[0], domain[1], panels, error)
            return current, error
        previous = current


def _quad(f, a, b, spec, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        value, error = quad(f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                            limit=200, **kwargs)[:2]
    return value, error


def checked_quad(f, a, b, spec=DEFAULT_SPEC, **kwargs):
    """:func:`_quad` that raises :class:`NumericalFailure` unless the
    QUADPACK error estimate is within ``spec``."""
    value, error = _quad(f, a, b, spec, **kwargs)
    if not (np.isfinite(value) and spec.accepts(error, value)):
        raise NumericalFailure("QUADPACK on [%g, %g] did not converge" % (a, b),
                               estimate=value, error=error)
    return value, error


def fourier_tail(g, t, start, spec=DEFAULT_SPEC):
    """int_start^inf g(x) e^{-ixt} dx through QUADPACK, in its Fourier
    mode when t != 0. ``g`` is vectorised and may be complex."""
    def part(fn):
        if t == 0:
            return checked_quad(fn, start, np.inf, spec)[0], 0.0
        cos = checked_quad(fn, start, np.inf, spec, weight="cos", wvar=abs(t))[0]
        sin = checked_quad(fn, start, np.inf, spec, weight="sin", wvar=abs(t))[0]
        return cos, math.copysign(1.0, t) * sin

    def real(x):
        return float(np.real(g(np.array([x])))[0])

    re_cos, re_sin = part(real)
    value = complex(re_cos, -re_sin)
    if np.iscomplexobj(g(np.array([start + 1.0]))):
        def imag(x):
            return float(np.imag(g(np.array([x])))[0])
        im_cos, im_sin = part(imag)
        value += complex(im_sin, im_cos)
    return value


def fourier_integral(g, t, domain, spec=DEFAULT_SPEC, points=()):
    """int g(E) e^{-iEt} dE over ``domain``.

    ``g`` is vectorised. A finite domain is integrated with panels no
    wider than 2pi/(8t) (and ``spec``'s caps), refined until converged.
    An infinite end needs a finite cut in ``points`` (or the other
    endpoint): the panel part stops there and the semi-infinite
    remainder is handed to QUADPACK."""
    a, b = domain
    finite = [p for p in points if np.isfinite(p)]
    lo = a if np.isfinite(a) else min(finite + ([b] if np.isfinite(b) else []),
                                     default=None)
    hi = b if np.isfinite(b) else max(finite + ([a] if np.isfinite(a) else []),
                                     default=None)
    if lo is None or hi is None or not lo < hi:
        raise PreconditionError("fourier_integral needs a finite window inside %r"
                                % (domain,))

    def integrand(x):
        return g(x) * np.exp(-1j * x * t)

    value, error = panel_integral(integrand, (lo, hi), spec, points,
                                  spec.max_width(t))
    value = complex(value)
    if not np.isfinite(b):
        value += fourier_tail(g, t, hi, spec)
    if not np.isfinite(a):
        def mirrored(x):
            return g(-x)
        value += fourier_tail(mirrored, -t, -lo, spec)
    return value


def pv_integral(f, singularity, domain, spec=DEFAULT_SPEC, slack=PV_SLACK):
    """Cauchy principal value of int f over ``domain`` with a simple pole
    at ``singularity``.

    The part symmetric around the pole, of half-width h, is integrated as
    int_0^h [f(s+u) + f(s-u)] du, where the pole terms cancel; the
    rest of the domain is regular. ``domain`` ends may be infinite.

    The pole terms cancel only up to rounding, which limits what QUADPACK
    can certify near u = 0: the summed error estimate is accepted up to
    ``slack`` times the tolerance of ``spec``. Pass ``slack=1`` for the
    strict check."""
    a, b = domain
    s = singularity
    if not a < s < b:
        raise PreconditionError("singularity %r not inside %r" % (s, domain))
    h = min(s - a, b - s)

    def symmetric(u):
        return f(s + u) + f(s - u)

    total, error = _quad(symmetric, 0.0, h, spec)
    if s - a > h:
        value, err = _quad(f, a, s - h, spec)
        total, error = total + value, error + err
    elif b - s > h:
        value, err = _quad(f, s + h, b, spec)
        total, error = total + value, error + err
    bound = slack * max(spec.abs_tol, spec.rel_tol * abs(total))
    if not (np.isfinite(total) and error <= bound):
        raise NumericalFailure("principal value around %g did not converge" % s,
                               estimate=total, error=error)
    return total


def find_root(f, bracket, tol=1e-12):
    """Root of ``f`` inside ``bracket``: Brent's method, and plain
    bisection if Brent fails."""
    lo, hi = bracket.lo, bracket.hi
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if f_lo * f_hi > 0:
        raise PreconditionError("no sign change on [%r, %r]" % (lo, hi))
    try:
        root, result = brentq(f, lo, hi, xtol=tol, full_output=True,
                              disp=False)
        if result.converged:
            return root
    except (RuntimeError, ValueError) as e:
        logging.info("brentq failed (%s), bisecting", e)
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _crossing(omega, eta, index, half):
    """Linear interpolation of the half-height crossing between the
    nodes index-1 and index (in walking order)."""
    x0, x1 = omega[index - 1], omega[index]
    y0, y1 = eta[index - 1], eta[index]
    if y1 == y0:
        return x1
    return x0 + (half - y0) * (x1 - x0) / (y1 - y0)


def half_height_width(omega, eta, peak_index=None):
    """Full width at half maximum of a sampled peak, using the
    crossings contiguous to the peak."""
    omega = np.asarray(omega, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if peak_index is None:
        peak_index = int(np.argmax(eta))
    p = peak_index
    if not (0 < p < len(eta) - 1 and eta[p] > eta[p - 1] and eta[p] > eta[p + 1]):
        raise PreconditionError("index %d is not a strict local maximum" % p)
    half = 0.5 * eta[p]

    right = np.nonzero(eta[p:] <= half)[0]
    left = np.nonzero(eta[p::-1] <= half)[0]
    if len(right) == 0 or len(left) == 0:
        raise RangeTooNarrowError("half height not reached inside [%g, %g]"
                                  % (omega[0], omega[-1]))
    upper = _crossing(omega[p:], eta[p:], right[0], half)
    lower = _crossing(omega[p::-1], eta[p::-1], left[0], half)
    return upper - lower


def lorentzian_tail_bound(width, half_width):
    """Mass of a Lorentzian of ``width`` outside +-``half_width``."""
    return 1.0 - 2.0 / math.pi * math.atan(2.0 * half_width / width)


def power_law_fit(x, y):
    """Exponent p of y = C x^p from a least-squares fit in log-log."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("power-law fit needs positive samples")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)
