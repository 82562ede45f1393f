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

"""Decay beyond the Breit-Wigner limit, in the Lee model.

An unstable state of bare energy M couples with strength g to a
continuum of states |k> of energy omega(k) = k through a form factor
f(k). Three form factors are implemented:

``flat``
    f^2 = 1 everywhere. Reproduces the Breit-Wigner limit with
    Gamma = g^2.
``band``
    f^2 = (1 + alpha k) on the band |k - M| < E0, zero outside.
``smooth``
    f^2 = (1 + alpha k) sqrt(k - E_th) / (k^2 + Lambda^2) above the
    threshold E_th = M - E0.

The self-energy is taken as Pi(E) = -int dk/2pi g^2 f^2(k)/(E - k + i0),
so that Im Pi = g^2 f^2(E)/2 >= 0 on the support and the propagator
G(E) = 1/(E - M + Pi(E)) has its continuum pole below the real axis.
The spectral density is |Im G|/pi. Real roots of E - M + Re Pi(E)
outside the support are the emergent discrete levels.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

from decayspectra.core import (ConfigurationError, ConsistencyError,
                               DomainError, EnergyGrid, NumericalFailure,
                               SpectralMeasure, UndefinedWidthError, abs2,
                               check_normalization, lorentzian_mass)
from decayspectra.numerics import (QuadratureSpec, RootBracket, checked_quad,
                                   find_root, fourier_integral, fourier_tail,
                                   gauss_panels, panel_integral, pv_integral)

VARIANTS = ("flat", "band", "smooth")

_SELF_ENERGY_SPEC = QuadratureSpec(abs_tol=1e-11, rel_tol=1e-9)


@dataclass(frozen=True)
class FormFactorModel:
    """Coupling ``g`` and form factor of the Lee model.

    ``mass`` is the bare energy M of the unstable state; the band is
    centred on it and the smooth threshold sits at M - ``half_width``.
    Energies are in any consistent unit, conventionally units of the
    width Gamma."""

    coupling: float
    mass: float
    variant: str = "flat"
    half_width: float = math.inf
    alpha: float = 0.0
    cutoff: Optional[float] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigurationError("unknown form factor '%s' (known: %s)"
                                     % (self.variant, ", ".join(VARIANTS)))
        if not self.coupling > 0:
            raise DomainError("coupling must be positive", self.coupling)
        if self.variant == "flat":
            return
        if not (self.half_width > 0 and math.isfinite(self.half_width)):
            raise DomainError("half width E0 must be positive and finite",
                              self.half_width)
        if self.variant == "band":
            lo, hi = self.support
            if 1 + self.alpha * lo <= 0 or 1 + self.alpha * hi <= 0:
                raise DomainError("1 + alpha k must stay positive on the band",
                                  self.alpha)
        else:
            if self.cutoff is None or not self.cutoff > 0:
                raise DomainError("smooth form factor needs a positive cutoff",
                                  self.cutoff)
            if self.alpha < 0 or 1 + self.alpha * self.threshold < 0:
                raise DomainError("1 + alpha k must stay non-negative above "
                                  "threshold", self.alpha)

    @classmethod
    def flat(cls, coupling, mass):
        return cls(coupling, mass)

    @classmethod
    def band(cls, coupling, mass, half_width, alpha=0.0):
        return cls(coupling, mass, "band", half_width, alpha)

    @classmethod
    def smooth(cls, coupling, mass, half_width, alpha, cutoff):
        return cls(coupling, mass, "smooth", half_width, alpha, cutoff)

    @property
    def threshold(self):
        if self.variant == "flat":
            return -math.inf
        return self.mass - self.half_width

    @property
    def support(self):
        """Interval on which f^2 > 0."""
        if self.variant == "flat":
            return (-math.inf, math.inf)
        if self.variant == "band":
            return (self.mass - self.half_width, self.mass + self.half_width)
        return (self.threshold, math.inf)

    @property
    def width(self):
        return fermi_golden_rule(self)


@dataclass(frozen=True)
class DiscreteLevel:
    """A real pole of the propagator outside the continuum."""

    energy: float
    residue: float
    offset: float = math.nan
    edge_degenerate: bool = False


def support(model):
    return model.support


def _bare(model, mass):
    return model.mass if mass is None else mass


def _smooth_f2(model, k):
    if k <= model.threshold:
        return 0.0
    return ((1 + model.alpha * k) * math.sqrt(k - model.threshold)
            / (k * k + model.cutoff ** 2))


def form_factor_squared(model, k):
    """f^2(k), vectorised."""
    k = np.asarray(k, dtype=float)
    if model.variant == "flat":
        return np.ones_like(k)
    if model.variant == "band":
        inside = np.abs(k - model.mass) < model.half_width
        return np.where(inside, 1 + model.alpha * k, 0.0)
    above = np.clip(k - model.threshold, 0.0, None)
    return (1 + model.alpha * k) * np.sqrt(above) / (k * k + model.cutoff ** 2)


def imag_self_energy(model, E):
    """Im Pi(E) = g^2 f^2(E)/2."""
    return 0.5 * model.coupling ** 2 * form_factor_squared(model, E)


def _band_prefactor(model, E):
    return model.coupling ** 2 / (2 * math.pi) * (1 + model.alpha * E)


def _smooth_real_part(model, E):
    """Re Pi(E) = g^2/2pi PV int f^2(k)/(k - E) dk for the smooth model."""
    th = model.threshold
    g2 = model.coupling ** 2
    if E <= th:
        # k = th + u^2 removes the square-root branch point
        gap = th - E

        def integrand(u):
            k = th + u * u
            return (2 * (1 + model.alpha * k) / (k * k + model.cutoff ** 2)
                    * u * u / (u * u + gap))

        value, _ = checked_quad(integrand, 0.0, np.inf, _SELF_ENERGY_SPEC)
        return g2 / (2 * math.pi) * value

    def integrand(k):
        return _smooth_f2(model, k) / (k - E)

    return g2 / (2 * math.pi) * pv_integral(integrand, E, (th, np.inf),
                                            _SELF_ENERGY_SPEC)


def real_self_energy(model, E):
    E = np.asarray(E, dtype=float)
    if model.variant == "flat":
        return np.zeros_like(E)
    if model.variant == "band":
        x = E - model.mass
        with np.errstate(divide="ignore"):
            log_ratio = (np.log(np.abs(x - model.half_width))
                         - np.log(np.abs(x + model.half_width)))
        return _band_prefactor(model, E) * log_ratio
    flat = np.array([_smooth_real_part(model, e) for e in E.ravel()])
    return flat.reshape(E.shape)


def self_energy(model, E):
    """Pi(E), vectorised.

    flat gives i g^2/2; band uses the closed form
    g^2/2pi (1 + alpha E) log[(E - M - E0)/(E - M + E0)]; smooth
    integrates the principal value numerically."""
    return real_self_energy(model, E) + 1j * imag_self_energy(model, E)


def propagator(model, E, mass=None):
    return 1.0 / (np.asarray(E, dtype=float) - _bare(model, mass)
                  + self_energy(model, E))


def _density_from(model, E, re_pi, mass):
    im_pi = imag_self_energy(model, E)
    with np.errstate(invalid="ignore", over="ignore"):
        denominator = (E - mass + re_pi) ** 2 + im_pi ** 2
        density = np.where(im_pi > 0, im_pi / (math.pi * denominator), 0.0)
    return np.nan_to_num(density, nan=0.0, posinf=0.0)


def spectral_density(model, E, mass=None):
    """Continuum part of d_S(E) = |Im G(E)|/pi, vectorised."""
    E = np.asarray(E, dtype=float)
    return _density_from(model, E, real_self_energy(model, E),
                         _bare(model, mass))


def fermi_golden_rule(model, mass=None):
    """Gamma = g^2 f^2(M), since omega'(k) = 1."""
    mass = _bare(model, mass)
    f2 = float(form_factor_squared(model, mass))
    if not f2 > 0:
        raise UndefinedWidthError("M = %g lies outside the form-factor support"
                                  % mass, mass)
    return model.coupling ** 2 * f2


def band_model_for_width(coupling, half_width, alpha, width=1.0, mass=None):
    """Band model whose golden-rule width is ``width``.

    Solves Gamma = g^2 (1 + alpha M) for M; with alpha = 0 the mass is
    free and must be given."""
    if alpha == 0:
        if mass is None or not math.isclose(coupling ** 2, width, rel_tol=1e-12):
            raise DomainError("alpha = 0 fixes Gamma = g^2 and leaves M free")
        return FormFactorModel.band(coupling, mass, half_width, alpha)
    return FormFactorModel.band(coupling, (width / coupling ** 2 - 1) / alpha,
                                half_width, alpha)


def smooth_model_for_width(mass, half_width, alpha, cutoff, width=1.0):
    """Smooth-cutoff model with the coupling chosen so Gamma = ``width``."""
    f2 = (1 + alpha * mass) * math.sqrt(half_width) / (mass ** 2 + cutoff ** 2)
    return FormFactorModel.smooth(math.sqrt(width / f2), mass, half_width,
                                  alpha, cutoff)


def _energy_scale(model):
    try:
        return fermi_golden_rule(model)
    except UndefinedWidthError:
        return model.half_width


################################################################
# Discrete levels
################################################################

def _band_side(model, side, delta, mass):
    """F = E - M + Re Pi(E) at distance ``delta`` outside a band edge.

    The logarithm is written in terms of delta so that levels a tiny
    distance from the edge keep their relative precision."""
    e0 = model.half_width
    if side < 0:
        x = -e0 - delta
        log_ratio = np.log(2 * e0 + delta) - np.log(delta)
    else:
        x = e0 + delta
        log_ratio = np.log(delta) - np.log(2 * e0 + delta)
    E = model.mass + x
    return x + (model.mass - mass) + _band_prefactor(model, E) * log_ratio


def _central_difference(fn, x, h):
    return (fn(x + h) - fn(x - h)) / (2 * h)


def _band_levels(model, mass):
    e0 = model.half_width
    scale = _energy_scale(model)
    levels = []
    for side in (-1, +1):
        edge = model.mass + side * e0

        def F(delta):
            return _band_side(model, side, delta, mass)

        deltas = np.geomspace(1e-14 * e0, 1e6 * (e0 + abs(model.mass) + scale), 600)
        values = F(deltas)
        signs = np.sign(values)
        if signs[0] == side or signs[0] == 0:
            # The root is closer to the edge than the scan can resolve.
            logging.warning("level at the %s band edge is edge-degenerate",
                            "lower" if side < 0 else "upper")
            delta = deltas[0]
            slope = _central_difference(F, delta, 0.5 * delta)
            levels.append(DiscreteLevel(edge + side * delta,
                                        1.0 / (side * slope), delta, True))
        for i in np.nonzero(signs[:-1] * signs[1:] < 0)[0]:
            delta = find_root(lambda d: float(F(d)),
                              RootBracket(deltas[i], deltas[i + 1]),
                              tol=1e-12 * deltas[i])
            h = min(1e-6 * scale, 1e-4 * delta)
            # dF/dE is side * dF/d(delta)
            slope = side * _central_difference(F, delta, h)
            residue = 1.0 / slope
            logging.info("band level at edge %+g: delta %.6g, Z %.6g",
                         edge, delta, residue)
            levels.append(DiscreteLevel(edge + side * delta, residue, delta))
    return sorted(levels, key=lambda level: level.energy)


def _smooth_F(model, mass):
    return lambda E: E - mass + _smooth_real_part(model, E)


def critical_coupling(model, mass=None):
    """Coupling above which the smooth model binds a level below threshold.

    F(E) = E - M + Re Pi(E) increases monotonically below threshold, so
    a level exists iff F(E_th) > 0; Re Pi scales with g^2."""
    if model.variant != "smooth":
        raise ConfigurationError("critical coupling is defined for the smooth "
                                 "form factor only")
    mass = _bare(model, mass)
    th = model.threshold
    per_g2 = _smooth_real_part(model, th) / model.coupling ** 2
    if mass <= th:
        return 0.0
    return math.sqrt((mass - th) / per_g2)


def _smooth_levels(model, mass):
    F = _smooth_F(model, mass)
    th = model.threshold
    f_th = F(th)
    if f_th <= 0:
        logging.info("smooth model below critical coupling, no level")
        return []
    scale = _energy_scale(model)
    gap = model.half_width
    for _ in range(80):
        if F(th - gap) < 0:
            break
        gap *= 2
    energy = find_root(F, RootBracket(th - gap, th), tol=1e-13 * max(1.0, gap))
    distance = th - energy
    degenerate = distance <= 1e-10 * max(1.0, abs(th))
    h = min(1e-3 * scale, 0.1 * distance) if not degenerate else 1e-3 * scale
    slope = _central_difference(F, energy - h if degenerate else energy, h)
    return [DiscreteLevel(energy, 1.0 / slope, distance, degenerate)]


def find_discrete_levels(model, mass=None):
    """Real poles of G outside the continuum, with residues
    Z = 1/(1 + d Re Pi/dE)."""
    mass = _bare(model, mass)
    if model.variant == "flat":
        return []
    if model.variant == "band":
        return _band_levels(model, mass)
    return _smooth_levels(model, mass)


################################################################
# Spectral measure
################################################################

def default_spectral_grid(model, mass=None):
    mass = _bare(model, mass)
    if model.variant == "flat":
        return EnergyGrid.around(mass, 50.0 * model.coupling ** 2, 4001)
    if model.variant == "band":
        lo, hi = model.support
        return EnergyGrid(lo, hi, 4001, "edges")
    reach = 60.0 * max(_energy_scale(model), model.cutoff)
    return EnergyGrid(model.threshold, mass + reach, 2001, "lower")


def _power_law_tail(nodes, density):
    """Extrapolation d(E) = d_n ((E - E_th)/(E_n - E_th))^-p beyond the
    last node, with p from the last two nodes."""
    th = nodes[0]
    d1, d2 = density[-2], density[-1]
    x1, x2 = nodes[-2] - th, nodes[-1] - th
    if d1 > 0 and d2 > 0:
        power = -math.log(d2 / d1) / math.log(x2 / x1)
    else:
        power = math.inf
    return power, x2, d2


def spectral_function(model, mass=None, grid=None, tol=1e-3, check=True):
    """The spectral measure d_S of the unstable state: continuum density
    |Im G|/pi sampled on ``grid`` plus the discrete levels as atoms."""
    mass = _bare(model, mass)
    grid = grid or default_spectral_grid(model, mass)
    nodes = grid.nodes()
    levels = find_discrete_levels(model, mass)
    atoms = tuple((level.energy, level.residue) for level in levels)
    lo, hi = model.support
    scale = _energy_scale(model)

    if model.variant == "flat":
        density = spectral_density(model, nodes, mass)
        gamma = model.coupling ** 2
        measure = SpectralMeasure(
            grid, density, atoms, lo, hi,
            tail_mass=1.0 - lorentzian_mass(mass, gamma, grid.lo, grid.hi),
            density_fn=lambda E: spectral_density(model, E, mass),
            tol=tol, scale=gamma)
    elif model.variant == "band":
        density = spectral_density(model, nodes, mass)
        measure = SpectralMeasure(
            grid, density, atoms, lo, hi,
            density_fn=lambda E: spectral_density(model, E, mass),
            tol=tol, scale=scale, edges=(lo, hi))
    else:
        density = spectral_density(model, nodes, mass)
        interpolant = PchipInterpolator(nodes, density, extrapolate=False)
        power, x_last, d_last = _power_law_tail(nodes, density)
        th = model.threshold
        tail_mass = d_last * x_last / (power - 1) if power > 1 else 0.0

        def density_fn(E):
            E = np.asarray(E, dtype=float)
            inner = np.nan_to_num(interpolant(E), nan=0.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                outer = d_last * ((E - th) / x_last) ** (-power)
            values = np.where(E > grid.hi, outer, inner)
            return np.clip(np.where(E <= th, 0.0, values), 0.0, None)

        measure = SpectralMeasure(grid, density, atoms, lo, hi,
                                  tail_mass=tail_mass, density_fn=density_fn,
                                  tol=tol, scale=scale, edges=(th,))
    if check:
        check_normalization(measure)
    return measure


################################################################
# Time evolution
################################################################

def _window(measure):
    return (max(measure.grid.lo, measure.support_min),
            min(measure.grid.hi, measure.support_max))


def _amplitude_spec(measure):
    """Default tolerances of a(t), one decade looser for a measure with
    edges."""
    if measure.edges:
        return QuadratureSpec(abs_tol=1e-9, rel_tol=1e-7,
                              panel_width=measure.panel_width())
    return QuadratureSpec(abs_tol=1e-10, rel_tol=1e-8,
                          panel_width=measure.panel_width())


_TAIL_SPEC = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-8)


def survival_amplitude_general(measure, t, spec=None):
    """a(t) = int d_S(E) e^{-iEt} dE + sum Z_i e^{-iE_i t}."""
    if t < 0:
        raise DomainError("time must be non-negative", t)
    lo, hi = _window(measure)
    spec = spec or _amplitude_spec(measure)
    points = (lo, hi) + measure.graded_points(lo, hi)
    if measure.density_fn is not None:
        domain = (measure.support_min, measure.support_max)
        value = fourier_integral(measure.density_fn, t, domain, spec,
                                 points=points)
    else:
        value = fourier_integral(measure.continuum, t, (lo, hi), spec,
                                 points=points)
    for energy, weight in measure.atoms:
        value += weight * complex(math.cos(energy * t), -math.sin(energy * t))
    return value


def survival_probability_general(measure, t, spec=None):
    return float(abs2(survival_amplitude_general(measure, t, spec)))


def nonsurvival_probability(measure, t):
    """1 - |a(t)/a(0)|^2 without cancellation.

    With the mean energy E_bar of the measure as phase reference,
    m - Re a' = sum 2 w d sin^2((E - E_bar) t/2) and
    Im a' = -sum w d sin((E - E_bar) t), so
    1 - |a'|^2/m^2 = ((m - Re a')(m + Re a') - Im a'^2)/m^2 keeps its
    relative precision down to t -> 0. The continuum is integrated over
    the sampled window only."""
    if t < 0:
        raise DomainError("time must be non-negative", t)
    lo, hi = _window(measure)
    width = measure.panel_width()
    if t > 0:
        width = min(width, 2 * math.pi / (8 * t))
    nodes, weights = gauss_panels((lo, hi), measure.graded_points(lo, hi),
                                  max_width=width)
    mass = weights * measure.continuum(nodes)
    if measure.atoms:
        nodes = np.concatenate([nodes, [e for e, _ in measure.atoms]])
        mass = np.concatenate([mass, [z for _, z in measure.atoms]])
    total = mass.sum()
    mean = (mass * nodes).sum() / total
    phase = (nodes - mean) * t
    missing = (2 * mass * np.sin(0.5 * phase) ** 2).sum()
    imag = -(mass * np.sin(phase)).sum()
    real = total - missing
    return float((missing * (total + real) - imag * imag) / total ** 2)


def _kernel_sum(nodes, weighted, omega, t):
    """sum_j weighted_j h(E_j, omega) for every omega, with
    h(E, w) = (e^{-iwt} - e^{-iEt})/(w - E)
            = -i t e^{-i(w + E)t/2} sinc((E - w)t/2pi).
    The sinc form is exact at E = w."""
    sinc = np.sinc(np.subtract.outer(omega, nodes) * (t / (2 * math.pi)))
    phase = weighted * np.exp(-0.5j * nodes * t)
    total = sinc @ phase.real + 1j * (sinc @ phase.imag)
    return -1j * t * np.exp(-0.5j * omega * t) * total


def _energy_nodes(measure, t, width, multiplier=1):
    """Nodes and weights for integrals over the continuum.

    The sampled window gets panels at most ``width`` wide, graded towards
    the edges of the measure. A density known beyond the grid is also
    integrated out to 50/t from the window centre, on panels that double
    in width and resolve the oscillation e^{-iEt}."""
    lo, hi = _window(measure)
    nodes, weights = gauss_panels((lo, hi), measure.graded_points(lo, hi),
                                  max_width=width, multiplier=multiplier)
    if measure.density_fn is None or t == 0:
        return nodes, weights
    centre, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    reach = 50.0 / t
    if reach <= half:
        return nodes, weights
    doublings = int(math.ceil(math.log2(reach / half)))
    steps = half * 2.0 ** np.arange(1, doublings + 1)
    nodes, weights = [nodes], [weights]
    for sign, end, limit in ((1, hi, measure.support_max),
                             (-1, lo, measure.support_min)):
        outer = centre + sign * reach
        outer = min(outer, limit) if sign > 0 else max(outer, limit)
        a, b = sorted((end, outer))
        if not a < b:
            continue
        more, more_weights = gauss_panels((a, b), tuple(centre + sign * steps),
                                          max_width=2 * math.pi / (8 * t),
                                          multiplier=multiplier)
        nodes.append(more)
        weights.append(more_weights)
    return np.concatenate(nodes), np.concatenate(weights)


def _final_state_integral(measure, t, omega, width, multiplier):
    nodes, weights = _energy_nodes(measure, t, width, multiplier)
    weighted = weights * measure.continuum(nodes)
    chunk = max(1, 2000000 // len(nodes))
    result = np.empty(len(omega), dtype=complex)
    for start in range(0, len(omega), chunk):
        part = omega[start:start + chunk]
        result[start:start + chunk] = _kernel_sum(nodes, weighted, part, t)
    if measure.atoms:
        energies = np.array([e for e, _ in measure.atoms])
        residues = np.array([z for _, z in measure.atoms])
        result += _kernel_sum(energies, residues, omega, t)
    return result


def eta_general(model, measure, t, omega, spec=None, adaptive=True):
    """eta(t, w) = Im Pi(w)/pi |int dE d_S(E) (e^{-iwt} - e^{-iEt})/(w - E)|^2,
    vectorised in ``omega``; the atoms of the measure contribute their
    own terms. Zero outside the continuum support."""
    if t < 0:
        raise DomainError("time must be non-negative", t)
    omega = np.asarray(omega, dtype=float)
    flat = np.atleast_1d(omega).ravel()
    im_pi = imag_self_energy(model, flat)
    eta = np.zeros_like(flat)
    inside = im_pi > 0
    if t == 0 or not inside.any():
        return eta.reshape(omega.shape)

    spec = spec or QuadratureSpec(abs_tol=1e-9, rel_tol=1e-6)
    width = min(measure.panel_width(), 2 * math.pi / (8 * t))
    points = flat[inside]
    if adaptive:
        multiplier = 1
        previous = _final_state_integral(measure, t, points, width, multiplier)
        while True:
            multiplier *= 2
            current = _final_state_integral(measure, t, points, width, multiplier)
            error = float(np.max(np.abs(current - previous)))
            if spec.accepts(error, float(np.max(np.abs(current)))):
                break
            if multiplier >= 64:
                raise NumericalFailure("final-state integral did not converge",
                                       error=error)
            previous = current
    else:
        current = _final_state_integral(measure, t, points, width, 2)
    eta[inside] = im_pi[inside] / math.pi * abs2(current)
    return eta.reshape(omega.shape)


def _tail_piece(g, start, t, amplitude, survival):
    """int_start^inf g(w) |e^{-iwt} - a|^2 dw for a real weight g."""
    flat = fourier_tail(g, 0.0, start, _TAIL_SPEC).real
    oscillating = fourier_tail(g, t, start, _TAIL_SPEC)
    return (1.0 + survival) * flat - 2.0 * (amplitude.conjugate() * oscillating).real


def _outside_tail(model, measure, mass, t, amplitude):
    """Decay probability beyond the sampled window.

    There the final-state amplitude is (e^{-iwt} - a(t))/(w - M + i Im Pi(w))
    to leading order, so
    eta = Im Pi(w)/pi |e^{-iwt} - a|^2 / ((w - M)^2 + Im Pi(w)^2),
    exact for the flat model. The oscillating part goes to QUADPACK's
    Fourier mode."""
    lo, hi = _window(measure)
    s_lo, s_hi = model.support
    survival = float(abs2(amplitude))

    def weight(w):
        w = np.asarray(w, dtype=float)
        im_pi = imag_self_energy(model, w)
        return im_pi / (math.pi * ((w - mass) ** 2 + im_pi ** 2))

    def mirrored(u):
        return weight(-np.asarray(u, dtype=float))

    tail = 0.0
    if s_hi > hi:
        tail += _tail_piece(weight, hi, t, amplitude, survival)
    if s_lo < lo:
        tail += _tail_piece(mirrored, -lo, -t, amplitude, survival)
    return tail


def decay_probability_general(model, measure, t, mass=None, spec=None, tol=1e-3):
    """w(t) = int eta(t, w) dw over the continuum support.

    Raises :class:`ConsistencyError` when w(t) + p(t) misses one by more
    than ``tol``, i.e. when the quadrature settings are too loose."""
    if t < 0:
        raise DomainError("time must be non-negative", t)
    if t == 0:
        return 0.0
    mass = _bare(model, mass)
    lo, hi = _window(measure)
    spec = spec or QuadratureSpec(abs_tol=1e-7, rel_tol=1e-5)
    width = min(2 * measure.panel_width(), math.pi / (2 * t))
    points = measure.graded_points(lo, hi)
    if lo < mass < hi:
        points += (mass,)
    value, error = panel_integral(
        lambda w: eta_general(model, measure, t, w, adaptive=False),
        (lo, hi), spec, points=points, max_width=width)
    amplitude = survival_amplitude_general(measure, t)
    survival = float(abs2(amplitude))
    value = float(value) + _outside_tail(model, measure, mass, t, amplitude)
    defect = value + survival - 1.0
    logging.info("w(%g) = %.8f, p = %.8f, defect %.2e", t, value, survival, defect)
    if abs(defect) > tol:
        raise ConsistencyError("w(t) + p(t) = %.6f at t = %g" % (1 + defect, t),
                               estimate=value, error=abs(defect))
    return value
