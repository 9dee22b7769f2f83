"""Depolarizing channel from a central spin coupled to effective bath spins.

A spin-1/2 coupled to an effective spin ``l`` (bath initially maximally
mixed) contracts its Bloch vector isotropically by

    F(t) = [4l^2 + 4l + 3 + 8l(l+1) cos((2l+1) g t / 2)] / [3 (2l+1)^2],

so the evolution is a depolarizing channel with p(t) = 1 - F(t).  Averaging
the cosine over a distribution of coupling constants g (Gaussian,
Lorentzian, uniform, ...) or over the angular-momentum sectors of a spin
star yields the other ensembles.  Decay rates gamma(t) = -F'(t)/F(t) are
computed from the analytic derivative of each closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Union

import numpy as np

from .errors import DomainError, PoleError

RATE_FLOOR = 1e-12
_WEIGHT_TOL = 1e-12


def half_integer(value) -> Fraction:
    """Validate and normalize a spin quantum number to an exact Fraction.

    Accepts ints, Fractions and floats that are exact multiples of 1/2
    (0.5, 1.0, 1.5, ... are all binary-exact).
    """
    try:
        f = Fraction(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"spin {value!r} is not a number") from exc
    if f.denominator not in (1, 2):
        raise DomainError(f"spin {value} is not a half-integer")
    return f


def _positive_spin(value) -> Fraction:
    spin = half_integer(value)
    if spin < Fraction(1, 2):
        raise DomainError(f"spin must be >= 1/2, got {spin}")
    return spin


@dataclass(frozen=True)
class FixedCoupling:
    """Single bath spin with a sharp coupling constant."""

    spin: object
    coupling: float

    def __post_init__(self):
        object.__setattr__(self, "spin", _positive_spin(self.spin))
        object.__setattr__(self, "coupling", float(self.coupling))


@dataclass(frozen=True)
class GaussianCoupling:
    """Coupling constant normally distributed with the given mean and sigma."""

    spin: object
    mean: float
    sigma: float

    def __post_init__(self):
        object.__setattr__(self, "spin", _positive_spin(self.spin))
        object.__setattr__(self, "mean", float(self.mean))
        if not self.sigma > 0:
            raise DomainError(f"sigma must be > 0, got {self.sigma}")
        object.__setattr__(self, "sigma", float(self.sigma))


@dataclass(frozen=True)
class LorentzianCoupling:
    """Coupling constant Lorentzian-distributed around zero."""

    spin: object
    half_width: float

    def __post_init__(self):
        object.__setattr__(self, "spin", _positive_spin(self.spin))
        if not self.half_width > 0:
            raise DomainError(f"half_width must be > 0, got {self.half_width}")
        object.__setattr__(self, "half_width", float(self.half_width))


@dataclass(frozen=True)
class UniformCoupling:
    """Coupling constant uniform on [low, high]."""

    spin: object
    low: float
    high: float

    def __post_init__(self):
        object.__setattr__(self, "spin", _positive_spin(self.spin))
        if not self.low < self.high:
            raise DomainError(f"need low < high, got [{self.low}, {self.high}]")
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "high", float(self.high))


@dataclass(frozen=True)
class SpinStar:
    """N bath spin-1/2's with identical couplings, decomposed into sectors."""

    size: int
    coupling: float

    def __post_init__(self):
        if not (isinstance(self.size, (int, np.integer)) and self.size >= 1):
            raise DomainError(f"spin-star size must be a positive integer, got {self.size}")
        object.__setattr__(self, "size", int(self.size))
        object.__setattr__(self, "coupling", float(self.coupling))


@dataclass(frozen=True)
class CustomEnsemble:
    """Finite weighted mixture of (spin, coupling) sectors.

    ``components`` is a sequence of (spin, coupling, weight) triples with
    positive weights summing to one.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple(
            (_positive_spin(l), float(g), float(q)) for (l, g, q) in self.components
        )
        if not comps:
            raise DomainError("custom ensemble needs at least one component")
        if any(q <= 0 for (_, _, q) in comps):
            raise DomainError("custom ensemble weights must be positive")
        total = sum(q for (_, _, q) in comps)
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise DomainError(f"custom ensemble weights sum to {total}, expected 1")
        object.__setattr__(self, "components", comps)


CouplingEnsemble = Union[
    FixedCoupling,
    GaussianCoupling,
    LorentzianCoupling,
    UniformCoupling,
    SpinStar,
    CustomEnsemble,
]


def degeneracy(n_spins: int, spin) -> int:
    """Number of angular-momentum-``spin`` sectors of n spin-1/2's.

    nu(N, l) = C(N, N/2 - l) - C(N, N/2 - l - 1), exact integer arithmetic.
    """
    if not (isinstance(n_spins, (int, np.integer)) and n_spins >= 1):
        raise DomainError(f"n_spins must be a positive integer, got {n_spins}")
    l = half_integer(spin)
    if l < 0:
        raise DomainError(f"spin must be >= 0, got {l}")
    k = Fraction(n_spins, 2) - l
    if k.denominator != 1 or k < 0:
        raise DomainError(f"spin {l} does not occur for {n_spins} spins")
    k = int(k)
    return comb(n_spins, k) - (comb(n_spins, k - 1) if k >= 1 else 0)


@dataclass(frozen=True)
class SectorWeight:
    spin: Fraction
    count: int
    weight: Fraction


@dataclass(frozen=True)
class SectorWeightTable:
    """Angular-momentum sectors of N spin-1/2's with their mixing weights."""

    n_spins: int
    rows: tuple

    def __post_init__(self):
        total_dim = sum(r.count * (2 * r.spin + 1) for r in self.rows)
        if total_dim != 2**self.n_spins:
            raise DomainError(
                f"sector dimensions sum to {total_dim}, expected 2^{self.n_spins}"
            )
        if sum(r.weight for r in self.rows) != 1:
            raise DomainError("sector weights must sum to exactly 1")


def sector_weights(n_spins: int) -> SectorWeightTable:
    """Sector table for a spin star of ``n_spins`` environmental spins."""
    if not (isinstance(n_spins, (int, np.integer)) and n_spins >= 1):
        raise DomainError(f"n_spins must be a positive integer, got {n_spins}")
    rows = []
    l = Fraction(n_spins, 2)
    dim = 2**n_spins
    while l >= 0:
        nu = degeneracy(n_spins, l)
        multiplicity = int(2 * l + 1)
        rows.append(SectorWeight(l, nu, Fraction(nu * multiplicity, dim)))
        l -= 1
    return SectorWeightTable(int(n_spins), tuple(rows))


def asymptotic_factor(spin) -> Fraction:
    """Long-time Bloch contraction floor x(l) = (4l^2+4l+3)/(3(2l+1)^2)."""
    l = _positive_spin(spin)
    return (4 * l * l + 4 * l + 3) / (3 * (2 * l + 1) ** 2)


def max_depolarization(spin) -> Fraction:
    """Saturation value 1 - x(l) = 8l(l+1)/(3(2l+1)^2) of p(t); always < 2/3."""
    l = _positive_spin(spin)
    return 8 * l * (l + 1) / (3 * (2 * l + 1) ** 2)


def _as_times(t):
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("time must be finite")
    if np.any(arr < 0):
        raise DomainError("time must be nonnegative")
    return arr


def _sinc(x):
    return np.sinc(x / np.pi)


def _sinc_prime(x):
    """d/dx sin(x)/x, stable near zero."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    xs = np.where(small, 1.0, x)
    out = np.where(small, -x / 3.0 + x**3 / 30.0, (np.cos(xs) - _sinc(xs)) / xs)
    return out


def _fixed_terms(l: Fraction, g: float, t: np.ndarray):
    """(F, dF/dt) for a sharp (spin, coupling) sector; l = 0 is allowed here
    (inert sector of a spin star)."""
    a = float(4 * l * l + 4 * l + 3)
    b = float(8 * l * (l + 1))
    denom = float(3 * (2 * l + 1) ** 2)
    half_freq = float(2 * l + 1) * g / 2.0
    theta = half_freq * t
    f = (a + b * np.cos(theta)) / denom
    df = -b * half_freq * np.sin(theta) / denom
    return f, df


def _factor_and_slope(ensemble: CouplingEnsemble, t: np.ndarray):
    if isinstance(ensemble, FixedCoupling):
        return _fixed_terms(ensemble.spin, ensemble.coupling, t)

    if isinstance(ensemble, GaussianCoupling):
        l = ensemble.spin
        a = float(4 * l * l + 4 * l + 3)
        b = float(8 * l * (l + 1))
        denom = float(3 * (2 * l + 1) ** 2)
        m = float(2 * l + 1)
        decay = np.exp(-(m**2) * ensemble.sigma**2 * t**2 / 8.0)
        phase = m * ensemble.mean / 2.0
        env = decay * np.cos(phase * t)
        denv = decay * (
            -(m**2) * ensemble.sigma**2 * t / 4.0 * np.cos(phase * t)
            - phase * np.sin(phase * t)
        )
        return (a + b * env) / denom, b * denv / denom

    if isinstance(ensemble, LorentzianCoupling):
        l = ensemble.spin
        a = float(4 * l * l + 4 * l + 3)
        b = float(8 * l * (l + 1))
        denom = float(3 * (2 * l + 1) ** 2)
        rate = float(2 * l + 1) * ensemble.half_width / 2.0
        env = np.exp(-rate * t)
        return (a + b * env) / denom, -b * rate * env / denom

    if isinstance(ensemble, UniformCoupling):
        l = ensemble.spin
        a = float(4 * l * l + 4 * l + 3)
        b = float(8 * l * (l + 1))
        denom = float(3 * (2 * l + 1) ** 2)
        kappa = float(2 * l + 1) / 2.0
        mid = 0.5 * (ensemble.low + ensemble.high)
        halfspan = 0.5 * (ensemble.high - ensemble.low)
        # average of cos(kappa g t) over g in [low, high]:
        #   cos(kappa mid t) * sinc(kappa halfspan t)
        u = kappa * mid * t
        v = kappa * halfspan * t
        env = np.cos(u) * _sinc(v)
        denv = -kappa * mid * np.sin(u) * _sinc(v) + kappa * halfspan * np.cos(u) * _sinc_prime(v)
        return (a + b * env) / denom, b * denv / denom

    if isinstance(ensemble, SpinStar):
        table = sector_weights(ensemble.size)
        f = np.zeros_like(t)
        df = np.zeros_like(t)
        for row in table.rows:
            w = float(row.weight)
            fk, dfk = _fixed_terms(row.spin, ensemble.coupling, t)
            f = f + w * fk
            df = df + w * dfk
        return f, df

    if isinstance(ensemble, CustomEnsemble):
        f = np.zeros_like(t)
        df = np.zeros_like(t)
        for l, g, q in ensemble.components:
            fk, dfk = _fixed_terms(l, g, t)
            f = f + q * fk
            df = df + q * dfk
        return f, df

    raise DomainError(f"unknown ensemble type {type(ensemble).__name__}")


def bloch_factor(ensemble: CouplingEnsemble, t):
    """Isotropic Bloch contraction factor F(t); F(0) = 1.

    ``t`` may be a scalar or an array of nonnegative times.
    """
    times = _as_times(t)
    f, _ = _factor_and_slope(ensemble, times)
    return float(f) if np.isscalar(t) or times.ndim == 0 else f


def depolarization_probability(ensemble: CouplingEnsemble, t):
    """Channel parameter p(t) = 1 - F(t)."""
    f = bloch_factor(ensemble, t)
    return 1.0 - f


def decay_rate(ensemble: CouplingEnsemble, t):
    """Generalized-Lindblad decay rate gamma(t) = -F'(t)/F(t).

    Computed from the analytic derivative of the closed form.  Raises
    :class:`PoleError` wherever F(t) is at or below the rate floor
    (rate undefined at full depolarization).
    """
    times = _as_times(t)
    f, df = _factor_and_slope(ensemble, times)
    if np.any(f <= RATE_FLOOR):
        raise PoleError(
            f"Bloch factor at or below {RATE_FLOOR}; decay rate undefined there"
        )
    rate = -df / f
    return float(rate) if np.isscalar(t) or times.ndim == 0 else rate
