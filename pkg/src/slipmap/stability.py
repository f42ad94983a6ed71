"""Closed-form existence and stability of symmetric fixed points of the apex map.

A symmetric fixed point is parametrised by its touchdown angular velocity
theta_d*, the angle of attack and the energy. Stability follows from the
analytic derivative of the map built on the expanded (``"taylor"``) sweep
angle. The special case theta_d* = sqrt(cos(alpha)) with the leading-order
stiffness has closed-form region boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq

from slipmap.errors import ExistenceError, NoPhysicalRootError, SingularityError
from slipmap.model import TouchdownState, check_alpha, radial_speed_from_energy
from slipmap.stiffness import stiffness_minimum, stiffness_symmetric


@dataclass(frozen=True)
class FixedPointRecord:
    Y_star: float
    theta_d_star: float
    L_d_star: float
    f_prime: float
    stable: bool
    d_delta_theta: float
    D_value: float


@dataclass(frozen=True)
class StabilityRegion:
    """Per-grid-point bounds. ``lower``/``upper`` are the f' = -1 / f' = +1 boundaries.

    NaN marks a boundary that does not exist at that grid point.
    """

    grid: np.ndarray
    lower: np.ndarray
    min_existence: np.ndarray
    upper: np.ndarray
    grid_label: str = "alpha"

    @property
    def alpha_grid(self):
        return self.grid

    @property
    def effective_lower(self):
        """Tightest lower bound: stable fixed points need both existence and f' > -1."""
        return np.fmax(self.lower, self.min_existence)

    def nonempty(self):
        return self.effective_lower < self.upper


class MapDerivative(NamedTuple):
    f_prime: float
    d_delta_theta: float
    D_value: float


def fixed_point_height(theta_d_star, L_d_star, alpha, check: bool = True) -> float:
    c, s = math.cos(alpha), math.sin(alpha)
    gap = theta_d_star * s - L_d_star * c
    if gap > 1e-12:
        raise ExistenceError(f"theta_d* sin(alpha) - L_d* cos(alpha) = {gap:.3g} > 0: no symmetric fixed point")
    Y = c + 0.5 * gap**2
    if check:
        energy = 0.5 * (theta_d_star**2 + L_d_star**2) + c
        Y_alt = energy - 0.5 * (theta_d_star * c + L_d_star * s) ** 2
        assert abs(Y - Y_alt) < 1e-12 * max(1.0, energy), (Y, Y_alt)
    return Y


def fixed_point_height_from_energy(theta_d_star, energy, alpha) -> float:
    """Alternative form E_s - (theta_d* cos a + L_d* sin a)^2 / 2."""
    L = radial_speed_from_energy(energy, theta_d_star, alpha)
    return energy - 0.5 * (theta_d_star * math.cos(alpha) + L * math.sin(alpha)) ** 2


def min_energy(theta_d_star, alpha) -> float:
    check_alpha(alpha)
    return theta_d_star**2 / (2.0 * math.cos(alpha) ** 2) + math.cos(alpha)


def D_value(alpha, energy, theta_d_star) -> float:
    """2 sqrt((Y* - cos a)(E_s - Y*)) rewritten in (alpha, E_s, theta_d*); signed below E_s^min."""
    L = radial_speed_from_energy(energy, theta_d_star, alpha)
    return theta_d_star * math.cos(2 * alpha) * L + math.sin(2 * alpha) * (
        energy - theta_d_star**2 - math.cos(alpha)
    )


def touchdown_derivatives(theta_d_star, alpha, energy):
    """(d theta_d / dY, d L_d / dY) at the fixed point."""
    L = radial_speed_from_energy(energy, theta_d_star, alpha)
    Y = fixed_point_height(theta_d_star, L, alpha, check=False)
    c, s = math.cos(alpha), math.sin(alpha)
    if Y - c <= 0.0 or energy - Y <= 0.0:
        raise SingularityError("fixed point on the domain boundary; touchdown derivatives diverge")
    d_theta = -(c / math.sqrt(energy - Y) + s / math.sqrt(Y - c)) / math.sqrt(2.0)
    d_L = -(theta_d_star / L) * d_theta
    return d_theta, d_L


def _require_existence(theta_d_star, alpha, energy):
    e_min = min_energy(theta_d_star, alpha)
    if not energy > e_min:
        raise ExistenceError(f"E_s = {energy} does not exceed E_s^min = {e_min:.6g}")


def sweep_derivative(theta_d_star, alpha, energy, K) -> float:
    """d(sweep angle)/dY at the fixed point, with K held fixed."""
    _require_existence(theta_d_star, alpha, energy)
    t2 = theta_d_star**2
    c = math.cos(alpha)
    radicand = 2.0 * energy - t2 - 2.0 * c
    if radicand <= 0.0:
        raise SingularityError("L_d* = 0")
    L = math.sqrt(radicand)
    D = D_value(alpha, energy, theta_d_star)
    return (2.0 / D) * (
        t2 / K * (4.0 + (t2 - c) / radicand)
        - L / theta_d_star * (alpha + math.pi**2 * math.sin(alpha) / (4.0 * K))
    )


def sweep_derivative_chain(theta_d_star, alpha, energy, K) -> float:
    """Same derivative, evaluated from the chain-rule form before D is substituted."""
    _require_existence(theta_d_star, alpha, energy)
    L = radial_speed_from_energy(energy, theta_d_star, alpha)
    d_th, d_L = touchdown_derivatives(theta_d_star, alpha, energy)
    th, c = theta_d_star, math.cos(alpha)
    return d_th / th * (2 * alpha + math.pi**2 * math.sin(alpha) / (2 * K)) + 2 * th / K * (
        2 * d_L - 2 * th / L * d_th + (th**2 - c) / L**2 * d_L
    )


def map_derivative(theta_d_star, alpha, energy, K) -> MapDerivative:
    d = sweep_derivative(theta_d_star, alpha, energy, K)
    D = D_value(alpha, energy, theta_d_star)
    return MapDerivative(1.0 - (math.sin(alpha) + D) * d, d, D)


def stability_interval(alpha, D) -> tuple:
    return 0.0, 2.0 / (math.sin(alpha) + D)


def stability_check(theta_d_star, alpha, energy, K) -> FixedPointRecord:
    fp, d, D = map_derivative(theta_d_star, alpha, energy, K)
    lo, hi = stability_interval(alpha, D)
    L = radial_speed_from_energy(energy, theta_d_star, alpha)
    return FixedPointRecord(
        Y_star=fixed_point_height(theta_d_star, L, alpha),
        theta_d_star=theta_d_star,
        L_d_star=L,
        f_prime=fp,
        stable=lo < d < hi,
        d_delta_theta=d,
        D_value=D,
    )


# special case theta_d* = sqrt(cos alpha), leading-order stiffness


def special_theta(alpha) -> float:
    return math.sqrt(math.cos(alpha))


def min_energy_special(alpha) -> float:
    return 1.0 / (2.0 * math.cos(alpha)) + math.cos(alpha)


def D_special(alpha, energy) -> float:
    c = math.cos(alpha)
    return math.cos(2 * alpha) * math.sqrt(c * (2 * energy - 3 * c)) + math.sin(2 * alpha) * (energy - 2 * c)


def sweep_derivative_special(alpha, energy) -> float:
    c = math.cos(alpha)
    return (
        2 * alpha
        / D_special(alpha, energy)
        * (16 * alpha / math.pi**2 - math.sqrt((2 * energy - 3 * c) / c) * (1 + alpha * math.tan(alpha)))
    )


def map_derivative_special(alpha, energy) -> MapDerivative:
    d = sweep_derivative_special(alpha, energy)
    D = D_special(alpha, energy)
    return MapDerivative(1.0 - (math.sin(alpha) + D) * d, d, D)


def energy_upper_special(alpha) -> float:
    c = math.cos(alpha)
    return 1.5 * c + 128 * alpha**2 * c / (math.pi**4 * (1 + alpha * math.tan(alpha)) ** 2)


# region boundaries


def _first_root(fn: Callable[[float], float], lo, hi, n=400, sign_change: Optional[int] = None, xtol=1e-12):
    """First root of fn on (lo, hi) found by a grid scan and Brent refinement; NaN if none."""
    xs = np.linspace(lo, hi, n)
    vals = []
    for x in xs:
        try:
            vals.append(fn(x))
        except (NoPhysicalRootError, SingularityError, ExistenceError):
            vals.append(math.nan)
    vals = np.array(vals)
    for i in range(n - 1):
        a, b = vals[i], vals[i + 1]
        if not (np.isfinite(a) and np.isfinite(b)) or a * b > 0:
            continue
        if sign_change is not None and np.sign(b - a) != sign_change:
            continue
        if a == 0.0:
            return float(xs[i])
        return brentq(fn, xs[i], xs[i + 1], xtol=xtol)
    return math.nan


def _general_stiffness(theta_d_star, alpha, energy) -> float:
    td = TouchdownState.from_energy(theta_d_star, energy, alpha)
    return stiffness_symmetric(td, alpha).K


def general_f_prime(theta_d_star, alpha, energy) -> float:
    K = _general_stiffness(theta_d_star, alpha, energy)
    return map_derivative(theta_d_star, alpha, energy, K).f_prime


def energy_bounds(alpha, mode: str = "special", theta_d_star=None, energy_span=2.0):
    """(E_s^-, E_s^min, E_s^+) for one angle of attack.

    ``mode="special"`` uses theta_d* = sqrt(cos a) with the leading-order
    stiffness and the closed-form E_s^+; ``mode="general"`` uses the given
    theta_d* (default sqrt(cos a)) with the quadratic stiffness evaluated at each
    energy. E_s^- is the f' = -1 root between E_s^min and E_s^+.
    """
    check_alpha(alpha)
    if mode == "special":
        e_min = min_energy_special(alpha)
        e_plus = energy_upper_special(alpha)
        fprime = lambda e: map_derivative_special(alpha, e).f_prime
    elif mode == "general":
        th = special_theta(alpha) if theta_d_star is None else theta_d_star
        e_min = min_energy(th, alpha)

        def dd(e):
            return sweep_derivative(th, alpha, e, _general_stiffness(th, alpha, e))

        lo = e_min * (1 + 1e-9) + 1e-9
        e_plus = _first_root(dd, lo, e_min + energy_span, n=600, sign_change=-1)
        fprime = lambda e: general_f_prime(th, alpha, e)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    e_minus = math.nan
    if np.isfinite(e_plus) and e_plus > e_min:
        lo = e_min + 1e-9 * max(1.0, e_min)
        e_minus = _first_root(lambda e: fprime(e) + 1.0, lo, e_plus, n=600)
    return e_minus, e_min, e_plus


def energy_region(alpha, mode: str = "special", theta_d_star=None) -> StabilityRegion:
    alphas = np.atleast_1d(np.asarray(alpha, dtype=float))
    rows = np.array([energy_bounds(a, mode, theta_d_star) for a in alphas])
    return StabilityRegion(alphas, rows[:, 0], rows[:, 1], rows[:, 2], "alpha")


def stiffness_region(alpha, mode: str = "special", theta_d_star=None) -> StabilityRegion:
    """K^- = K(E_s^-), K^min at the existence threshold, K^+ = K(E_s^+), per angle."""
    alphas = np.atleast_1d(np.asarray(alpha, dtype=float))
    lower, kmin, upper = [], [], []
    for a in alphas:
        th = special_theta(a) if theta_d_star is None else theta_d_star
        e_minus, _, e_plus = energy_bounds(a, mode, theta_d_star)
        kmin.append(stiffness_minimum(th, a).K)
        lower.append(_general_stiffness(th, a, e_minus) if np.isfinite(e_minus) else math.nan)
        upper.append(_general_stiffness(th, a, e_plus) if np.isfinite(e_plus) else math.nan)
    return StabilityRegion(alphas, np.array(lower), np.array(kmin), np.array(upper), "alpha")


def velocity_bounds(alpha, energy, n=800):
    """Stable interval (theta_d*^-, theta_d*^+) at fixed (alpha, E_s); NaNs if empty.

    theta_d* ranges over (0, cos(a) sqrt(2 (E_s - cos a))), the existence
    window. The widest contiguous interval with |f'| < 1 is returned.
    """
    c = math.cos(alpha)
    if energy <= c:
        return math.nan, math.nan
    th_max = c * math.sqrt(2.0 * (energy - c))

    def fp(th):
        return general_f_prime(th, alpha, energy)

    ths = np.linspace(th_max * 1e-3, th_max * (1 - 1e-9), n)
    vals = []
    for th in ths:
        try:
            vals.append(fp(th))
        except (NoPhysicalRootError, SingularityError, ExistenceError):
            vals.append(math.nan)
    vals = np.array(vals)
    stable = np.isfinite(vals) & (np.abs(vals) < 1.0)
    best = None
    i = 0
    while i < n:
        if not stable[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and stable[j + 1]:
            j += 1
        if best is None or (ths[j] - ths[i]) > (ths[best[1]] - ths[best[0]]):
            best = (i, j)
        i = j + 1
    if best is None:
        return math.nan, math.nan

    def edge(k_in, k_out):
        if k_out < 0 or k_out >= n or not np.isfinite(vals[k_out]):
            return float(ths[k_in])
        target = 1.0 if vals[k_out] >= 1.0 else -1.0
        return brentq(lambda th: fp(th) - target, *sorted((ths[k_in], ths[k_out])), xtol=1e-12)

    i, j = best
    return edge(i, i - 1), edge(j, j + 1)


def velocity_region(alpha, energy) -> StabilityRegion:
    """Sweep exactly one of ``alpha`` / ``energy`` (array) with the other held fixed."""
    a_arr, e_arr = np.atleast_1d(alpha).astype(float), np.atleast_1d(energy).astype(float)
    if a_arr.size > 1 and e_arr.size > 1:
        raise ValueError("sweep either alpha or energy, not both")
    if e_arr.size > 1:
        grid, label = e_arr, "energy"
        pairs = [(a_arr[0], e) for e in e_arr]
    else:
        grid, label = a_arr, "alpha"
        pairs = [(a, e_arr[0]) for a in a_arr]
    bounds = np.array([velocity_bounds(a, e) for a, e in pairs])
    # existence: theta_d* below cos(a) sqrt(2(E - cos a))
    th_exist = np.array([math.cos(a) * math.sqrt(2.0 * (e - math.cos(a))) for a, e in pairs])
    return StabilityRegion(grid, bounds[:, 0], th_exist, bounds[:, 1], label)
