"""Second-order Poincare-Lindstedt solutions of the stance phase (K -> infinity, eps = 1/sqrt(K)).

All quantities are truncated at O(eps^2). Two sweep-angle formulas are kept:
``"full"`` evaluates the arccos form, ``"taylor"`` its expansion about eps = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Union

import numpy as np

from slipmap.errors import DegenerateContactError, DomainError, SingularityError
from slipmap.model import ModelParams, TouchdownState

SweepFn = Callable[[TouchdownState, ModelParams], float]
Variant = Union[Literal["full", "taylor"], SweepFn]


@dataclass(frozen=True)
class StanceCoefficients:
    omega_tilde: float
    A: float
    B: float
    C: float
    t_C: float
    delta_L_max: float


@dataclass(frozen=True)
class StanceSummary:
    coefficients: StanceCoefficients
    delta_theta: float
    theta_TO: float
    variant: str


def detuning(theta_d, epsilon):
    return 1.0 - 0.5 * epsilon**2 * theta_d**2


def stance_coefficients(td: TouchdownState, params: ModelParams) -> StanceCoefficients:
    eps = params.epsilon
    alpha = params.alpha
    A = eps**2 * (td.theta_d**2 - math.cos(alpha))
    B = eps * math.sqrt(eps**2 * (td.theta_d**2 - math.cos(alpha)) ** 2 + td.L_d**2)
    if B <= 1e-14 * eps:
        raise DegenerateContactError("L_d = 0 and theta_d^2 = cos(alpha): contact amplitude vanishes")
    # |A/B| <= 1 analytically; clip rounding excursions
    C = min(1.0, max(-1.0, A / B))
    w = detuning(td.theta_d, eps)
    t_C = 4.0 * eps / (2.0 - eps**2 * td.theta_d**2) * math.acos(C)
    return StanceCoefficients(omega_tilde=w, A=A, B=B, C=C, t_C=t_C, delta_L_max=B - A)


def _check_time(t, t_C):
    t = np.asarray(t, dtype=float)
    slack = 1e-12 * max(1.0, t_C)
    if np.any(t < -slack) or np.any(t > t_C + slack):
        raise DomainError(f"time outside the stance interval [0, {t_C:.6g}]")
    return t


def radial_motion(t, td: TouchdownState, params: ModelParams):
    """Leg length L(t) on [0, t_C]; accepts scalars or arrays."""
    coef = stance_coefficients(td, params)
    t = _check_time(t, coef.t_C)
    eps = params.epsilon
    phase = coef.omega_tilde * t / eps
    L = 1.0 - eps * td.L_d * np.sin(phase) + eps**2 * (td.theta_d**2 - math.cos(params.alpha)) * (1.0 - np.cos(phase))
    return L if L.ndim else float(L)


def angular_motion(t, td: TouchdownState, params: ModelParams):
    """Leg angle theta(t) on [0, t_C]; theta(0) = -alpha."""
    coef = stance_coefficients(td, params)
    t = _check_time(t, coef.t_C)
    eps, alpha = params.epsilon, params.alpha
    wt = coef.omega_tilde * t
    theta = (
        -alpha
        + td.theta_d * wt
        - 0.5 * wt**2 * math.sin(alpha)
        + 2.0 * eps**2 * td.L_d * td.theta_d * (1.0 - np.cos(wt / eps))
    )
    return theta if theta.ndim else float(theta)


def sweep_angle(td: TouchdownState, params: ModelParams) -> float:
    eps, alpha = params.epsilon, params.alpha
    C = stance_coefficients(td, params).C
    ac = math.acos(C)
    return 2.0 * eps * td.theta_d * (ac + 2.0 * eps * td.L_d * (1.0 - C**2)) - 2.0 * eps**2 * math.sin(alpha) * ac**2


def sweep_bracket(td: TouchdownState, alpha) -> float:
    """Coefficient of eps^2 in the expanded sweep angle."""
    if td.L_d == 0.0:
        raise SingularityError("L_d = 0: the expanded sweep angle is singular")
    th, Ld = td.theta_d, td.L_d
    return 4.0 * th * Ld - 2.0 * (th / Ld) * (th**2 - math.cos(alpha)) - 0.5 * math.pi**2 * math.sin(alpha)


def sweep_angle_taylor(td: TouchdownState, params: ModelParams) -> float:
    eps = params.epsilon
    return math.pi * td.theta_d * eps + sweep_bracket(td, params.alpha) * eps**2


_VARIANTS = {"full": sweep_angle, "taylor": sweep_angle_taylor}


def sweep_function(variant: Variant) -> SweepFn:
    if callable(variant):
        return variant
    try:
        return _VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown sweep variant {variant!r}; expected 'full' or 'taylor'") from None


def stance_summary(td: TouchdownState, params: ModelParams, variant: Variant = "full") -> StanceSummary:
    coef = stance_coefficients(td, params)
    dtheta = sweep_function(variant)(td, params)
    name = variant if isinstance(variant, str) else getattr(variant, "__name__", "custom")
    return StanceSummary(coefficients=coef, delta_theta=dtheta, theta_TO=dtheta - params.alpha, variant=name)
