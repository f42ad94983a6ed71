"""Dimensionless states, parameters and the coordinate/energy conversions shared by every module.

Conventions: lengths are in units of the rest leg length, velocities are Froude
numbers, energies are in units of m*g*l0. The touchdown leg angle is stored as
the angle of attack ``alpha > 0``; the polar angle at touchdown is ``-alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from slipmap.errors import DomainError, InfeasibleEnergyError, NonForwardError


@dataclass(frozen=True)
class Tolerances:
    algebraic: float = 1e-10
    root: float = 1e-8
    ode_rtol: float = 1e-10
    ode_atol: float = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """Angle of attack, spring stiffness K and (optionally) the system energy."""

    alpha: float
    stiffness: float
    energy: Optional[float] = None
    tol: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        check_alpha(self.alpha)
        if not self.stiffness > 0:
            raise DomainError(f"stiffness must be positive, got {self.stiffness}")

    @property
    def epsilon(self) -> float:
        return 1.0 / math.sqrt(self.stiffness)

    @classmethod
    def from_epsilon(cls, alpha, epsilon, **kw) -> "ModelParams":
        return cls(alpha=alpha, stiffness=epsilon**-2, **kw)

    def with_stiffness(self, stiffness) -> "ModelParams":
        return replace(self, stiffness=stiffness)

    def with_energy(self, energy) -> "ModelParams":
        return replace(self, energy=energy)


def check_alpha(alpha):
    if not 0.0 < alpha < math.pi / 2:
        raise DomainError(f"angle of attack must lie in (0, pi/2), got {alpha}")


@dataclass(frozen=True)
class StanceState:
    t: float
    L: float
    L_dot: float
    theta: float
    theta_dot: float

    @property
    def momentum(self) -> float:
        """Angular momentum P = L^2 theta'."""
        return self.L**2 * self.theta_dot

    def as_tuple(self):
        return (self.L, self.L_dot, self.theta, self.theta_dot)


@dataclass(frozen=True)
class ApexState:
    """Flight apex: height Y, horizontal Froude number, and system energy.

    ``descending_takeoff`` marks apexes produced from a takeoff that was already
    moving downwards (the apex is then the takeoff point itself).
    """

    Y: float
    X_dot: float
    energy: float
    descending_takeoff: bool = False

    @classmethod
    def from_height(cls, Y, energy) -> "ApexState":
        if Y > energy:
            raise DomainError(f"apex height {Y} exceeds the energy {energy}")
        return cls(Y=Y, X_dot=math.sqrt(2.0 * (energy - Y)), energy=energy)


@dataclass(frozen=True)
class TouchdownState:
    """Angular velocity theta_d > 0 and radial landing speed L_d = |L'_TD| at touchdown."""

    theta_d: float
    L_d: float
    alpha: float

    @property
    def energy(self) -> float:
        return 0.5 * (self.theta_d**2 + self.L_d**2) + math.cos(self.alpha)

    def initial_state(self) -> StanceState:
        return StanceState(t=0.0, L=1.0, L_dot=-self.L_d, theta=-self.alpha, theta_dot=self.theta_d)

    @classmethod
    def from_energy(cls, theta_d, energy, alpha) -> "TouchdownState":
        return cls(theta_d=theta_d, L_d=radial_speed_from_energy(energy, theta_d, alpha), alpha=alpha)


def stance_energy(state: StanceState, params: ModelParams) -> float:
    L = state.L
    return 0.5 * (state.L_dot**2 + L**2 * state.theta_dot**2 + params.stiffness * (1.0 - L) ** 2) + L * math.cos(
        state.theta
    )


def small_angle_energy(state: StanceState, params: ModelParams) -> float:
    """Stance energy with cos(theta) replaced by 1."""
    L = state.L
    return 0.5 * (state.L_dot**2 + L**2 * state.theta_dot**2 + params.stiffness * (1.0 - L) ** 2) + L


def touchdown_polar_from_cartesian(X_dot, Y_dot, alpha) -> TouchdownState:
    """Rotate the landing velocity into leg coordinates.

    ``Y_dot`` is the downward landing speed (a magnitude); the resulting L_d is
    the compression speed along the leg.
    """
    theta_d = X_dot * math.cos(alpha) - Y_dot * math.sin(alpha)
    L_d = X_dot * math.sin(alpha) + Y_dot * math.cos(alpha)
    if theta_d <= 0.0:
        raise NonForwardError(f"theta_d = {theta_d:.6g} <= 0: no forward locomotion")
    return TouchdownState(theta_d=theta_d, L_d=L_d, alpha=alpha)


def cartesian_from_polar_takeoff(state: StanceState):
    """Takeoff (L = 1) polar state -> (X', Y, Y')."""
    s, c = math.sin(state.theta), math.cos(state.theta)
    X_dot = state.L_dot * s + state.theta_dot * c
    Y_dot = state.L_dot * c - state.theta_dot * s
    return X_dot, state.L * c, Y_dot


def radial_speed_from_energy(energy, theta_d, alpha) -> float:
    radicand = 2.0 * energy - theta_d**2 - 2.0 * math.cos(alpha)
    if -1e-12 < radicand < 0.0:
        # rounding residue of an exactly zero radicand
        return 0.0
    if radicand < 0.0:
        raise InfeasibleEnergyError(
            f"energy {energy} too low for theta_d={theta_d}, alpha={alpha} (radicand {radicand:.3g})"
        )
    return math.sqrt(radicand)
