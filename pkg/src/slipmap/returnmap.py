"""The analytic one-dimensional apex return map Y_{i+1} = f(Y_i)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List

from slipmap.asymptotics import Variant, sweep_function
from slipmap.errors import DomainError, NonForwardError, StumbleError
from slipmap.model import ModelParams, TouchdownState, check_alpha


@dataclass(frozen=True)
class MapConfig:
    alpha: float
    energy: float
    stiffness: float
    sweep_variant: Variant = "full"

    def __post_init__(self):
        check_alpha(self.alpha)
        if not self.energy > math.cos(self.alpha):
            raise DomainError(f"energy {self.energy} must exceed cos(alpha) = {math.cos(self.alpha):.6g}")
        if not self.stiffness > 0:
            raise DomainError("stiffness must be positive")

    @property
    def params(self) -> ModelParams:
        return ModelParams(alpha=self.alpha, stiffness=self.stiffness, energy=self.energy)

    @property
    def landing_height(self) -> float:
        return math.cos(self.alpha)

    @property
    def forward_limit(self) -> float:
        """Apex height above which theta_d <= 0."""
        c, s = math.cos(self.alpha), math.sin(self.alpha)
        return self.energy * c**2 + c * s**2


class Terminal(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max-iterations"
    STUMBLED = "stumbled"


@dataclass
class OrbitResult:
    heights: List[float]
    terminal: Terminal
    x_dots: List[float] = field(default_factory=list)

    @property
    def final(self) -> float:
        return self.heights[-1]

    @property
    def steps(self) -> int:
        return len(self.heights) - 1


def _radicals(Y, alpha, energy):
    c = math.cos(alpha)
    if not (c <= Y <= energy):
        raise DomainError(f"apex height {Y} outside [cos(alpha), E_s] = [{c:.6g}, {energy:.6g}]")
    return math.sqrt(energy - Y), math.sqrt(Y - c)


def td_velocities_from_apex(Y, cfg: MapConfig) -> TouchdownState:
    a = cfg.alpha
    r_kin, r_pot = _radicals(Y, a, cfg.energy)
    theta_d = math.sqrt(2.0) * (math.cos(a) * r_kin - math.sin(a) * r_pot)
    L_d = math.sqrt(2.0) * (math.sin(a) * r_kin + math.cos(a) * r_pot)
    if theta_d <= 0.0:
        raise NonForwardError(f"theta_d = {theta_d:.6g} <= 0 at apex height {Y}")
    return TouchdownState(theta_d=theta_d, L_d=L_d, alpha=a)


def apex_after_sweep(Y, delta_theta, alpha, energy) -> float:
    """Closed-form next apex for a given sweep angle (no stumble check)."""
    r_kin, r_pot = _radicals(Y, alpha, energy)
    return (
        math.cos(alpha - delta_theta)
        + (math.sin(2 * alpha - delta_theta) * r_kin + math.cos(2 * alpha - delta_theta) * r_pot) ** 2
    )


def sweep_at(Y, cfg: MapConfig) -> float:
    td = td_velocities_from_apex(Y, cfg)
    return sweep_function(cfg.sweep_variant)(td, cfg.params)


def map_value(Y, cfg: MapConfig) -> float:
    """f(Y) without the stumble check; used for root scans that cross the stumble region."""
    return apex_after_sweep(Y, sweep_at(Y, cfg), cfg.alpha, cfg.energy)


def apex_return(Y, cfg: MapConfig) -> float:
    nxt = map_value(Y, cfg)
    if nxt < cfg.landing_height:
        raise StumbleError(nxt, cfg.landing_height)
    return nxt


def corrected_x_dot(Y_next, cfg: MapConfig) -> float:
    """Horizontal speed that restores the system energy at the new apex."""
    if Y_next > cfg.energy:
        raise DomainError(f"apex height {Y_next} exceeds energy {cfg.energy}")
    return math.sqrt(2.0 * (cfg.energy - Y_next))


def iterate(Y0, cfg: MapConfig, max_steps: int = 100, tol: float = 1e-10) -> OrbitResult:
    heights = [Y0]
    x_dots = [corrected_x_dot(Y0, cfg)]
    Y = Y0
    for _ in range(max_steps):
        try:
            nxt = apex_return(Y, cfg)
        except (StumbleError, NonForwardError):
            return OrbitResult(heights, Terminal.STUMBLED, x_dots)
        if nxt > cfg.energy:
            # above the energy: no kinetic energy left, treat as leaving the domain
            return OrbitResult(heights, Terminal.STUMBLED, x_dots)
        converged = abs(nxt - Y) < tol
        if not converged:
            heights.append(nxt)
            x_dots.append(corrected_x_dot(nxt, cfg))
        if converged:
            return OrbitResult(heights, Terminal.CONVERGED, x_dots)
        Y = nxt
    return OrbitResult(heights, Terminal.MAX_ITERATIONS, x_dots)


def cobweb(Y0, cfg: MapConfig, max_steps: int = 50):
    """Cobweb polyline vertices (x, y) for plotting an orbit against the diagonal."""
    orbit = iterate(Y0, cfg, max_steps=max_steps)
    pts = [(orbit.heights[0], orbit.heights[0])]
    for a, b in zip(orbit.heights[:-1], orbit.heights[1:]):
        pts.append((a, b))
        pts.append((b, b))
    return pts
