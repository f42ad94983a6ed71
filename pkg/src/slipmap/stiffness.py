"""Stiffness that makes the expanded stance symmetric (sweep angle = 2 alpha)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from slipmap.asymptotics import sweep_bracket
from slipmap.errors import DomainError, NoPhysicalRootError
from slipmap.model import TouchdownState, check_alpha


@dataclass(frozen=True)
class StiffnessEstimate:
    K: float
    discriminant: float
    method: Literal["quadratic", "leading-order", "minimum"]

    def __float__(self):
        return self.K


def _quadratic_root(theta_d, disc, alpha):
    # "+" branch of the quadratic in sqrt(K)
    return (math.pi * theta_d + math.sqrt(disc)) ** 2 / (16.0 * alpha**2)


def symmetric_discriminant(td: TouchdownState, alpha) -> float:
    return math.pi**2 * td.theta_d**2 + 8.0 * alpha * sweep_bracket(td, alpha)


def stiffness_symmetric(td: TouchdownState, alpha) -> StiffnessEstimate:
    """Solve pi*theta_d*eps + bracket*eps^2 = 2*alpha for K = eps^-2."""
    check_alpha(alpha)
    disc = symmetric_discriminant(td, alpha)
    if disc < 0.0:
        raise NoPhysicalRootError(f"discriminant {disc:.6g} < 0 for theta_d={td.theta_d}, L_d={td.L_d}")
    return StiffnessEstimate(K=_quadratic_root(td.theta_d, disc, alpha), discriminant=disc, method="quadratic")


def stiffness_leading(theta_d, alpha) -> StiffnessEstimate:
    # pure ratio, so the closed upper end alpha = pi/2 is allowed here
    if not 0.0 < alpha <= math.pi / 2:
        raise DomainError(f"angle of attack must lie in (0, pi/2], got {alpha}")
    if theta_d <= 0.0:
        raise DomainError("theta_d must be positive")
    return StiffnessEstimate(K=(math.pi * theta_d / (2.0 * alpha)) ** 2, discriminant=math.nan, method="leading-order")


def minimum_discriminant(theta_d_star, alpha) -> float:
    t2 = theta_d_star**2
    return (
        math.pi**2 * (t2 - 4.0 * alpha * math.sin(alpha))
        + 32.0 * alpha * t2 * math.tan(alpha)
        - 16.0 * alpha / math.tan(alpha) * (t2 - math.cos(alpha))
    )


def stiffness_minimum(theta_d_star, alpha) -> StiffnessEstimate:
    """Symmetric stiffness at the existence threshold, where L_d = theta_d* tan(alpha)."""
    check_alpha(alpha)
    disc = minimum_discriminant(theta_d_star, alpha)
    if disc < 0.0:
        raise NoPhysicalRootError(f"discriminant {disc:.6g} < 0 at the minimum energy")
    return StiffnessEstimate(K=_quadratic_root(theta_d_star, disc, alpha), discriminant=disc, method="minimum")
