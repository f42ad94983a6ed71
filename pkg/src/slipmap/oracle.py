"""Full nonlinear stance dynamics: the numerical reference for the asymptotic formulas.

Stance obeys
    L''     = L theta'^2 + K (1 - L) - cos(theta)
    (L^2 theta')' = L sin(theta)
and flight is ballistic, so only stance is integrated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from slipmap.errors import (
    BracketError,
    DomainError,
    LegCollapseError,
    NoTakeoffError,
    StumbleError,
)
from slipmap.model import (
    ApexState,
    ModelParams,
    StanceState,
    TouchdownState,
    cartesian_from_polar_takeoff,
    check_alpha,
    stance_energy,
    touchdown_polar_from_cartesian,
)
from slipmap.stiffness import stiffness_symmetric

COLLAPSE_LENGTH = 1e-6


def stance_rhs(t, y, K):
    L, L_dot, theta, theta_dot = y
    return [
        L_dot,
        L * theta_dot**2 + K * (1.0 - L) - math.cos(theta),
        theta_dot,
        (math.sin(theta) - 2.0 * L_dot * theta_dot) / L,
    ]


def _takeoff_event(t, y, K):
    return y[0] - 1.0


_takeoff_event.terminal = True
_takeoff_event.direction = 1.0


def _collapse_event(t, y, K):
    return y[0] - COLLAPSE_LENGTH


_collapse_event.terminal = True
_collapse_event.direction = -1.0


@dataclass(frozen=True)
class Trajectory:
    """Integrated stance phase. ``t`` has shape (n,), ``y`` shape (4, n) with rows L, L', theta, theta'."""

    t: np.ndarray
    y: np.ndarray
    takeoff: StanceState
    stiffness: float
    integrator_stats: dict = field(default_factory=dict)

    @property
    def samples(self):
        return [StanceState(ti, *yi) for ti, yi in zip(self.t, self.y.T)]

    def energies(self) -> np.ndarray:
        L, Ld, th, thd = self.y
        return 0.5 * (Ld**2 + L**2 * thd**2 + self.stiffness * (1.0 - L) ** 2) + L * np.cos(th)

    def __len__(self):
        return len(self.t)


def integrate_stance(
    td: TouchdownState,
    params: ModelParams,
    t_max: Optional[float] = None,
    method: str = "RK45",
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
) -> Trajectory:
    """Integrate from touchdown (1, -L_d, -alpha, theta_d) until L returns to 1 with L' > 0."""
    K = params.stiffness
    if t_max is None:
        t_max = 10.0 * 2.0 * math.pi * params.epsilon
    y0 = [1.0, -td.L_d, -params.alpha, td.theta_d]
    sol = solve_ivp(
        stance_rhs,
        (0.0, t_max),
        y0,
        method=method,
        args=(K,),
        events=(_takeoff_event, _collapse_event),
        rtol=params.tol.ode_rtol if rtol is None else rtol,
        atol=params.tol.ode_atol if atol is None else atol,
    )
    if sol.status == -1:
        raise NoTakeoffError(f"integrator failed: {sol.message}")
    if len(sol.t_events[1]):
        raise LegCollapseError(f"leg collapsed at t = {sol.t_events[1][0]:.6g}")
    if not len(sol.t_events[0]):
        raise NoTakeoffError(f"no takeoff before t_max = {t_max:.6g}")

    t_to = float(sol.t_events[0][0])
    y_to = np.array(sol.y_events[0][0], dtype=float)
    t = np.append(sol.t[:-1], t_to) if sol.t[-1] != t_to else sol.t
    y = np.column_stack([sol.y[:, :-1], y_to]) if sol.t[-1] != t_to else sol.y
    stats = {"nfev": int(sol.nfev), "n_steps": int(len(sol.t) - 1), "method": method}
    return Trajectory(t=t, y=y, takeoff=StanceState(t_to, *y_to), stiffness=K, integrator_stats=stats)


def flight_step(takeoff: Tuple[float, float, float]) -> ApexState:
    """Ballistic flight from (X', Y, Y') at takeoff to the next apex.

    A descending takeoff (Y' < 0) has already passed its apex; the takeoff
    height is returned and the result is flagged.
    """
    X_dot, Y, Y_dot = takeoff
    energy = Y + 0.5 * (X_dot**2 + Y_dot**2)
    if Y_dot < 0.0:
        return ApexState(Y=Y, X_dot=X_dot, energy=energy, descending_takeoff=True)
    return ApexState(Y=Y + 0.5 * Y_dot**2, X_dot=X_dot, energy=energy)


@dataclass(frozen=True)
class ShootingResult:
    K_star: float
    t_star: float
    residual: float
    iterations: int
    bracket: Tuple[float, float]


def _takeoff_angle_residual(td, alpha, K, tol):
    traj = integrate_stance(td, ModelParams(alpha=alpha, stiffness=K, tol=tol))
    return traj.takeoff.theta - alpha, traj.takeoff.t


def solve_k_star(X_dot, Y_dot, alpha, bracket=None, params: Optional[ModelParams] = None) -> ShootingResult:
    """Find K* such that the stance started at (X', Y') lifts off at theta = alpha.

    ``Y_dot`` is the landing speed magnitude. The bracket defaults to
    [0.5, 2] times the quadratic stiffness estimate.
    """
    check_alpha(alpha)
    td = touchdown_polar_from_cartesian(X_dot, Y_dot, alpha)
    tol = params.tol if params is not None else ModelParams(alpha=alpha, stiffness=1.0).tol
    if bracket is None:
        K_q = stiffness_symmetric(td, alpha).K
        bracket = (0.5 * K_q, 2.0 * K_q)
    K_lo, K_hi = bracket
    r_lo = _takeoff_angle_residual(td, alpha, K_lo, tol)[0]
    r_hi = _takeoff_angle_residual(td, alpha, K_hi, tol)[0]
    if r_lo * r_hi > 0.0:
        raise BracketError(f"takeoff-angle residual has no sign change on [{K_lo:.6g}, {K_hi:.6g}]")
    K_star, info = brentq(
        lambda K: _takeoff_angle_residual(td, alpha, K, tol)[0],
        K_lo,
        K_hi,
        xtol=1e-13 * K_hi,
        rtol=4 * np.finfo(float).eps,
        full_output=True,
    )
    residual, t_star = _takeoff_angle_residual(td, alpha, K_star, tol)
    return ShootingResult(
        K_star=K_star, t_star=t_star, residual=abs(residual), iterations=info.iterations, bracket=(K_lo, K_hi)
    )


def full_apex_map(apex: ApexState, alpha, params: ModelParams) -> ApexState:
    """Apex -> touchdown -> integrated stance -> takeoff -> ballistic apex, with the energy-restoring X'."""
    check_alpha(alpha)
    E = apex.energy
    c = math.cos(alpha)
    if apex.Y > E:
        raise DomainError(f"apex height {apex.Y} exceeds energy {E}")
    if apex.Y < c:
        raise DomainError(f"apex height {apex.Y} below landing height {c}")
    X_dot = math.sqrt(2.0 * (E - apex.Y))
    Y_dot = math.sqrt(2.0 * (apex.Y - c))
    td = touchdown_polar_from_cartesian(X_dot, Y_dot, alpha)
    traj = integrate_stance(td, params)
    nxt = flight_step(cartesian_from_polar_takeoff(traj.takeoff))
    if nxt.Y < c:
        raise StumbleError(nxt.Y, c)
    if nxt.Y > E + 1e-9:
        raise DomainError(f"next apex {nxt.Y} exceeds energy {E}")
    return ApexState(Y=nxt.Y, X_dot=math.sqrt(max(0.0, 2.0 * (E - nxt.Y))), energy=E, descending_takeoff=nxt.descending_takeoff)


def energy_drift(traj: Trajectory) -> float:
    e = traj.energies()
    return float(np.max(np.abs(e - e[0])))


def initial_energy(td: TouchdownState, params: ModelParams) -> float:
    return stance_energy(td.initial_state(), params)
