"""Fixed points of the analytic apex map, their continuation in energy, and transcritical detection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, root

from slipmap.asymptotics import Variant
from slipmap.errors import DomainError, NoCollisionError, NonForwardError
from slipmap.model import TouchdownState
from slipmap.returnmap import MapConfig, map_value
from slipmap.stiffness import stiffness_symmetric

KRule = Callable[[float, float], float]

FD_STEP = 1e-6


@dataclass(frozen=True)
class FixedPoint:
    Y: float
    f_prime: float

    @property
    def stable(self) -> bool:
        return abs(self.f_prime) < 1.0


@dataclass
class FixedPointSet:
    points: List[FixedPoint]
    degenerate: bool = False

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]


@dataclass(frozen=True)
class BranchPoint:
    E_s: float
    Y_star: float
    f_prime: float
    stable: bool
    K_used: float


@dataclass
class Branch:
    points: List[BranchPoint] = field(default_factory=list)
    lost_at: Optional[float] = None

    @property
    def energies(self):
        return np.array([p.E_s for p in self.points])

    @property
    def heights(self):
        return np.array([p.Y_star for p in self.points])

    @property
    def f_primes(self):
        return np.array([p.f_prime for p in self.points])

    def at(self, E, tol=1e-12) -> Optional[BranchPoint]:
        for p in self.points:
            if abs(p.E_s - E) <= tol:
                return p
        return None

    def predict(self, E) -> float:
        if len(self.points) == 1:
            return self.points[0].Y_star
        p0, p1 = self.points[-2], self.points[-1]
        slope = (p1.Y_star - p0.Y_star) / (p1.E_s - p0.E_s)
        return p1.Y_star + slope * (E - p1.E_s)


@dataclass(frozen=True)
class BifurcationEvent:
    kind: str
    E_s_star: float
    Y_star: float
    f_prime: float
    g_second: float
    K_used: float


@dataclass
class BranchSet:
    alpha: float
    k_rule: KRule
    variant: Variant
    energies: np.ndarray
    branches: List[Branch]

    def config(self, E) -> MapConfig:
        return MapConfig(self.alpha, E, self.k_rule(self.alpha, E), self.variant)


# stiffness rules


def fixed_velocity_rule(theta_d_star: float = 1.0) -> KRule:
    """K from the symmetric-stance quadratic at a fixed touchdown angular velocity."""

    def rule(alpha, energy):
        return stiffness_symmetric(TouchdownState.from_energy(theta_d_star, energy, alpha), alpha).K

    rule.__name__ = f"fixed_velocity_rule(theta_d*={theta_d_star:g})"
    return rule


def special_case_rule() -> KRule:
    """K at theta_d* = sqrt(cos(alpha))."""

    def rule(alpha, energy):
        th = math.sqrt(math.cos(alpha))
        return stiffness_symmetric(TouchdownState.from_energy(th, energy, alpha), alpha).K

    rule.__name__ = "special_case_rule"
    return rule


# fixed points


def _domain(cfg: MapConfig, margin):
    lo = cfg.landing_height + margin
    hi = min(cfg.energy, cfg.forward_limit) - margin
    return lo, hi


def _g(Y, cfg):
    return map_value(Y, cfg) - Y


def map_slope(Y, cfg: MapConfig, h: float = FD_STEP) -> float:
    lo, hi = _domain(cfg, 0.0)
    h = min(h, 0.5 * (Y - lo), 0.5 * (hi - Y)) if lo < Y < hi else h
    return (map_value(Y + h, cfg) - map_value(Y - h, cfg)) / (2.0 * h)


def _scan(cfg, lo, hi, resolution):
    n = max(3, int(math.ceil((hi - lo) / resolution)) + 1)
    ys = np.linspace(lo, hi, n)
    gs = np.empty(n)
    for i, y in enumerate(ys):
        try:
            gs[i] = _g(y, cfg)
        except (DomainError, NonForwardError):
            gs[i] = math.nan
    roots = []
    for i in range(n - 1):
        a, b = gs[i], gs[i + 1]
        if not (np.isfinite(a) and np.isfinite(b)):
            continue
        if a == 0.0:
            roots.append(float(ys[i]))
        elif a * b < 0.0:
            roots.append(brentq(_g, ys[i], ys[i + 1], args=(cfg,), xtol=1e-14, rtol=8.9e-16))
    if np.isfinite(gs[-1]) and gs[-1] == 0.0:
        roots.append(float(ys[-1]))
    return roots, gs


def find_fixed_points(
    cfg: MapConfig,
    resolution: float = 1e-3,
    margin: float = 1e-9,
    y_range: Optional[Tuple[float, float]] = None,
    windows: Sequence[Tuple[float, float, float]] = (),
) -> FixedPointSet:
    """Roots of f(Y) - Y by a sign scan plus Brent refinement.

    ``windows`` holds extra (lo, hi, resolution) intervals scanned more finely,
    used to separate nearly coincident roots.
    """
    lo, hi = _domain(cfg, margin)
    if y_range is not None:
        lo, hi = max(lo, y_range[0]), min(hi, y_range[1])
    if hi <= lo:
        return FixedPointSet([])
    roots, gs = _scan(cfg, lo, hi, resolution)
    finite = gs[np.isfinite(gs)]
    if finite.size and np.max(np.abs(finite)) < 1e-12:
        return FixedPointSet([], degenerate=True)
    for wlo, whi, wres in windows:
        wlo, whi = max(lo, wlo), min(hi, whi)
        if whi > wlo:
            roots.extend(_scan(cfg, wlo, whi, wres)[0])
    roots.sort()
    unique = []
    for r in roots:
        if not unique or r - unique[-1] > 1e-11:
            unique.append(r)
    return FixedPointSet([FixedPoint(Y=r, f_prime=map_slope(r, cfg)) for r in unique])


# continuation


def continue_branch(
    alpha,
    E_s_range: Tuple[float, float],
    step: float,
    k_rule: Optional[KRule] = None,
    variant: Variant = "taylor",
    resolution: float = 1e-3,
    y_range: Optional[Tuple[float, float]] = None,
    match_radius: float = 0.02,
) -> BranchSet:
    """Follow every fixed point of the map as E_s sweeps ``E_s_range`` in increments of ``step``.

    Roots at consecutive energies are linked to branches by nearest linear
    prediction. A branch whose root cannot be found is closed with ``lost_at``.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    k_rule = k_rule or fixed_velocity_rule(1.0)
    e0, e1 = E_s_range
    n = int(round((e1 - e0) / step)) + 1
    energies = e0 + step * np.arange(n)
    active: List[Branch] = []
    done: List[Branch] = []
    for E in energies:
        K = k_rule(alpha, E)
        cfg = MapConfig(alpha, E, K, variant)
        found = find_fixed_points(cfg, resolution, y_range=y_range)
        roots = [p.Y for p in found]
        if len(roots) < len(active):
            windows = []
            for b in active:
                y = b.predict(E)
                windows.append((y - 2e-3, y + 2e-3, 1e-6))
            found = find_fixed_points(cfg, resolution, y_range=y_range, windows=windows)
            roots = [p.Y for p in found]
        preds = [b.predict(E) for b in active]
        pairs = sorted(
            ((abs(preds[i] - r), i, j) for i in range(len(active)) for j, r in enumerate(roots)),
            key=lambda x: x[0],
        )
        used_b, used_r, assign = set(), set(), {}
        for dist, i, j in pairs:
            if dist > match_radius or i in used_b or j in used_r:
                continue
            assign[i] = j
            used_b.add(i)
            used_r.add(j)
        for i, b in enumerate(active):
            if i not in assign:
                # coincident with a root already taken: the two branches touch here
                near = [j for j in used_r if abs(roots[j] - preds[i]) < 1e-3]
                if near:
                    assign[i] = near[0]
        still = []
        for i, b in enumerate(active):
            if i in assign:
                p = found[assign[i]]
                b.points.append(BranchPoint(E, p.Y, p.f_prime, p.stable, K))
                still.append(b)
            else:
                b.lost_at = float(E)
                done.append(b)
        for j, r in enumerate(roots):
            if j not in used_r:
                p = found[j]
                still.append(Branch([BranchPoint(E, p.Y, p.f_prime, p.stable, K)]))
        active = still
    branches = sorted(done + active, key=lambda b: (b.points[0].E_s, b.points[0].Y_star))
    return BranchSet(alpha=alpha, k_rule=k_rule, variant=variant, energies=energies, branches=branches)


def _g_E(Y, E, bs: BranchSet):
    return _g(Y, bs.config(E))


def _gY(Y, E, bs: BranchSet, h=1e-6):
    cfg = bs.config(E)
    return (_g(Y + h, cfg) - _g(Y - h, cfg)) / (2 * h)


def _gYY(Y, E, bs: BranchSet, h=1e-4):
    cfg = bs.config(E)
    return (_g(Y + h, cfg) - 2 * _g(Y, cfg) + _g(Y - h, cfg)) / h**2


def _crossings(a: Branch, b: Branch):
    common = sorted(set(np.round(a.energies, 12)) & set(np.round(b.energies, 12)))
    out = []
    prev = None
    for E in common:
        pa, pb = a.at(E, 1e-9), b.at(E, 1e-9)
        d = pa.Y_star - pb.Y_star
        if prev is not None:
            (E0, d0, pa0, pb0) = prev
            if d0 == 0.0 or d0 * d < 0.0 or d == 0.0:
                out.append((E0, E, pa0, pb0, pa, pb))
        prev = (E, d, pa, pb)
    return out


def detect_transcritical(bs: BranchSet, collision_tol: float = 1e-4) -> BifurcationEvent:
    """Locate the energy where two branches cross and exchange stability.

    The crossing bracketed by the continuation data is refined by solving
    g = 0, dg/dY = 0 with g(Y, E) = f(Y; E) - Y.
    """
    candidates = []
    for i, a in enumerate(bs.branches):
        for b in bs.branches[i + 1 :]:
            for E0, E1, pa0, pb0, pa1, pb1 in _crossings(a, b):
                exchange = (pa0.f_prime - 1) * (pa1.f_prime - 1) <= 0 and (pb0.f_prime - 1) * (pb1.f_prime - 1) <= 0
                candidates.append((E0, E1, pa0, pb0, pa1, pb1, exchange))
    if not candidates:
        raise NoCollisionError("no pair of branches crosses within the continuation range")
    candidates.sort(key=lambda c: (not c[6], abs(c[4].Y_star - c[5].Y_star)))
    E0, E1, pa0, pb0, pa1, pb1, exchange = candidates[0]
    if not exchange:
        raise NoCollisionError("branches cross without exchanging stability")
    x0 = [0.25 * (pa0.Y_star + pb0.Y_star + pa1.Y_star + pb1.Y_star), 0.5 * (E0 + E1)]
    sol = root(lambda x: [_g_E(x[0], x[1], bs), _gY(x[0], x[1], bs)], x0, method="hybr", options={"xtol": 1e-13})
    Y, E = (float(v) for v in sol.x)
    if not (E0 - (E1 - E0) <= E <= E1 + (E1 - E0)):
        raise NoCollisionError(f"refinement left the bracketing interval: E = {E}")
    if abs(_g_E(Y, E, bs)) > collision_tol:
        raise NoCollisionError("refined point is not a fixed point")
    return BifurcationEvent(
        kind="transcritical",
        E_s_star=E,
        Y_star=Y,
        f_prime=1.0 + _gY(Y, E, bs),
        g_second=_gYY(Y, E, bs),
        K_used=bs.k_rule(bs.alpha, E),
    )


def cobweb_curve(cfg: MapConfig, n: int = 400, margin: float = 1e-9):
    """Sampled (Y, f(Y)) over the map domain; f may fall below the landing height."""
    lo, hi = _domain(cfg, margin)
    ys = np.linspace(lo, hi, n)
    return ys, np.array([map_value(y, cfg) for y in ys])
