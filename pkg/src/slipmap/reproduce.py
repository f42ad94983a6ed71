"""One function per reproducible figure/table. Each returns a list of Tables ready to write."""

from __future__ import annotations

import math
from dataclasses import asdict
from typing import Callable, Dict, List

import numpy as np

from slipmap import __version__
from slipmap.asymptotics import angular_motion, radial_motion, stance_summary
from slipmap.continuation import (
    continue_branch,
    cobweb_curve,
    detect_transcritical,
    find_fixed_points,
    fixed_velocity_rule,
)
from slipmap.errors import NoCollisionError
from slipmap.io import Table
from slipmap.model import ModelParams, Tolerances, TouchdownState, touchdown_polar_from_cartesian
from slipmap.oracle import solve_k_star
from slipmap.returnmap import MapConfig, cobweb, map_value
from slipmap.stability import (
    energy_bounds,
    fixed_point_height_from_energy,
    min_energy,
    special_theta,
    stiffness_region,
    velocity_bounds,
)
from slipmap.stiffness import stiffness_leading, stiffness_minimum, stiffness_symmetric
from slipmap.asymptotics import stance_coefficients

FIG2 = dict(alpha=0.1, x_vel=1.0, y_vel=0.1, stiffness=15.0)
FIG5 = dict(alpha=math.pi / 9, energy=1.48)
FIG8 = dict(alpha=math.pi / 12, energy_range=(1.51, 1.58), step=0.0025, theta_d_star=1.0)
FIG9_ENERGIES = (1.515, 1.55, 1.575)
TABLE1_ALPHAS = tuple(k * math.pi / 180 for k in (10, 15, 20, 25, 30))
TABLE1_THETAS = (0.95, 1.0, 1.05, 1.10, 1.15)


def metadata(**params) -> Dict:
    """Deterministic metadata block: tool, version, tolerances, then the scenario parameters."""
    meta = {"tool": "slipmap", "version": __version__, "tolerances": asdict(Tolerances())}
    meta.update(params)
    return meta


def fig2(n: int = 201) -> List[Table]:
    p = FIG2
    td = touchdown_polar_from_cartesian(p["x_vel"], p["y_vel"], p["alpha"])
    params = ModelParams(alpha=p["alpha"], stiffness=p["stiffness"])
    s = stance_summary(td, params, "full")
    c = s.coefficients
    t = np.linspace(0.0, c.t_C, n)
    summary = dict(
        A=c.A, B=c.B, C=c.C, delta_L_max=c.delta_L_max, t_C=c.t_C,
        delta_theta=s.delta_theta, theta_TO=s.theta_TO, theta_d=td.theta_d, L_d=td.L_d,
    )
    meta = metadata(**p, summary=summary)
    L = radial_motion(t, td, params)
    th = angular_motion(t, td, params)
    return [
        Table("fig2_radial", ["t", "L"], list(zip(t, L)), meta),
        Table("fig2_angular", ["t", "theta"], list(zip(t, th)), meta),
    ]


def fig3(alphas_left=None, alphas_right=None) -> List[Table]:
    """Shooting K* against the quadratic and leading-order estimates (X'=1, Y'=0.1)."""
    xv, yv = 1.0, 0.1
    alphas_left = np.arange(0.10, 0.351, 0.05) if alphas_left is None else alphas_left
    alphas_right = (0.01, 0.025, 0.05, 0.075, 0.1, 0.15, 0.2, 0.25) if alphas_right is None else alphas_right
    tables = []
    for name, grid in (("fig3_stiffness", alphas_left), ("fig3_ratios", alphas_right)):
        rows = []
        for a in grid:
            td = touchdown_polar_from_cartesian(xv, yv, a)
            kq = stiffness_symmetric(td, a).K
            kl = stiffness_leading(td.theta_d, a).K
            sh = solve_k_star(xv, yv, a)
            rows.append((float(a), sh.K_star, kq, kl, sh.K_star / kq, sh.K_star / kl))
        tables.append(
            Table(name, ["alpha", "K_star", "K_quadratic", "K_leading", "ratio_quadratic", "ratio_leading"], rows,
                  metadata(x_vel=xv, y_vel=yv))
        )
    return tables


def _alpha_grid(n=26):
    return np.linspace(math.pi / 36, math.pi / 6, n)


def _region_table(name, alphas, mode, theta_d_star=None) -> Table:
    rows = []
    kr = stiffness_region(alphas, mode, theta_d_star)
    for i, a in enumerate(alphas):
        e_minus, e_min, e_plus = energy_bounds(a, mode, theta_d_star)
        rows.append((float(a), e_minus, e_min, e_plus, kr.lower[i], kr.min_existence[i], kr.upper[i]))
    cols = ["alpha", "E_minus", "E_min", "E_plus", "K_minus", "K_min", "K_plus"]
    return Table(name, cols, rows, metadata(mode=mode, theta_d_star=theta_d_star))


def fig4() -> List[Table]:
    """Energy and stiffness bounds for the special case theta_d* = sqrt(cos a)."""
    return [_region_table("fig4_regions", _alpha_grid(), "special")]


def fig5(y0: float = 0.94, n: int = 400) -> List[Table]:
    a, E = FIG5["alpha"], FIG5["energy"]
    th = special_theta(a)
    K = stiffness_symmetric(TouchdownState.from_energy(th, E, a), a).K
    meta = metadata(alpha=a, energy=E, stiffness=K, theta_d_star=th, Y_star=fixed_point_height_from_energy(th, E, a))
    full = MapConfig(a, E, K, "full")
    tay = MapConfig(a, E, K, "taylor")
    ys, f_full = cobweb_curve(full, n)
    f_tay = np.array([map_value(y, tay) for y in ys])
    curve = Table("fig5_map", ["Y", "f_full", "f_taylor", "diagonal"], list(zip(ys, f_full, f_tay, ys)), meta)
    fp_rows = []
    for cfg in (full, tay):
        for p in find_fixed_points(cfg):
            fp_rows.append((cfg.sweep_variant, p.Y, p.f_prime, p.stable))
    fps = Table("fig5_fixed_points", ["variant", "Y", "f_prime", "stable"], fp_rows, meta)
    web = [(x, y) for x, y in cobweb(y0, full)]
    cob = Table("fig5_cobweb", ["Y_i", "Y_next"], web, {**meta, "Y0": y0, "variant": "full"})
    return [curve, fps, cob]


def fig6(n: int = 30) -> List[Table]:
    """Velocity bounds theta_d*^-/+ against E_s (a = pi/9) and against a (E_s = 1.8)."""
    a0, e0 = math.pi / 9, 1.8
    es = np.linspace(1.45, 3.0, n)
    left = [(float(e), *velocity_bounds(a0, e)) for e in es]
    alphas = np.linspace(math.pi / 18, math.pi / 6, n)
    right = [(float(a), *velocity_bounds(a, e0)) for a in alphas]
    return [
        Table("fig6_energy", ["energy", "theta_minus", "theta_plus"], left, metadata(alpha=a0)),
        Table("fig6_alpha", ["alpha", "theta_minus", "theta_plus"], right, metadata(energy=e0)),
    ]


def fig7(theta_d_star: float = 1.5) -> List[Table]:
    """Energy and stiffness bounds at a fixed touchdown angular velocity."""
    return [_region_table("fig7_regions", np.linspace(math.pi / 18, math.pi / 6, 21), "general", theta_d_star)]


def fig8() -> List[Table]:
    p = FIG8
    rule = fixed_velocity_rule(p["theta_d_star"])
    bs = continue_branch(p["alpha"], p["energy_range"], p["step"], k_rule=rule, variant="taylor")
    rows = []
    for bid, b in enumerate(bs.branches):
        for q in b.points:
            rows.append(("branch", bid, q.E_s, q.Y_star, q.f_prime, q.stable, q.K_used))
    meta = metadata(alpha=p["alpha"], energy_range=list(p["energy_range"]), step=p["step"],
                    k_rule=rule.__name__, variant="taylor")
    try:
        ev = detect_transcritical(bs)
        rows.append((ev.kind, -1, ev.E_s_star, ev.Y_star, ev.f_prime, False, ev.K_used))
    except NoCollisionError as exc:
        meta["event"] = f"none: {exc}"
    cols = ["kind", "branch", "E_s", "Y_star", "f_prime", "stable", "K"]
    return [Table("fig8_branches", cols, rows, meta)]


def fig9(n: int = 300) -> List[Table]:
    a = FIG8["alpha"]
    rule = fixed_velocity_rule(FIG8["theta_d_star"])
    curve_rows, fp_rows = [], []
    for E in FIG9_ENERGIES:
        cfg = MapConfig(a, E, rule(a, E), "taylor")
        ys, fs = cobweb_curve(cfg, n)
        curve_rows += [(E, y, f) for y, f in zip(ys, fs)]
        fp_rows += [(E, p.Y, p.f_prime, p.stable) for p in find_fixed_points(cfg)]
    meta = metadata(alpha=a, k_rule=rule.__name__, variant="taylor")
    return [
        Table("fig9_maps", ["E_s", "Y", "f"], curve_rows, meta),
        Table("fig9_fixed_points", ["E_s", "Y", "f_prime", "stable"], fp_rows, meta),
    ]


def table1_row(theta_d_star, alpha):
    """(E_s^min, K^min, Delta L_MAX) with Delta L_MAX at the minimum-energy touchdown and K = K^min."""
    e_min = min_energy(theta_d_star, alpha)
    k_min = stiffness_minimum(theta_d_star, alpha).K
    td = TouchdownState(theta_d=theta_d_star, L_d=theta_d_star * math.tan(alpha), alpha=alpha)
    dl = stance_coefficients(td, ModelParams(alpha=alpha, stiffness=k_min)).delta_L_max
    return e_min, k_min, dl


def table1() -> List[Table]:
    cols = [(1.18, a, f"alpha={round(a * 180 / math.pi)}deg") for a in TABLE1_ALPHAS]
    cols += [(th, 20 * math.pi / 180, f"theta_d*={th:g}") for th in TABLE1_THETAS]
    rows = [(label, a, th, *table1_row(th, a)) for th, a, label in cols]
    return [Table("table1", ["column", "alpha", "theta_d_star", "E_min", "K_min", "delta_L_max"], rows, metadata())]


SCENARIOS: Dict[str, Callable[[], List[Table]]] = {
    "fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5, "fig6": fig6,
    "fig7": fig7, "fig8": fig8, "fig9": fig9, "table1": table1,
}
