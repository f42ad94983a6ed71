"""Command-line front end. Every command prints a table to stdout or writes it with --out."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from slipmap import reproduce
from slipmap.asymptotics import angular_motion, radial_motion, stance_summary
from slipmap.continuation import continue_branch, detect_transcritical, find_fixed_points, fixed_velocity_rule
from slipmap.errors import NoCollisionError, SlipError
from slipmap.io import Table, default_outdir, dimensionalize
from slipmap.model import ModelParams, TouchdownState, touchdown_polar_from_cartesian
from slipmap.oracle import integrate_stance, solve_k_star
from slipmap.returnmap import MapConfig, iterate, map_value
from slipmap.stability import (
    energy_bounds,
    fixed_point_height_from_energy,
    special_theta,
    stability_check,
    stiffness_region,
    velocity_bounds,
)
from slipmap.stiffness import stiffness_leading, stiffness_minimum, stiffness_symmetric

EXIT_DOMAIN = 2
EXIT_IO = 3


def parse_sweep(text: str) -> np.ndarray:
    """'start:stop:step' -> inclusive grid."""
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("need step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--alpha", type=float)
    p.add_argument("--energy", type=float)
    p.add_argument("--stiffness", type=float)
    p.add_argument("--x-vel", type=float)
    p.add_argument("--y-vel", type=float)
    p.add_argument("--theta-d", type=float)
    p.add_argument("--sweep", type=parse_sweep)
    p.add_argument("--variant", choices=("full", "taylor"), default=None)
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise SlipError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _touchdown(args) -> TouchdownState:
    if args.x_vel is not None and args.y_vel is not None:
        return touchdown_polar_from_cartesian(args.x_vel, args.y_vel, args.alpha)
    if args.theta_d is not None and args.energy is not None:
        return TouchdownState.from_energy(args.theta_d, args.energy, args.alpha)
    raise SlipError("give --x-vel/--y-vel or --theta-d/--energy for the touchdown state")


def cmd_stance(args) -> List[Table]:
    _need(args, "alpha", "stiffness")
    td = _touchdown(args)
    params = ModelParams(alpha=args.alpha, stiffness=args.stiffness)
    s = stance_summary(td, params, args.variant or "full")
    c = s.coefficients
    meta = dict(alpha=args.alpha, stiffness=args.stiffness, theta_d=td.theta_d, L_d=td.L_d,
                A=c.A, B=c.B, C=c.C, delta_L_max=c.delta_L_max, t_C=c.t_C,
                delta_theta=s.delta_theta, theta_TO=s.theta_TO)
    meta = reproduce.metadata(**meta)
    t = np.linspace(0.0, c.t_C, 201)
    tables = [Table("stance_asymptotic", ["t", "L", "theta"],
                    list(zip(t, radial_motion(t, td, params), angular_motion(t, td, params))), meta)]
    if args.oracle:
        traj = integrate_stance(td, params)
        rows = [(ti, *yi, ei) for ti, yi, ei in zip(traj.t, traj.y.T, traj.energies())]
        tables.append(Table("stance_oracle", ["t", "L", "L_dot", "theta", "theta_dot", "E"], rows,
                            {**meta, **traj.integrator_stats}))
    return tables


def cmd_stiffness(args) -> List[Table]:
    _need(args, "alpha")
    td = _touchdown(args)
    rows = [
        ("quadratic", stiffness_symmetric(td, args.alpha).K),
        ("leading", stiffness_leading(td.theta_d, args.alpha).K),
        ("minimum", stiffness_minimum(td.theta_d, args.alpha).K),
    ]
    meta = reproduce.metadata(alpha=args.alpha, theta_d=td.theta_d, L_d=td.L_d)
    return [Table("stiffness", ["method", "K"], rows, meta)]


def cmd_kstar(args) -> List[Table]:
    _need(args, "x_vel", "y_vel")
    alphas = args.sweep if args.sweep is not None else [args.alpha]
    if alphas[0] is None:
        raise SlipError("missing required option(s): --alpha or --sweep")
    rows = []
    for a in alphas:
        td = touchdown_polar_from_cartesian(args.x_vel, args.y_vel, a)
        sh = solve_k_star(args.x_vel, args.y_vel, a)
        kq = stiffness_symmetric(td, a).K
        rows.append((float(a), sh.K_star, kq, stiffness_leading(td.theta_d, a).K, sh.t_star, sh.residual))
    cols = ["alpha", "K_star", "K_quadratic", "K_leading", "t_star", "residual"]
    return [Table("kstar", cols, rows, reproduce.metadata(x_vel=args.x_vel, y_vel=args.y_vel))]


def _map_config(args) -> MapConfig:
    _need(args, "alpha", "energy")
    K = args.stiffness
    if K is None:
        th = args.theta_d if args.theta_d is not None else special_theta(args.alpha)
        K = stiffness_symmetric(TouchdownState.from_energy(th, args.energy, args.alpha), args.alpha).K
    return MapConfig(args.alpha, args.energy, K, args.variant or "full")


def cmd_map(args) -> List[Table]:
    cfg = _map_config(args)
    meta = reproduce.metadata(alpha=cfg.alpha, energy=cfg.energy, stiffness=cfg.stiffness, variant=cfg.sweep_variant)
    if args.y0 is not None:
        orbit = iterate(args.y0, cfg, max_steps=args.max_steps)
        rows = [(i, y, x) for i, (y, x) in enumerate(zip(orbit.heights, orbit.x_dots))]
        return [Table("orbit", ["step", "Y", "X_dot"], rows, {**meta, "terminal": orbit.terminal.value})]
    ys = args.sweep if args.sweep is not None else np.linspace(cfg.landing_height, min(cfg.energy, cfg.forward_limit), 201)[1:-1]
    rows = [(float(y), map_value(y, cfg), float(y)) for y in ys]
    return [Table("map", ["Y", "f", "diagonal"], rows, meta)]


def cmd_fixed_points(args) -> List[Table]:
    cfg = _map_config(args)
    meta = reproduce.metadata(alpha=cfg.alpha, energy=cfg.energy, stiffness=cfg.stiffness, variant=cfg.sweep_variant)
    if args.theta_d is not None:
        rec = stability_check(args.theta_d, cfg.alpha, cfg.energy, cfg.stiffness)
        meta["analytic"] = dict(Y_star=rec.Y_star, f_prime=rec.f_prime, stable=rec.stable)
    found = find_fixed_points(cfg)
    meta["degenerate"] = found.degenerate
    rows = [(p.Y, p.f_prime, p.stable) for p in found]
    return [Table("fixed_points", ["Y", "f_prime", "stable"], rows, meta)]


def cmd_regions(args) -> List[Table]:
    if args.kind == "velocity":
        if args.sweep is not None and args.alpha is not None:
            rows = [(float(e), *velocity_bounds(args.alpha, e)) for e in args.sweep]
            return [Table("velocity_region", ["energy", "theta_minus", "theta_plus"], rows,
                          reproduce.metadata(alpha=args.alpha))]
        _need(args, "energy")
        alphas = args.sweep if args.sweep is not None else [args.alpha]
        rows = [(float(a), *velocity_bounds(a, args.energy)) for a in alphas]
        return [Table("velocity_region", ["alpha", "theta_minus", "theta_plus"], rows,
                      reproduce.metadata(energy=args.energy))]
    alphas = args.sweep if args.sweep is not None else [args.alpha]
    if alphas[0] is None:
        raise SlipError("missing required option(s): --alpha or --sweep")
    return [reproduce._region_table("regions", np.asarray(alphas, float), args.mode, args.theta_d)]


def cmd_continuation(args) -> List[Table]:
    _need(args, "alpha", "sweep")
    th = args.theta_d if args.theta_d is not None else 1.0
    rule = fixed_velocity_rule(th)
    e = args.sweep
    step = float(e[1] - e[0]) if len(e) > 1 else 1.0
    bs = continue_branch(args.alpha, (float(e[0]), float(e[-1])), step, k_rule=rule, variant=args.variant or "taylor")
    rows = [("branch", i, q.E_s, q.Y_star, q.f_prime, q.stable, q.K_used) for i, b in enumerate(bs.branches) for q in b.points]
    meta = reproduce.metadata(alpha=args.alpha, k_rule=rule.__name__, variant=bs.variant)
    try:
        ev = detect_transcritical(bs)
        rows.append((ev.kind, -1, ev.E_s_star, ev.Y_star, ev.f_prime, False, ev.K_used))
    except NoCollisionError as exc:
        meta["event"] = f"none: {exc}"
    return [Table("continuation", ["kind", "branch", "E_s", "Y_star", "f_prime", "stable", "K"], rows, meta)]


def cmd_dimensionalize(args) -> List[Table]:
    rows = []
    if args.energy is not None:
        rows.append(("energy", args.energy, dimensionalize(args.energy, "energy", args.mass, args.gravity, args.leg_length), "J"))
    if args.x_vel is not None:
        rows.append(("velocity", args.x_vel, dimensionalize(args.x_vel, "velocity", args.mass, args.gravity, args.leg_length), "m/s"))
    if not rows:
        raise SlipError("give --energy and/or --x-vel")
    meta = reproduce.metadata(mass=args.mass, gravity=args.gravity, leg_length=args.leg_length)
    return [Table("dimensional", ["quantity", "dimensionless", "si", "unit"], rows, meta)]


def _emit(tables: List[Table], out: Optional[Path], fmt: str):
    if out is None:
        for t in tables:
            sys.stdout.write(t.render(fmt))
        return
    if len(tables) == 1 and out.suffix:
        tables[0].write(out, fmt)
        return
    for t in tables:
        t.write(out / f"{t.name}.{fmt}", fmt)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slipmap", description="SLIP apex return map lab")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stance", help="asymptotic stance solution (optionally the ODE trajectory)")
    _common(p)
    p.add_argument("--oracle", action="store_true", help="also integrate the full stance equations")
    p.set_defaults(fn=cmd_stance)

    p = sub.add_parser("stiffness", help="symmetric-stance stiffness estimates")
    _common(p)
    p.set_defaults(fn=cmd_stiffness)

    p = sub.add_parser("kstar", help="shooting stiffness K* (--sweep over alpha)")
    _common(p)
    p.set_defaults(fn=cmd_kstar)

    p = sub.add_parser("map", help="sample the apex map, or iterate an orbit with --y0")
    _common(p)
    p.add_argument("--y0", type=float)
    p.add_argument("--max-steps", type=int, default=100)
    p.set_defaults(fn=cmd_map)

    p = sub.add_parser("fixed-points", help="fixed points of the apex map")
    _common(p)
    p.set_defaults(fn=cmd_fixed_points)

    p = sub.add_parser("regions", help="stability regions (--sweep over alpha, or energy for velocity)")
    _common(p)
    p.add_argument("--kind", choices=("energy", "velocity"), default="energy")
    p.add_argument("--mode", choices=("special", "general"), default="special")
    p.set_defaults(fn=cmd_regions)

    p = sub.add_parser("continuation", help="fixed-point branches over --sweep energies")
    _common(p)
    p.set_defaults(fn=cmd_continuation)

    p = sub.add_parser("reproduce", help="regenerate one figure or table")
    p.add_argument("target", choices=sorted(reproduce.SCENARIOS))
    p.add_argument("--out", type=Path, default=None, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=None)

    p = sub.add_parser("dimensionalize", help="convert to SI units")
    _common(p)
    p.add_argument("--mass", type=float, default=75.0)
    p.add_argument("--gravity", type=float, default=9.81)
    p.add_argument("--leg-length", type=float, default=1.0)
    p.set_defaults(fn=cmd_dimensionalize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reproduce":
            tables = reproduce.SCENARIOS[args.target]()
            _emit(tables, args.out or default_outdir(), args.format)
        else:
            _emit(args.fn(args), args.out, args.format)
    except SlipError as exc:
        print(f"slipmap: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"slipmap: io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
