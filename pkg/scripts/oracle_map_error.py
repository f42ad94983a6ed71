"""Gap between the analytic apex map and the integrated map, and its decay with stiffness."""

import argparse
import math

import numpy as np

from slipmap.model import ModelParams, TouchdownState, cartesian_from_polar_takeoff, touchdown_polar_from_cartesian
from slipmap.oracle import flight_step, integrate_stance
from slipmap.returnmap import MapConfig, map_value
from slipmap.stability import fixed_point_height_from_energy, min_energy, special_theta
from slipmap.stiffness import stiffness_symmetric


def oracle_next(Y, a, E, K):
    td = touchdown_polar_from_cartesian(math.sqrt(2 * (E - Y)), math.sqrt(2 * (Y - math.cos(a))), a)
    traj = integrate_stance(td, ModelParams(alpha=a, stiffness=K))
    return flight_step(cartesian_from_polar_takeoff(traj.takeoff)).Y


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alpha", type=float, default=math.pi / 9)
    ap.add_argument("--energy", type=float, default=1.48)
    ap.add_argument("--n", type=int, default=21)
    args = ap.parse_args()
    a, E = args.alpha, args.energy
    th = special_theta(a)
    K = stiffness_symmetric(TouchdownState.from_energy(th, E, a), a).K
    print(f"alpha={a:.5f} E={E} K={K:.5f}")
    print(f"{'Y':>8} {'f_full':>9} {'f_taylor':>9} {'ode':>9} {'gap_full':>9}")
    full, tay = MapConfig(a, E, K, "full"), MapConfig(a, E, K, "taylor")
    for Y in np.linspace(math.cos(a) + 1e-6, full.forward_limit - 1e-6, args.n):
        y_ode = oracle_next(Y, a, E, K)
        f, t = map_value(Y, full), map_value(Y, tay)
        print(f"{Y:8.5f} {f:9.5f} {t:9.5f} {y_ode:9.5f} {abs(f - y_ode):9.2e}")

    print("\ngap at the fixed point as alpha shrinks (theta_d* = sqrt(cos a), E = E_min + 0.01)")
    print(f"{'alpha':>8} {'K':>9} {'Y*':>8} {'gap_full':>9} {'gap_taylor':>10}")
    for a_k in (math.pi / 9, math.pi / 12, math.pi / 18, math.pi / 36, math.pi / 72):
        th_k = special_theta(a_k)
        e = min_energy(th_k, a_k) + 0.01
        K_k = stiffness_symmetric(TouchdownState.from_energy(th_k, e, a_k), a_k).K
        Ys = fixed_point_height_from_energy(th_k, e, a_k)
        y_ode = oracle_next(Ys, a_k, e, K_k)
        gf = abs(map_value(Ys, MapConfig(a_k, e, K_k, "full")) - y_ode)
        gt = abs(map_value(Ys, MapConfig(a_k, e, K_k, "taylor")) - y_ode)
        print(f"{a_k:8.5f} {K_k:9.2f} {Ys:8.5f} {gf:9.2e} {gt:10.2e}")

if __name__ == "__main__":
    main()
