"""K* from shooting vs the quadratic and leading-order stiffness estimates, over alpha."""

import argparse

from slipmap.model import touchdown_polar_from_cartesian
from slipmap.oracle import solve_k_star
from slipmap.stiffness import stiffness_leading, stiffness_symmetric


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x-vel", type=float, default=1.0)
    ap.add_argument("--y-vel", type=float, default=0.1)
    ap.add_argument("--alphas", type=float, nargs="*",
                    default=[0.01, 0.025, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35])
    args = ap.parse_args()
    print(f"{'alpha':>6} {'K*':>11} {'K*/K':>8} {'K*/K~':>8} {'iters':>5}")
    for a in args.alphas:
        td = touchdown_polar_from_cartesian(args.x_vel, args.y_vel, a)
        r = solve_k_star(args.x_vel, args.y_vel, a)
        kq = stiffness_symmetric(td, a).K
        kl = stiffness_leading(td.theta_d, a).K
        print(f"{a:6.3f} {r.K_star:11.4f} {r.K_star / kq:8.5f} {r.K_star / kl:8.5f} {r.iterations:5d}")


if __name__ == "__main__":
    main()
