#!/usr/bin/env python3
"""Reproduce the pseudovolume tables for full- and lower-dimensional balls.

Prints, for n = 1..n_max, the closed-form values of P_n(B_2n) and
P_n(B_2n-1) next to their Monte Carlo estimates, with standard errors.
"""

import argparse
from dataclasses import dataclass

from kazvol import (
    RandomStream,
    ball,
    ball_pseudovolume,
    lower_ball,
    lower_ball_pseudovolume,
    mc_pseudovolume,
)


@dataclass
class Config:
    n_max: int = 3
    samples: int = 500_000
    seed: int = 42


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=3)
    parser.add_argument("--samples", type=int, default=500_000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()
    cfg = Config(n_max=args.n_max, samples=args.samples, seed=args.seed)
    stream = RandomStream(cfg.seed)

    print(f"{'n':>2}  {'P_n(B_2n)':>14}  {'MC':>14}  {'err':>9}   "
          f"{'P_n(B_2n-1)':>14}  {'MC':>14}  {'err':>9}")
    for n in range(1, cfg.n_max + 1):
        full = ball_pseudovolume(n)
        low = lower_ball_pseudovolume(n)
        full_mc = mc_pseudovolume(ball(n), cfg.samples, stream.substream(2 * n))
        if n == 1:
            # B_1 is a segment: the boundary is not smooth and the
            # Monge-Ampere density vanishes, so the quadrature does not apply.
            low_cols = f"{'(segment)':>14}  {'--':>9}"
        else:
            low_mc = mc_pseudovolume(lower_ball(n), cfg.samples,
                                     stream.substream(2 * n + 1))
            low_cols = f"{low_mc.value:>14.9f}  {low_mc.std_error:>9.2e}"
        print(f"{n:>2}  {full:>14.9f}  {full_mc.value:>14.9f}  "
              f"{full_mc.std_error:>9.2e}   {low:>14.9f}  {low_cols}")

    print("\nclosed forms only, n up to 10:")
    for n in range(1, 11):
        print(f"{n:>2}  {ball_pseudovolume(n):>14.9f}  "
              f"{lower_ball_pseudovolume(n):>14.9f}")


if __name__ == "__main__":
    main()
