"""Criterion value, verdict and see-saw optimum along the Werner family."""
import argparse

import numpy as np

from bellcert import criterion, states
from bellcert.seesaw import SeesawConfig, seesaw


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=11)
    ap.add_argument("--restarts", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = SeesawConfig(restarts=args.restarts, seed=args.seed)
    print(f"{'w':>6} {'n':>2} {'M_n':>10} {'verdict':>13} {'bound':>10} {'seesaw':>10}")
    for w in np.linspace(0, 1, args.points):
        rho = states.werner(w)
        for n in (2, 3):
            rep = criterion.m_n(rho, n)
            val = seesaw(rho, n, cfg).value
            print(f"{w:6.3f} {n:2d} {rep.m_n_value:10.6f} {rep.verdict:>13} {rep.bell_lower_bound:10.6f} {val:10.6f}")


if __name__ == "__main__":
    main()
