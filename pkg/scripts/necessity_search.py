"""Search for states where the criterion bound is not the optimum.

For random states at the given (m, n) the gap between the see-saw optimum
and 2^(n-1) M_n is recorded. A positive gap beyond tolerance shows that the
criterion bound is not tight there. States whose criterion verdict is
negative while the see-saw exceeds the local bound are flagged separately:
those would be verdict-level counterexamples to necessity.
"""
import argparse

import numpy as np

from bellcert import criterion, functional, states
from bellcert.seesaw import SeesawConfig, seesaw


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--family", choices=("random", "bell-diagonal"), default="random")
    ap.add_argument("--tol", type=float, default=1e-5)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    cfg = SeesawConfig(seed=args.seed)
    L = functional.local_bound(args.n)
    gaps, verdict_flags = [], 0
    worst = None
    for _ in range(args.samples):
        if args.family == "random":
            rho = states.random_state(2**args.m, rng)
        else:
            e = rng.dirichlet(np.ones(4))
            A = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]) / 4
            lam = np.linalg.solve(A[1:] - A[0], e[1:] - e[0])
            rho = states.m_copies(states.bell_diagonal(*lam), args.m)
        rep = criterion.m_n(rho, args.n)
        val = seesaw(rho, args.n, cfg).value
        gap = val - rep.bell_lower_bound
        gaps.append(gap)
        if not rep.violates and val > L + args.tol:
            verdict_flags += 1
        if worst is None or gap > worst[0]:
            worst = (gap, rep.bell_lower_bound, val)
    gaps = np.array(gaps)
    print(f"m={args.m} n={args.n} family={args.family} samples={args.samples}")
    print(f"  gap > {args.tol:g}: {(gaps > args.tol).sum()}   min gap: {gaps.min():.2e}   max gap: {gaps.max():.4f}")
    print(f"  worst case: bound {worst[1]:.6f}, see-saw {worst[2]:.6f}")
    print(f"  negative verdict yet see-saw above local bound {L}: {verdict_flags}")


if __name__ == "__main__":
    main()
