"""Number of maximal anticommuting Pauli-string sets per qubit count."""
import argparse
import time

from bellcert.anticommuting import count_maximal_sets


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=3)
    args = ap.parse_args()
    for m in range(1, args.m_max + 1):
        t = time.perf_counter()
        c = count_maximal_sets(m)
        print(f"m={m}  size={2 * m + 1}  sets={c}  ({time.perf_counter() - t:.2f} s)")


if __name__ == "__main__":
    main()
