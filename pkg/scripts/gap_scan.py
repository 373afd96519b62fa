"""Entropy-gap terms of FLDR for (1, m-1) over 2**(k-1) < m <= 2**k, as CSV."""

import argparse
import sys

from loadeddice.cli import gap_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--out")
    args = ap.parse_args()
    out = open(args.out, "w") if args.out else sys.stdout
    print("k,m,term1,term2,term3,exact_gap", file=out)
    for k in args.k:
        for m, t1, t2, t3, gap in gap_scan(k):
            print(f"{k},{m},{t1:.8f},{t2:.8f},{t3:.8f},{gap:.8f}", file=out)


if __name__ == "__main__":
    main()
