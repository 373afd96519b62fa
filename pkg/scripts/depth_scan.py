"""Tree depth of the entropy-optimal sampler vs FLDR for (1, m-1), as CSV.

KY depth grows with the order of 2 modulo m and reaches m-1 at primes
where 2 is a primitive root; FLDR depth is ceil(log2 m).
"""

import argparse
import sys

from loadeddice.cli import depth_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=2000)
    ap.add_argument("--out")
    args = ap.parse_args()
    out = open(args.out, "w") if args.out else sys.stdout
    print("m,ky_depth,fldr_depth", file=out)
    worst = 0
    for m, ky, fl in depth_scan(args.m_max):
        print(f"{m},{ky},{fl}", file=out)
        worst = max(worst, ky)
    print(f"max KY depth {worst}, max FLDR depth {(args.m_max - 1).bit_length()}", file=sys.stderr)


if __name__ == "__main__":
    main()
