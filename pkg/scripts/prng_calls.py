"""PRNG calls and bits for 10^6 FLDR samples from n=1000 distributions at several entropies.

A floating-point sampler spends at least one 64-bit PRNG call per
sample, 10^6 in total; FLDR draws bits from a buffered word, so its call
count tracks the entropy.
"""

import argparse
import random

from loadeddice.bit_source import BitSource
from loadeddice.corpus import entropy_targeted
from loadeddice.distribution import entropy
from loadeddice.samplers import build_sampler
from loadeddice.stats import run_sampler


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--targets", type=float, nargs="+", default=[1, 3, 5, 7, 9])
    ap.add_argument("-m", type=int, default=100_000)
    ap.add_argument("-N", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print("entropy,prng_calls,bits_per_sample,elapsed_ms")
    for target in args.targets:
        dist = entropy_targeted(1000, args.m, target, rng=rng)
        sampler = build_sampler("fldr", dist)
        sampler.sample_many(BitSource(0), 1)  # keep kernel compilation out of the timing
        report = run_sampler(sampler, dist, args.N, BitSource(args.seed))
        print(
            f"{entropy(dist):.3f},{report.prng_calls},{report.bits_per_sample:.4f},"
            f"{report.elapsed_ns / 1e6:.2f}"
        )
    print(f"float,{args.N},64,")


if __name__ == "__main__":
    main()
