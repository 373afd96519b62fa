"""Memory and runtime of every sampler over an entropy-spaced corpus.

Defaults are desk scale: n=100, m=40000, 20 distributions, 10^6 samples
each. The rows carry memory_bytes and elapsed_ns for a memory-vs-time
scatter and a time-vs-entropy curve.
"""

import argparse
import sys

from loadeddice.cli import BenchConfig, cmd_bench
from loadeddice.corpus import gen_dists
from loadeddice.samplers import SAMPLER_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=100)
    ap.add_argument("-m", type=int, default=40000)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("-N", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samplers", default=",".join(SAMPLER_NAMES))
    ap.add_argument("--parallel", action="store_true", help="threads instead of sequential rows")
    ap.add_argument("--out")
    args = ap.parse_args()

    config = BenchConfig(
        samplers=args.samplers.split(","),
        dists=gen_dists(args.n, args.m, args.count, seed=args.seed),
        N=args.N,
        seed=args.seed,
        serial=not args.parallel,
    )
    rows = cmd_bench(config)
    out = open(args.out, "w") if args.out else sys.stdout
    out.write("\n".join(rows) + "\n")

    # per-sampler medians, for a quick look at the ordering
    cols = rows[0].split(",")
    per = {}
    for r in rows[1:]:
        f = dict(zip(cols, r.split(",")))
        if f["status"] == "ok":
            per.setdefault(f["sampler"], []).append((int(f["elapsed_ns"]) / args.N, int(f["memory_bytes"])))
    for name, vals in per.items():
        ns = sorted(v[0] for v in vals)[len(vals) // 2]
        mem = sorted(v[1] for v in vals)[len(vals) // 2]
        print(f"{name:14s} median {ns:7.1f} ns/sample  {mem:9d} bytes", file=sys.stderr)


if __name__ == "__main__":
    main()
