"""Command-line harness: sampling, measurement campaigns and analytic scans, as CSV."""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .baselines import TableSizeError
from .bit_source import BitSource, ReplayBitSource, ReplayExhausted
from .corpus import gen_dists
from .ddg import dump_tree, ky_construct
from .distribution import (
    WeightError,
    WeightedDistribution,
    entropy,
    parse_weights,
    read_weight_file,
    reduced_modulus,
)
from .fldr import dump_table, entropy_gap, fldr_preprocess
from .number_theory import minimal_depth
from .samplers import SAMPLER_NAMES, build_sampler
from .stats import CSV_HEADER, chi_square_gof, report_row, run_sampler

BENCH_HEADER = CSV_HEADER + ",memory_bytes,preprocess_ns,status"


@dataclass
class BenchConfig:
    samplers: list
    dists: list
    N: int = 1_000_000
    seed: int = 0
    bits_path: str | None = None
    serial: bool = False
    max_lookup_entries: int = 1 << 28

    def __post_init__(self):
        if not self.samplers:
            raise ValueError("bench needs at least one sampler")
        if self.N < 1:
            raise ValueError("bench needs N >= 1")
        unknown = set(self.samplers) - set(SAMPLER_NAMES)
        if unknown:
            raise ValueError(f"unknown samplers: {', '.join(sorted(unknown))}")


def make_source(seed=0, bits_path=None):
    if bits_path:
        return ReplayBitSource.from_file(bits_path)
    return BitSource(seed)


def row_seed(seed, index):
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def depth_scan(m_max, m_min=3):
    """Rows (m, ky_depth, fldr_depth) for the distribution (1, m-1)."""
    for m in range(m_min, m_max + 1):
        dist = WeightedDistribution((1, m - 1))
        yield m, minimal_depth(reduced_modulus(dist)).k, (m - 1).bit_length()


def gap_scan(k):
    """Rows (m, term1, term2, term3, exact_gap) for (1, m-1), 2**(k-1) < m <= 2**k."""
    for m in range((1 << (k - 1)) + 1, (1 << k) + 1):
        g = entropy_gap(WeightedDistribution((1, m - 1)))
        yield m, g.term1, g.term2, g.term3, g.exact_gap


def _bench_row(config, index, name, dist):
    try:
        options = {"max_entries": config.max_lookup_entries} if name == "rej-lookup" else {}
        sampler = build_sampler(name, dist, **options)
    except TableSizeError:
        return f"{name},{dist.n},{dist.m},{entropy(dist):.6f},,,,,,,,skipped"
    # a throwaway draw compiles or loads the batch kernel outside the timed run
    sampler.sample_many(BitSource(0), 1)
    source = make_source(row_seed(config.seed, index), config.bits_path)
    report = run_sampler(sampler, dist, config.N, source)
    try:
        gof = chi_square_gof(report, dist)
    except ValueError:
        gof = None
    return (
        report_row(name, dist, report, gof)
        + f",{sampler.memory_bytes()},{sampler.preprocess_ns},ok"
    )


def cmd_bench(config):
    jobs = [
        (i, name, dist)
        for i, (dist, name) in enumerate(
            (d, s) for d in config.dists for s in config.samplers
        )
    ]
    if config.serial or len(jobs) == 1:
        rows = [_bench_row(config, *job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=os.cpu_count() or 1) as pool:
            rows = list(pool.map(lambda job: _bench_row(config, *job), jobs))
    return [BENCH_HEADER] + rows


def _write(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _common_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0,
                        help="generator seed (unsigned 64-bit; 0 is the default stream)")
    parser.add_argument("--bits", default=default, help="replay bits from a file of ASCII 0/1")
    parser.add_argument("--out", default=default, help="write output to this path")
    parser.add_argument("--serial", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="run benchmark rows sequentially")


def build_parser():
    parser = argparse.ArgumentParser(prog="loadeddice", description=__doc__)
    _common_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _common_flags(p, suppress=True)
        return p

    p = add("sample", "print N samples, one per line")
    p.add_argument("sampler", choices=SAMPLER_NAMES)
    p.add_argument("weights")
    p.add_argument("N", type=int)

    p = add("gof", "chi-square goodness of fit for one sampler")
    p.add_argument("sampler", choices=SAMPLER_NAMES)
    p.add_argument("weights")
    p.add_argument("N", type=int)

    p = add("bench", "measure samplers over a corpus of distributions")
    p.add_argument("--samplers", default=",".join(SAMPLER_NAMES))
    p.add_argument("--dists", help="weight file; default generates a corpus")
    p.add_argument("-n", type=int, default=100, help="generated corpus: outcomes")
    p.add_argument("-m", type=int, default=40000, help="generated corpus: weight sum")
    p.add_argument("--count", type=int, default=20, help="generated corpus: distributions")
    p.add_argument("-N", "--samples", type=int, default=1_000_000)
    p.add_argument("--max-lookup-entries", type=int, default=1 << 28)

    p = add("depth-scan", "analytic tree depths for (1, m-1), KY vs FLDR")
    p.add_argument("m_max", type=int)
    p.add_argument("--m-min", type=int, default=3)
    p.add_argument("--full-range", action="store_true", help="allow m_max up to 10**5")

    p = add("gap-scan", "entropy-gap terms for (1, m-1) over 2**(k-1) < m <= 2**k")
    p.add_argument("k", type=int)

    p = add("gen-dists", "entropy-spaced integer distributions")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("count", type=int)
    p.add_argument("--targets", help="comma-separated entropy targets in bits")

    p = add("dump-table", "print the FLDR table or the KY tree")
    p.add_argument("sampler", choices=("fldr", "ky"))
    p.add_argument("weights")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        lines = _dispatch(args)
    except (WeightError, ValueError, OverflowError, ReplayExhausted, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _write(lines, args.out)
    return 0


def _dispatch(args):
    if args.command == "sample":
        dist = parse_weights(args.weights)
        sampler = build_sampler(args.sampler, dist)
        source = make_source(args.seed, args.bits)
        return [str(x) for x in sampler.sample_many(source, args.N)]

    if args.command == "gof":
        dist = parse_weights(args.weights)
        sampler = build_sampler(args.sampler, dist)
        sampler.sample_many(BitSource(0), 1)
        report = run_sampler(sampler, dist, args.N, make_source(args.seed, args.bits))
        return [CSV_HEADER, report_row(args.sampler, dist, report, chi_square_gof(report, dist))]

    if args.command == "bench":
        if args.dists:
            dists = read_weight_file(args.dists)
        else:
            dists = gen_dists(args.n, args.m, args.count, seed=args.seed)
        config = BenchConfig(
            samplers=[s for s in args.samplers.split(",") if s],
            dists=dists,
            N=args.samples,
            seed=args.seed,
            bits_path=args.bits,
            serial=args.serial,
            max_lookup_entries=args.max_lookup_entries,
        )
        return cmd_bench(config)

    if args.command == "depth-scan":
        limit = 10**5 if args.full_range else 2000
        if not 3 <= args.m_max <= limit:
            raise ValueError(f"m_max must be in 3..{limit} (use --full-range for up to 10**5)")
        return ["m,ky_depth,fldr_depth"] + [f"{m},{ky},{fl}" for m, ky, fl in depth_scan(args.m_max, args.m_min)]

    if args.command == "gap-scan":
        if not 2 <= args.k <= 20:
            raise ValueError("k must be in 2..20")
        return ["m,term1,term2,term3,exact_gap"] + [
            f"{m},{t1:.10g},{t2:.10g},{t3:.10g},{g:.10g}" for m, t1, t2, t3, g in gap_scan(args.k)
        ]

    if args.command == "gen-dists":
        targets = [float(t) for t in args.targets.split(",")] if args.targets else None
        dists = gen_dists(args.n, args.m, args.count, targets=targets, seed=args.seed)
        return [f"# n={args.n} m={args.m} seed={args.seed}"] + [str(d) for d in dists]

    if args.command == "dump-table":
        dist = parse_weights(args.weights)
        if args.sampler == "fldr":
            return [dump_table(fldr_preprocess(dist))]
        return [dump_tree(ky_construct(dist))]

    raise ValueError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
