"""Exact discrete sampling from integer weights in the random-bit model."""

from .bit_source import BitSource, ReplayBitSource, ReplayExhausted
from .ddg import DdgTree, expected_bits, ky_construct, ky_sample, output_distribution
from .distribution import WeightedDistribution, entropy, parse_weights, reduced_modulus
from .fldr import FldrTable, entropy_gap, fldr_as_ddg, fldr_preprocess, fldr_sample
from .samplers import SAMPLER_NAMES, build_sampler
from .stats import chi_square_gof, run_sampler

__all__ = [
    "BitSource",
    "DdgTree",
    "FldrTable",
    "ReplayBitSource",
    "ReplayExhausted",
    "SAMPLER_NAMES",
    "WeightedDistribution",
    "build_sampler",
    "chi_square_gof",
    "entropy",
    "entropy_gap",
    "expected_bits",
    "fldr_as_ddg",
    "fldr_preprocess",
    "fldr_sample",
    "ky_construct",
    "ky_sample",
    "output_distribution",
    "parse_weights",
    "reduced_modulus",
    "run_sampler",
]
