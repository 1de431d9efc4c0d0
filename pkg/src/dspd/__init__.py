"""Analytical distance-to-sample distributions in random graphs.

Estimate how far the non-sampled nodes of a random graph sit from a sample,
using only degree distributions — no graph instance required — and check
those estimates against breadth-first-search measurements on generated
graphs.
"""

from ._backend import BACKEND
from .distance import DistanceDistribution
from .estimator import (DepthExhaustedError, RecursionState, estimate_dspd,
                        estimate_single_node)
from .experiment import (BenchResult, EmpiricalResult, EstimatorSettings,
                         ExperimentConfig, TrialCounts, analytic_estimate,
                         run_bench, run_empirical)
from .graphs import (BinomialGraph, GenerationError, Graph, GraphSpec,
                     PowerLawGraph, SbmGraph, degree_distributions,
                     dump_edge_list, generate, load_edge_list)
from .metrics import (MethodComparison, compare_methods, mean_distance,
                      wasserstein1)
from .oracle import average_dspd, bfs_dspd
from .pmf import (DegenerateDistributionError, Pmf, binomial_pmf,
                  convolution_power, degree_weighted, mean, mixture,
                  point_mass, power_law_pmf, shift)
from .presets import preset, preset_names
from .sampling import (SampleResult, SampleSpec, SamplingExhaustedError,
                       draw_random_sample, draw_snowball_sample,
                       supernode_pmf_random, supernode_pmf_snowball,
                       supernode_pmfs_sbm, within_block_reach_probability)
from .sbm_estimator import SbmRecursionState, estimate_dspd_sbm

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BenchResult",
    "BinomialGraph",
    "DegenerateDistributionError",
    "DepthExhaustedError",
    "DistanceDistribution",
    "EmpiricalResult",
    "EstimatorSettings",
    "ExperimentConfig",
    "GenerationError",
    "Graph",
    "GraphSpec",
    "MethodComparison",
    "Pmf",
    "PowerLawGraph",
    "RecursionState",
    "SampleResult",
    "SampleSpec",
    "SamplingExhaustedError",
    "SbmGraph",
    "SbmRecursionState",
    "TrialCounts",
    "analytic_estimate",
    "average_dspd",
    "bfs_dspd",
    "binomial_pmf",
    "compare_methods",
    "convolution_power",
    "degree_distributions",
    "degree_weighted",
    "draw_random_sample",
    "draw_snowball_sample",
    "dump_edge_list",
    "estimate_dspd",
    "estimate_dspd_sbm",
    "estimate_single_node",
    "generate",
    "load_edge_list",
    "mean",
    "mean_distance",
    "mixture",
    "point_mass",
    "power_law_pmf",
    "preset",
    "preset_names",
    "run_bench",
    "run_empirical",
    "shift",
    "supernode_pmf_random",
    "supernode_pmf_snowball",
    "supernode_pmfs_sbm",
    "within_block_reach_probability",
    "wasserstein1",
]
