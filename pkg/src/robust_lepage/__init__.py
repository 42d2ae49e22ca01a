"""Robust Lepage-type tests for two-sample location-scale problems."""

from .c_stat import CStatResult, c_star, c_star_p, c_stat_result, c_statistic, e0_c, var0_c, var_hat_c
from .datasets import Dataset, builtin_dataset
from .distributions import DistributionSpec, SeededStream, quantile_check, sample
from .lepage import LEPAGE_STATISTICS, LepageSuite, chisq2_sf, lepage_suite, statistics_batch
from .permutation import PermutationNull, critical_value, critical_values, perm_p_value, permutation_null, permutation_nulls
from .rank_core import (
    InvalidSampleError,
    PlacementVectors,
    TwoSample,
    ansari_scores,
    ecdf_placements,
    placements,
    pool_and_order,
)
from .simulation import SimConfig, SimResult, null_quantile_check, run_study, validate_var_c
from .u_stat import UStatResult, standardized_u, u_stat_result, u_statistic, var0_u, var_fh, var_fp

__version__ = "0.1.0"
