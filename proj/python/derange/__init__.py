"""Exact derangement-family sequences, truncated EGF algebra and identity checks."""

from ._core import (
    CapExceeded,
    NonIntegralTerm,
    OrderMismatch,
    b_derangement,
    b_stirling_k0,
    binomial,
    binomial_convolution,
    cauchy_product_terms,
    count_ordered_partitions,
    count_r_derangements,
    count_signed_derangements,
    cycle_decomposition,
    derangement,
    derangement_nearest_int,
    egf_b_derangement,
    egf_r_derangement,
    egf_r_derangement_terms,
    factorial,
    identity_names,
    lah,
    r_derangement,
    r_derangement_recurrence,
    rising_factorial,
    series_exp,
    series_reciprocal_pole,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
