"""Max-convolutions of discrete probability measures.

Classical, free, Boolean and monotone max-convolutions, the free
max-convolution power, subordination for free max-convolution, Cauchy
transforms, and a matrix model of monotone independence.
"""
from .convolution import (boolean_max, classical_max, free_max, free_max_power,
                          monotone_max)
from .measure import (CdfPoint, DiscreteMeasure, DomainError, MeasureFormatError,
                      cdf_eval, discretize_named, empirical_from_samples,
                      ks_distance, load_measure, quantile, sample, tail_eval,
                      write_measure)
from .report import Report
from .subordination import (SupportRegion, boolean_decomposition, subordinate, u_set,
                            verify_composition, verify_decomposition,
                            verify_free_distributivity, verify_power)

__all__ = [
    "CdfPoint", "DiscreteMeasure", "DomainError", "MeasureFormatError", "Report",
    "SupportRegion", "boolean_decomposition", "boolean_max", "cdf_eval",
    "classical_max", "discretize_named", "empirical_from_samples", "free_max",
    "free_max_power", "ks_distance", "load_measure", "monotone_max", "quantile",
    "sample", "subordinate", "tail_eval", "u_set", "verify_composition",
    "verify_decomposition", "verify_free_distributivity", "verify_power",
    "write_measure",
]
