"""Behavioural distances and bisimulation for fuzzy transition systems."""

from .bisim import Partition, bisimilar, quotient, refine_once, signature
from .lifting import build_system, canonical_valuation, is_feasible, lift
from .metric import (
    DistanceMatrix,
    FixpointReport,
    delta_core,
    fixpoint_discounted_approx,
    fixpoint_discounted_exact,
    fixpoint_undiscounted,
    hausdorff,
    point_to_set,
)
from .model import FTS, FuzzySubset, ModelError, parse, serialize, size_arith, size_bits, theta
from .numerics import bit_size, smallest_denominator_in, unit

__version__ = "0.1.0"
