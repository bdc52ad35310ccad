"""Exact Haar-basis threshold, projection and enlargement operators on dyadic step functions."""

from .dyadic import (
    ROOT,
    DyadicInterval,
    IntervalSet,
    Relation,
    branching_partition,
    derived_set,
    halves,
    max_level,
    order_in_set,
    relation,
    segment,
    set_order,
)
from .enlargement import (
    BoundCertificate,
    EnlargeParams,
    band_enlarge,
    construct_enlarged_set,
    epsilon_enlargement,
)
from .haar import (
    HaarExpansion,
    StepFunction,
    analyze,
    coefficient,
    haar_function,
    l1_norm,
    norm_on,
    project,
    support,
    synthesize,
    tail_projection,
    threshold,
)
from .symmetrization import (
    SymmetrizedPair,
    delta,
    full_symmetrize,
    symmetrize_left,
    symmetrize_right,
    symmetrize_step,
    zero_frontier,
)

__version__ = "0.1.0"
