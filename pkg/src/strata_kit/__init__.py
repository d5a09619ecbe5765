"""Exact symbolic toolkit for Zelevinsky segments and multisegments,
highest-derivative-partition strata, Grothendieck-group derivative
identities, and invariant-ring presentations of stratum components.
"""

from .errors import (
    BudgetExceededError,
    ShapeError,
    StrataKitError,
    WeightMismatchError,
    WraparoundError,
)
from .partitions import (
    Partition,
    add,
    conjugate,
    dominance_leq,
    enumerate_partitions,
    whittaker_support,
)
from .segments import (
    EMPTY_SEGMENT,
    CuspidalLabel,
    EmptySegment,
    Relation,
    Segment,
    SegmentLike,
    bottom_minus,
    equivalent,
    inertially_equivalent,
    relate,
    segment_invariants,
    top_minus,
    union_and_intersection,
)
from .multisegments import (
    InertialClass,
    Multisegment,
    Poset,
    canonical_order,
    degree,
    downset,
    elementary_reductions,
    enumerate_with_support,
    inertial_class,
    lambda_of,
    mw_dual,
)
from .kgroup import (
    DerivativeExpr,
    GradedVirtual,
    ProductExpr,
    ProductTerm,
    SumExpr,
    Verdict,
    ZClass,
    check_identity,
    highest_derivative_of_product,
    lemcomp_derivative,
    resolve_pair,
    total_derivative,
    weirdcase_constituents,
)
from .strata import (
    BlockSpec,
    InvariantRingPresentation,
    StratumReport,
    classification_partition,
    components,
    ext_dimensions,
    in_stratum,
    multisegment_to_orbit,
    point_to_multisegment,
    ring_presentation,
    tangent_dim,
)
from .cli import parse_expression

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
