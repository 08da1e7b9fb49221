"""Exact Kempe-equivalence laboratory for the polar triangulations G_n and H_n."""

from .colouring import (
    Colouring,
    are_equal,
    canonicalize,
    distinct_colourings,
    enumerate_proper_colourings,
    normalize_poles,
)
from .errors import (
    BudgetExceeded,
    DomainError,
    InvariantViolation,
    NoSuchColouring,
    NotEquivalent,
    StaleChain,
    UnknownEdge,
)
from .invariants import (
    InvariantVector,
    class_count_formula,
    class_size_formula,
    colouring_count_formula,
    construct_Q,
    construct_Q_ke,
    invariant_vector,
    kempe_distance_bound,
)
from .kempe import apply_change, bicoloured_components, classify_chain, kempe_neighbours
from .polar_graph import (
    EdgeClass,
    PolarTriangulation,
    build_polar_triangulation,
    build_truncated,
    edge_class,
    facial_triangles,
    remove_pole,
)
from .reconfiguration import build_reconfiguration_graph, diameter, distance, kempe_classes

__version__ = "0.1.0"
