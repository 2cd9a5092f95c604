"""Data-propagation closure and leak-free team partitioning for social graphs."""

__version__ = "0.1.0"

from .clustering import (  # noqa: E402,F401
    LeakReport,
    LeakViolation,
    Partition,
    cluster_members,
    components_oracle,
    dmax,
    verify_free_leak,
)
from .errors import MatrixKindError, NoChannelError, ValidationError  # noqa: F401
from .graph import (  # noqa: F401
    InteractionRecord,
    PropagationMatrix,
    ShareEdge,
    SocialGraph,
    build_graph,
    build_graph_from_interactions,
    direct_matrix,
    direct_share_probability,
)
from .propagation import (  # noqa: F401
    EnergyVector,
    WitnessPath,
    closure,
    oracle_simple_path_max,
    propagate_from,
    symmetrize,
    witness_path,
)
