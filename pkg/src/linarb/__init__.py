"""Edge partitions of planar graphs into four linear forests and a matching.

The library has three legs: a reducibility checker that certifies catalog
configurations by enumerating outer coloring classes, an exact-rational
discharging auditor over plane embeddings, and a constructive partitioner
that recursively reduces a host graph along catalog occurrences.  Brute-force
oracles back all of it at desk scale.
"""

from .coloring import (
    ColoringClass,
    ColoringError,
    EdgeColoring,
    PartitionSpec,
    SearchSizeError,
    Violation,
    brute_force_partition,
    color_degree,
    extract_outer_class,
    format_coloring,
    parse_coloring,
    validate,
)
from .configurations import (
    Configuration,
    ConfigurationError,
    Occurrence,
    catalog,
    catalog_family,
    find_any,
    load_configuration,
    match,
)
from .discharge import (
    AuditReport,
    ChargeLedger,
    Transfer,
    UndefinedTransferError,
    apply_rules,
    audit,
    initial_charges,
    m_value,
)
from .graphs import (
    DegreeCapError,
    Edge,
    EmbeddingError,
    FormatError,
    Graph,
    GraphError,
    PlaneGraph,
    Segment,
    build_graph,
    classify_neighbour,
    edge,
    encode_graph6,
    format_rotation_system,
    make_plane_graph,
    parse_graph6,
    parse_rotation_system,
    trace_faces,
    vertex_segments,
)
from .partitioner import (
    ExtensionError,
    ReductionError,
    ReductionStep,
    extend,
    partition,
    reduce_step,
)
from .reducer import (
    CheckpointMismatch,
    ReducibilityReport,
    TimeBudgetExceeded,
    check_reducible,
    enumerate_outer_multisets,
    enumerate_path_sets,
    find_consistent_inner,
    vertex_multisets,
)

__version__ = "0.1.0"
