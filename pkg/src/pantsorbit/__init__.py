"""Orbit graphs of pants decomposition graphs.

Connected trivalent multigraphs on 2g-2 vertices (loops allowed) up to
isomorphism are the orbits of the mapping class group acting on the
pants graph of a closed genus-g surface.  This package enumerates them,
builds the orbit graph whose edges are elementary shifts, measures exact
BFS distances, and constructs certified shift paths realizing the
diameter and twist-word distance bounds.
"""

from .errors import (
    AlreadyLoopError,
    BadGenusError,
    BadParametersError,
    BoundViolation,
    DisconnectedError,
    FormatVersionMismatch,
    GenusTooLargeError,
    GenusTooSmallError,
    IllegalMoveError,
    IndexOutOfRangeError,
    LiftInvariantViolation,
    NoLoopError,
    NotTrivalentError,
    PantsOrbitError,
    ParseError,
    SearchBudgetExceededError,
    UnknownFormError,
    WrongLoopCountError,
)
from .graphs import (
    CanonicalForm,
    Cycle,
    TrivalentGraph,
    canonical_copy,
    canonical_form,
    canonical_labeling,
    from_edge_list,
    girth,
    is_isomorphic,
    loop_count,
    make_oloops,
    parse,
    permutation_isomorphic,
    serialize,
    to_dot,
    trace_cycle,
)
from .shifts import (
    ShiftMove,
    ShiftPath,
    apply_shift,
    enumerate_shifts,
    inverse_shift,
    neighbors,
    shorten_cycle,
)
from .atlas import (
    CageBoundReport,
    DEFAULT_GENUS_LIMIT,
    GirthBoundReport,
    OrbitAtlas,
    bfs_distance,
    build_orbit_graph,
    cage_lower_bound,
    diameter,
    enumerate_orbits,
    enumerate_orbits_by_augmentation,
    load_atlas,
    min_cubic_order_with_girth,
    save_atlas,
    verify_girth_bound,
)
from .bounds import (
    BoundCertificate,
    SurgeryRecord,
    flatten_bound,
    flatten_to_oloops,
    loop_surgery,
    make_loop,
    path_to_oloops,
    pull_all_loops,
    pull_bound,
    theorem1_bound,
)
from .lickorish import (
    TwistWord,
    distance_bound,
    format_word,
    generator_weight,
    parse_word,
    word_path_length,
)

__version__ = "0.1.0"
