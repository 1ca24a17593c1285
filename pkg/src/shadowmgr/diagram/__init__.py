from .model import (
    CrossingInfo,
    DerivedStructure,
    SurfaceDiagram,
    VertexInfo,
    derive,
    describe,
    dumps,
    from_code,
    from_json,
    loads,
    to_code,
    to_json,
    validate,
)
from .ops import (
    add_handle,
    add_meridian,
    add_puncture,
    boundary_sum,
    connect_sum,
    invert_surface,
    minus_star,
    mirror,
    reflect,
    relabel,
    reverse,
    reverse_s1,
    switch,
)
from .library import library
from .ops import add_kink, strand_edges
from .library import F0, F2, F3, F5, circle, figure_eight, hopf_band, names, trefoil, unknotted, with_handles
from .moves import ClosedWord, MovePair, closure, move_pairs
