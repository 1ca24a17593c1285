"""Finite racks, multiple group racks, shadow cocycles and the cocycle
invariants of diagrams of oriented spatial surfaces."""
from .algebra import (
    AxiomError,
    FiniteRack,
    MalformedTableError,
    QSetAction,
    Report,
    dihedral_quandle,
    product_rack,
    regular_qset,
    trivial_qset,
    ts_rack,
    type_of,
    type_of_element,
    verify_qset,
    verify_rack,
)
from .chains import Chain, ChainContext, evaluate, gen
from .cocycles import (
    Cochain2,
    check_mgr_2cocycle,
    check_rack_2cocycle,
    coboundary_of_1cochain,
    lift_mgr,
    lift_parallel,
    mochizuki,
    mochizuki_data,
    ts_cocycle,
)
from .config import PRESETS, CocycleRecipe, Pipeline, RunConfig
from .invariants import (
    Coloring,
    Filters,
    InvariantMultiset,
    compare,
    count_arc_colorings,
    count_colorings,
    enumerate_colorings,
    negate,
    phi,
    weight,
)
from .mgr import (
    AssociatedMGR,
    FiniteMGR,
    XSetAction,
    associated_mgr,
    conjugation_mgr,
    extend_mgr_by_cocycle,
    verify_mgr,
    verify_xset,
)

__version__ = "0.1.0"
