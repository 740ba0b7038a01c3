"""Exact-arithmetic toolkit for distributive polyhedra of marked networks,
their anti-blocking images and the piecewise-linear transfer maps between
them."""

from .errors import (
    BoxTooLargeError,
    CycleCapExceeded,
    DimensionMismatch,
    DivergentMonocycleError,
    InvalidNetworkError,
    MarkedNetworkError,
    NetworkParseError,
    NotInPolyhedronError,
    PreconditionError,
    UnboundedDirectionError,
)
from .gallery import (
    Poset,
    antichain_poset,
    cayley_network,
    chain_poset,
    lecture_hall_network,
    paper_example,
    poset_to_network,
    scale_point,
    yn_hrep,
)
from .network import (
    Cycle,
    CycleClass,
    CycleKind,
    Edge,
    MarkedNetwork,
    ValidationReport,
    classify_network,
    dump_network,
    elementary_cycles,
    opposite,
    parse_network,
    validate,
)
from .polyhedra import (
    HPolyhedron,
    LatticeBox,
    Row,
    chain_hrep,
    check_downclosed,
    check_lattice_closure,
    contains,
    is_antiblocking_hrep,
    join,
    lattice_points,
    mc_volume,
    meet,
    ord_hrep,
)
from .transfer import (
    LinearityMatrix,
    TightSubnetwork,
    linearity_matrix,
    phi,
    phi_general,
    phi_op,
    point_to_json,
    psi,
    tight_subnetwork,
)
from .walks import (
    AffineForm,
    Monocycle,
    Path,
    certificate_walk,
    enumerate_mw,
    partial_sigma_series,
    prepend_edge,
    sigma,
)

__version__ = "0.1.0"

__all__ = [
    "AffineForm",
    "antichain_poset",
    "BoxTooLargeError",
    "cayley_network",
    "certificate_walk",
    "chain_hrep",
    "chain_poset",
    "check_downclosed",
    "check_lattice_closure",
    "classify_network",
    "contains",
    "Cycle",
    "CycleCapExceeded",
    "CycleClass",
    "CycleKind",
    "DimensionMismatch",
    "DivergentMonocycleError",
    "dump_network",
    "Edge",
    "elementary_cycles",
    "enumerate_mw",
    "HPolyhedron",
    "InvalidNetworkError",
    "is_antiblocking_hrep",
    "join",
    "lattice_points",
    "LatticeBox",
    "lecture_hall_network",
    "linearity_matrix",
    "LinearityMatrix",
    "MarkedNetwork",
    "MarkedNetworkError",
    "mc_volume",
    "meet",
    "Monocycle",
    "NetworkParseError",
    "NotInPolyhedronError",
    "opposite",
    "ord_hrep",
    "paper_example",
    "parse_network",
    "partial_sigma_series",
    "Path",
    "phi",
    "phi_general",
    "phi_op",
    "point_to_json",
    "Poset",
    "poset_to_network",
    "PreconditionError",
    "prepend_edge",
    "psi",
    "Row",
    "scale_point",
    "sigma",
    "tight_subnetwork",
    "TightSubnetwork",
    "UnboundedDirectionError",
    "validate",
    "ValidationReport",
    "yn_hrep",
]
