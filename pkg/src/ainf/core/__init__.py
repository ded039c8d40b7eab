"""Scalars, graded modules and maps, the Koszul sign engine, reports."""

from .graded import (
    ArityMismatch,
    DegreeMismatch,
    GradedElement,
    GradedError,
    GradedMap,
    GradedModule,
    ShapeMismatch,
    ShiftedModule,
    UnknownLabel,
    ZERO_MODULE,
    hom_label,
    hom_module,
    map_to_hom_element,
    suspend,
    tensor_eval,
    transport_shift,
)
from .linalg import solve
from .report import Report, Violation, run_check
from .rings import (
    QQ,
    ZZ,
    DualNumbers,
    DualScalar,
    Integers,
    IntegersMod,
    MixedRings,
    NonUnit,
    Rationals,
    Residue,
    Ring,
    RingError,
    parse_ring,
)
