"""Torsion pairs in cluster categories of type D via Ptolemy diagrams."""

from .geometry import (
    GREEN,
    RED,
    ArcSet,
    Diameter,
    PairArc,
    PolygonContext,
    ar_shift,
    context,
    crosses,
    make_arc,
    nc,
    rotate180,
)
from .ptolemy import (
    TypeADiagram,
    Violation,
    is_ptolemy_a,
    is_ptolemy_d,
    is_torsion_arcset,
    pt_violations,
    ptolemy_closure,
)
from .series import TruncSeries, p_d, solve_pa

__version__ = "0.1.0"
