"""Exact perimeter-and-area series, symmetry classes and area limit laws for
square-lattice staircase polygons."""

from .radicals import (
    RadicalConstant,
    gamma_half_integer,
    rad_approx,
    rad_mul,
)
from .series import (
    DeltaJet,
    LaurentQPoly,
    XSeries,
    compose_xq,
    exact_ring,
    jet_q_power,
    jet_ring,
    rational_ring,
    xs_add,
    xs_mul,
    xs_recip,
)
from .polygons import (
    CLASSES,
    CountTable,
    Polygon,
    enumerate_counts,
    enumerate_polygons,
    is_fixed,
    symmetry_signature,
)
from .feq import (
    CLASS_IDS,
    catalan,
    closed_form_coefficient,
    evaluate_rhs,
    solve_series,
)

__version__ = "0.1.0"

__all__ = [
    "CLASSES",
    "CLASS_IDS",
    "CountTable",
    "DeltaJet",
    "LaurentQPoly",
    "Polygon",
    "RadicalConstant",
    "XSeries",
    "catalan",
    "closed_form_coefficient",
    "compose_xq",
    "enumerate_counts",
    "enumerate_polygons",
    "evaluate_rhs",
    "exact_ring",
    "gamma_half_integer",
    "is_fixed",
    "jet_q_power",
    "jet_ring",
    "rad_approx",
    "rad_mul",
    "rational_ring",
    "solve_series",
    "symmetry_signature",
    "xs_add",
    "xs_mul",
    "xs_recip",
]
