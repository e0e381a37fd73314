"""Integral point sets: exact certification, constructions, searches and tables."""

from .core import (
    Certificate,
    Rational,
    Realization,
    SquaredDistanceMatrix,
    cayley_menger_det,
    certify,
    circumradius_squared,
    embedding_dimension,
    integer_sqrt,
    is_perfect_square,
    realize_coordinates,
    scale,
)
from .constructions import (
    LineApexConfig,
    TruncationParams,
    TwoLineConfig,
    blow_up_apex,
    blow_up_parallel,
    line_apex_to_sdm,
    line_circle_combine,
    regular_simplex,
    truncated_simplex,
)
from .search import (
    OffsetCatalog,
    SearchWitness,
    best_window,
    enumerate_planar_min,
    offsets_for,
    scan_truncation_pairs,
    search_line_apex,
)
from .tables import audit, lookup, lower_bound_kanold, upper_bound_1a

__version__ = "0.1.0"
