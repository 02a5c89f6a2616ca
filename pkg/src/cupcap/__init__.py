"""Cup-cap word encodings of planar point sets and pair functions."""

from .chains import Chain, CupCapTables, FreenessReport, Kind, extreme_chain, is_free, tables
from .core import (
    NEG_INF,
    POS_INF,
    PairFunction,
    Point,
    PointSet,
    parse_pair_function,
    parse_point_set,
    random_point_set,
    shear,
    slope_function,
)
from .words import Pattern, Word, class_count, left_word, matches, right_word

__version__ = "0.1.0"
