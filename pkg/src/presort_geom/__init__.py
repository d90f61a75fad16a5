"""Planar structures built in linear time from points given in sorted order."""
from .core import Point, Presorting, RankRect, Square, make_presorting, validate_presorting
from .errors import PresortGeomError
from .kdtree import build_kd_baseline, build_kd_presorted, kd_trees_equal
from .quadtree import build_baseline, build_presorted, trees_equal, verify
from .rankindex import NaiveIndex, RankIndex
from .samplesearch import half_split, median_split, preprocess
from .segisect import VebSet, brute_force_pairs, detect_intersection, make_endpoint_presorting
from .triangulate import triangulate_xsorted, verify_triangulation

__version__ = "0.1.0"

__all__ = [
    "Point", "Presorting", "RankRect", "Square", "make_presorting", "validate_presorting",
    "PresortGeomError", "build_kd_baseline", "build_kd_presorted", "kd_trees_equal",
    "build_baseline", "build_presorted", "trees_equal", "verify", "NaiveIndex", "RankIndex",
    "half_split", "median_split", "preprocess", "VebSet", "brute_force_pairs",
    "detect_intersection", "make_endpoint_presorting", "triangulate_xsorted",
    "verify_triangulation",
]
