"""Exact valuation theory on fields of rational functions."""

from .fields import parse_field
from .gauss import GaussPoint, RingOrder, compare_rings, gauss_val
from .intring import int_contained_in_gauss, int_member, minimal_gamma
from .literals import parse_poly, parse_ratfunc
from .prufer import decide_prufer, find_witness, gauss_overring_exists
from .sequences import breadth_ideal, classify_window, is_pseudo_limit, parse_family, pseudo_limit_set
from .sets import ball_relate, closure, parse_desc, stratify
from .values import INF, parse_value, render_value

__all__ = [
    "GaussPoint",
    "INF",
    "RingOrder",
    "ball_relate",
    "breadth_ideal",
    "classify_window",
    "closure",
    "compare_rings",
    "decide_prufer",
    "find_witness",
    "gauss_overring_exists",
    "gauss_val",
    "int_contained_in_gauss",
    "int_member",
    "is_pseudo_limit",
    "minimal_gamma",
    "parse_desc",
    "parse_family",
    "parse_field",
    "parse_poly",
    "parse_ratfunc",
    "parse_value",
    "pseudo_limit_set",
    "render_value",
    "stratify",
]
