"""Exact tools for counting and bounding empty red-red-blue triangles in
bicolored planar point sets."""

from .census import Census, census_fast, census_oracle, rrb_in_region, witness_for_pair
from .geometry import Direction, GeometryError, Point, orient
from .holes import count_k_holes
from .pointset import (
    ColoredPointSet,
    ColoringScheme,
    GenerationError,
    PointSetError,
    bicolor,
    gen_circle_pair,
    gen_clustered,
    gen_horton,
    gen_random_gp,
)
from .sectors import assemble_certificate, bisecting_line, build_sector_fan, good_sector_run, p_min
from .verify import verify_all

__version__ = "0.1.0"

__all__ = [
    "Census",
    "ColoredPointSet",
    "ColoringScheme",
    "Direction",
    "GenerationError",
    "GeometryError",
    "Point",
    "PointSetError",
    "assemble_certificate",
    "bicolor",
    "bisecting_line",
    "build_sector_fan",
    "census_fast",
    "census_oracle",
    "count_k_holes",
    "gen_circle_pair",
    "gen_clustered",
    "gen_horton",
    "gen_random_gp",
    "good_sector_run",
    "orient",
    "p_min",
    "rrb_in_region",
    "verify_all",
    "witness_for_pair",
]
