"""Reconstruct non-positively curved disc triangulations and quadrangulations
from their boundary distances."""

from .errors import *  # noqa: F401,F403
from .planar_map import (  # noqa: F401
    CanonicalCode,
    DiscMap,
    Identification,
    MapKind,
    build_from_faces,
    canonical_code,
    chords,
    curvature_report,
    glue_maps,
    split_along_chord,
)

__version__ = "0.1.0"
