"""Comparison-geometry checks for manifolds with boundary.

Thin re-export of the compiled core. Reports and sweeps come back as plain
dicts with the same layout as the CLI's JSON output.
"""

from ._core import (
    ComparisonProfile,
    FocalPoleError,
    MeshManifold,
    ParseError,
    ValidationError,
    WarpedManifold,
    area_ratio,
    area_ratio_integral,
    diameter_bound,
    flat_upper_inner,
    focal_radius,
    laplacian_bound,
    load_mesh,
    make_mesh,
    make_warped,
    save_mesh,
    swif_tail,
    sweep,
    verify,
    volume_annulus_bound,
    wells_flat_bound,
)

__all__ = [
    "ComparisonProfile",
    "FocalPoleError",
    "MeshManifold",
    "ParseError",
    "ValidationError",
    "WarpedManifold",
    "area_ratio",
    "area_ratio_integral",
    "diameter_bound",
    "flat_upper_inner",
    "focal_radius",
    "laplacian_bound",
    "load_mesh",
    "make_mesh",
    "make_warped",
    "save_mesh",
    "swif_tail",
    "sweep",
    "verify",
    "volume_annulus_bound",
    "wells_flat_bound",
]
