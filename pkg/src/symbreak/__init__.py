"""Equivariant symmetry breaking sets for finite point groups."""
from .o3_geometry import IrrepObject, PointGroup, canonical_point_group, identify_point_group
from .sbs_engine import SBSpec, full_sbs, partial_sbs, ideal_partial_object_symmetry

__all__ = [
    "IrrepObject", "PointGroup", "canonical_point_group", "identify_point_group",
    "SBSpec", "full_sbs", "partial_sbs", "ideal_partial_object_symmetry",
]
