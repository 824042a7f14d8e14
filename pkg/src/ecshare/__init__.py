"""Linear secret sharing from AG codes on elliptic curves over small fields."""
from .field import GF, FieldElement, FieldSpec
from .curve import INFINITY, CurveSpec, Point, enumerate_points, group_structure
from .lsss import SchemeConfig, build_scheme, deal, reconstruct, is_qualified
from .analysis import access_structure, d_cheat, d_min, mds_check

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldElement",
    "FieldSpec",
    "INFINITY",
    "CurveSpec",
    "Point",
    "enumerate_points",
    "group_structure",
    "SchemeConfig",
    "build_scheme",
    "deal",
    "reconstruct",
    "is_qualified",
    "access_structure",
    "d_cheat",
    "d_min",
    "mds_check",
]
