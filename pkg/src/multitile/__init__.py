"""Exact tools for multiple translative and lattice tilings of the plane by
centrally symmetric polygons."""

from .bolle import (
    BolleReport,
    Theorem1Certificate,
    bolle_check,
    det_A,
    lemma5_beta,
    tau_star_search,
    theorem1_pipeline,
)
from .errors import MultitileError
from .field import Scalar, format_scalar, is_rational, parse_scalar, scalar_sign
from .geometry import Segment, SymPolygon, Vec, area, edge_vectors, locate_point
from .instance import InstanceFile, format_instance, load_instance, parse_instance
from .lattice import Lattice2, TranslatedLattice, Z2, member, scale
from .svg import Window, render_svg
from .tiling import TileMultiset, lemma3_check, multiplicity_at, normal_point_scan, structure_check
from .verify import TilingCertificate, common_sublattice, verify_exact, verify_sampled

__version__ = "0.1.0"
