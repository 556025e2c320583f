"""Hamiltonian cycles of leapfrog extensions through spanning trees of faces."""

from .catalog import catalog
from .config import Guards
from .errors import FormatError, HypothesisViolation, VerificationFailure
from .face_trees import FaceTree, build_face_tree, validate_face_tree
from .formats import decode_planar_code, encode_planar_code, format_text, parse_text
from .hamiltonian import hamiltonian_pipeline, verify_hamiltonian
from .planar_core import PlaneGraph, build_plane_graph, dual
from .transforms import contract_factor, leapfrog, truncate

__version__ = "0.1.0"

__all__ = [
    "FaceTree",
    "FormatError",
    "Guards",
    "HypothesisViolation",
    "PlaneGraph",
    "VerificationFailure",
    "build_face_tree",
    "build_plane_graph",
    "catalog",
    "contract_factor",
    "decode_planar_code",
    "dual",
    "encode_planar_code",
    "format_text",
    "hamiltonian_pipeline",
    "leapfrog",
    "parse_text",
    "truncate",
    "validate_face_tree",
    "verify_hamiltonian",
]
