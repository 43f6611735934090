"""
quiver-tilt - exact homological algebra over quiver algebras

Hom and Ext of modules over kQ/I, projective resolutions, the homotopy category
of bounded complexes of projectives, and verification of tilting complexes,
all computed exactly over Q or a prime field.
"""

from quiver_tilt.workbench import Workbench
from quiver_tilt.config import Config
from quiver_tilt.exceptions import QuiverTiltError
from quiver_tilt.scalars import ExactField, Matrix
from quiver_tilt.quiver import Arrow, Path, Quiver, linear_quiver, quiver_e
from quiver_tilt.algebra import BasicAlgebra, Relation, TableAlgebra, build_r, build_s, path_algebra, quotient
from quiver_tilt.modrep import Representation, ModuleMap, ext, hom, projective, projective_resolution, simple
from quiver_tilt.complexes import ChainMap, Complex, cone, homotopy_hom, shift, splits_into_homology
from quiver_tilt.tilting import TiltingCandidate, TiltingReport, build_paper_tilting, verify_tilting
from quiver_tilt.repclass import classify_underlying_graph, finite_type_certificate
from quiver_tilt.repro import ReproReport, paper_repro

__version__ = "0.1.0"

__all__ = [
    "Workbench",
    "Config",
    "QuiverTiltError",
    "ExactField",
    "Matrix",
    "Arrow",
    "Path",
    "Quiver",
    "linear_quiver",
    "quiver_e",
    "BasicAlgebra",
    "Relation",
    "TableAlgebra",
    "build_r",
    "build_s",
    "path_algebra",
    "quotient",
    "Representation",
    "ModuleMap",
    "ext",
    "hom",
    "projective",
    "projective_resolution",
    "simple",
    "ChainMap",
    "Complex",
    "cone",
    "homotopy_hom",
    "shift",
    "splits_into_homology",
    "TiltingCandidate",
    "TiltingReport",
    "build_paper_tilting",
    "verify_tilting",
    "classify_underlying_graph",
    "finite_type_certificate",
    "ReproReport",
    "paper_repro",
]
