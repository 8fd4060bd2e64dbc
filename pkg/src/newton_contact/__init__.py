"""Newton polyhedra, nondegeneracy and order of contact for real hypersurfaces.

Mixed polynomials in ``z`` and ``conj(z)`` are handled with exact Gaussian
rational coefficients.  The main entry points are re-exported here.
"""

__version__ = "0.1.0"

from .gaussian import INF, GaussianRational  # noqa: E402
from .mixedpoly import MixedPolynomial, face_part, principal_part, substitute_curve  # noqa: E402
from .parser import ParseError, parse  # noqa: E402
from .polyhedron import LatticePolyhedron, FaceHandle, newton_distance, of, regular_face, support_min  # noqa: E402
from .curves import JetCurve, MonomialCurve, parse_curve  # noqa: E402
from .contact import ContactReport, order_of_contact  # noqa: E402
from .nondegen import NondegeneracyVerdict, SearchOptions, Status, check_all, check_face  # noqa: E402
from .oracle import OracleResult, SearchConfig, sup_contact_lower_bound  # noqa: E402
from .hypersurface import (ModelHypersurface, TypeReport, compute_type, improve_coordinate,  # noqa: E402
                           iterate_improvement, normalize)
from .classify import classify  # noqa: E402

__all__ = [
    "__version__", "INF", "GaussianRational", "MixedPolynomial", "face_part", "principal_part",
    "substitute_curve", "ParseError", "parse", "LatticePolyhedron", "FaceHandle", "newton_distance", "of",
    "regular_face", "support_min", "JetCurve", "MonomialCurve", "parse_curve", "ContactReport",
    "order_of_contact", "NondegeneracyVerdict", "SearchOptions", "Status", "check_all", "check_face",
    "OracleResult", "SearchConfig", "sup_contact_lower_bound", "ModelHypersurface", "TypeReport",
    "compute_type", "improve_coordinate", "iterate_improvement", "normalize", "classify",
]
