"""Exact geometry of polytopal normed spaces: absorbing angles,
antipodality and Steiner minimal trees."""

from ._kernel import BACKEND
from .angles import (
    AbsorbingCertificate,
    AngleQuery,
    absorbing_certificate,
    absorbing_oracle,
    angle_contains,
    is_absorbing,
)
from .antipodality import is_antipodal, is_cl_space, is_steiner_antipodal
from .exactgeom import InputError, LpProblem, LpSolution, LpStatus, lp_solve
from .hanner import build_hanner, l1_sum, linf_sum, parse_hanner, rhombic_dodecahedron
from .norm import (
    PolytopalNorm,
    dual_norm_eval,
    dual_vectors,
    is_regular_direction,
    norm_eval,
    normalize,
)
from .polytope import (
    Face,
    Polytope,
    exposed_face,
    face_distance,
    face_lattice,
    faces_disjoint,
    from_vertices,
    polar_dual,
)
from .steiner import (
    Instance,
    SteinerTopology,
    SteinerTreeResult,
    enumerate_topologies,
    exact_smt,
    improve_tree,
    optimize_topology,
    star_is_smt,
    tree_length,
    verify_plane_theorem,
    verify_theorem_chain,
)

__version__ = "0.1.0"
