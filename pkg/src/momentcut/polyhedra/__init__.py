from .core import (
    Equation,
    HalfSpace,
    HPolyhedron,
    Polyhedron,
    VPolyhedron,
    canonical_h,
    canonical_v,
    empty_h,
    h_to_v,
    v_to_h,
)
from .fm import eliminate, project
from .ops import (
    FaceDescriptor,
    closure_of_face_intersection,
    face_of_point,
    face_polyhedron,
    face_witnesses,
    faces,
    fit_generic_polytope,
    incidence,
    intersect,
    is_simple,
    minimize_linear,
    reconstruct_from_tangent_cones,
    tangent_cone,
)
