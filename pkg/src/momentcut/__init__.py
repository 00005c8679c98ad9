"""Exact polyhedral tools for moment polytopes, Weyl chambers and symplectic cuts."""
from ._kernels import BACKEND
from .errors import *  # noqa: F401,F403
from .exact import IntegerLattice, annihilator_lattice, hermite_normal_form, primitive
from .polyhedra import HalfSpace, HPolyhedron, Polyhedron, VPolyhedron
from .lie import RootSystem, build_root_system, chamber, dominant_projection, principal_wall, walls, weyl_orbit
from .cuts import CutSpec, LabeledPolytope, is_generic_cut, symplectic_cut, vertex_weights
from .cones import LocalMomentCone, SliceRepData, local_moment_cone
from .oracle import SampleCloud, Spectrum, ToleranceConfig, kostant_polytope, permutohedron, schur_horn_sample
from .pipeline import MomentSetCertificate, certify_moment_set, cut_then_certify

__version__ = "0.1.0"
