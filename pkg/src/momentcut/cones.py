"""Local moment cones built from slice-representation weight data."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, InputShapeError, NotAConeError, PointNotInSetError
from .exact import fmt_vec, identity, is_zero, mat_mul, mat_vec, nullspace, primitive, qvec, transpose
from .polyhedra import HPolyhedron, Polyhedron, intersect, project, tangent_cone


@dataclass(frozen=True)
class SliceRepData:
    """Weights of a slice representation of a torus stabilizer.

    ``stabilizer_subalgebra`` rows are a basis ``b_1..b_k`` of ``h`` in ``t``;
    weights are written in the dual basis of ``h*``.  ``lift`` is a
    ``dim x k`` matrix sending ``h*`` to ``t*``; restricting a lifted weight
    back to ``h`` must return the weight.
    """

    ambient_dim: int
    stabilizer_subalgebra: tuple
    weights: tuple
    lift: tuple
    structure_group_order: int = 1
    point: tuple | None = None

    def __post_init__(self):
        d = self.ambient_dim
        basis = tuple(qvec(b) for b in self.stabilizer_subalgebra)
        k = len(basis)
        if any(len(b) != d for b in basis):
            raise InputShapeError("subalgebra basis rows must have ambient_dim entries")
        weights = tuple(qvec(w) for w in self.weights)
        if any(len(w) != k for w in weights):
            raise InputShapeError(f"weights must have {k} coordinates")
        lift = tuple(qvec(r) for r in self.lift) if k else tuple(() for _ in range(d))
        if len(lift) != d or any(len(r) != k for r in lift):
            raise InputShapeError(f"lift must be a {d} x {k} matrix")
        if k and mat_mul(basis, lift) != identity(k):
            raise InputShapeError("lift is not a splitting of the restriction to h")
        if self.structure_group_order < 1:
            raise InputShapeError("structure group order must be positive")
        object.__setattr__(self, "stabilizer_subalgebra", basis)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "lift", lift)
        if self.point is not None:
            object.__setattr__(self, "point", qvec(self.point))

    @classmethod
    def full_torus(cls, weights, dim=None, order=1, point=None):
        """Data for a fixed point: ``h = t`` with the identity splitting."""
        weights = [qvec(w) for w in weights]
        d = dim if dim is not None else len(weights[0])
        return cls(d, identity(d), tuple(weights), identity(d), order, point)


@dataclass(frozen=True)
class LocalMomentCone:
    """``vertex + span(lineality) + cone(generators)``."""

    vertex: tuple
    lineality: tuple
    generators: tuple
    polyhedron: Polyhedron | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.polyhedron is None:
            p = Polyhedron.from_v(
                [self.vertex], self.generators, self.lineality, dim=len(self.vertex)
            )
            object.__setattr__(self, "polyhedron", p)

    @property
    def dim(self) -> int:
        return len(self.vertex)


def local_moment_cone(x, data: SliceRepData) -> LocalMomentCone:
    x = qvec(x)
    if len(x) != data.ambient_dim:
        raise InputShapeError("point dimension mismatch")
    h = data.stabilizer_subalgebra
    d = data.ambient_dim
    lin = nullspace(h, d) if h else [tuple(r) for r in identity(d)]
    gens = [mat_vec(data.lift, w) for w in data.weights]
    gens = [primitive(g) for g in gens if not is_zero(g)]
    return LocalMomentCone(x, tuple(primitive(v) for v in lin), tuple(gens))


def check_local_cone_theorem(delta: Polyhedron, x, c: LocalMomentCone) -> bool:
    """Whether the tangent cone of ``delta`` at ``x`` is exactly ``c``."""
    x = qvec(x)
    if not delta.contains(x):
        raise PointNotInSetError(f"{fmt_vec(x)} is not in delta")
    return tangent_cone(delta, x) == c.polyhedron


def project_hat_cone(hat: Polyhedron, chamber: HPolyhedron | None = None) -> Polyhedron:
    """Drop the first coordinate of ``hat & (R_+ x chamber)``."""
    d = hat.dim - 1
    if d < 1:
        raise InputShapeError("hat cone needs at least two coordinates")
    v = hat.vrep
    origin = tuple(Fraction(0) for _ in range(hat.dim))
    if hat.is_empty or v.vertices != (origin,):
        raise NotAConeError("hat is not a cone with vertex at the origin")
    rows = [((1,) + (0,) * d, 0)]
    eqs = []
    if chamber is not None:
        if chamber.dim != d:
            raise InputShapeError("chamber dimension mismatch")
        rows += [((0,) + tuple(s.normal), s.offset) for s in chamber.halfspaces]
        eqs += [((0,) + tuple(e.normal), e.offset) for e in chamber.equalities]
    q = intersect(hat, Polyhedron.from_h(hat.dim, rows, eqs))
    drop_t = [tuple(int(j == i + 1) for j in range(hat.dim)) for i in range(d)]
    return project(q, drop_t)


def scale_polyhedron(p: Polyhedron, center, t) -> Polyhedron:
    """Image of ``p`` under ``y -> center + t (y - center)``."""
    center = qvec(center)
    t = Fraction(t)
    if p.is_empty:
        return p
    verts, rays, lin = p.generators()
    return Polyhedron.from_v(
        [tuple(c + t * (y - c) for y, c in zip(x, center)) for x in verts], rays, lin, dim=p.dim
    )


def scale_invariance_check(c: LocalMomentCone, t) -> bool:
    """Scaling about the vertex by ``t > 0`` maps the cone onto itself."""
    t = Fraction(t)
    if t <= 0:
        raise DomainError("scale factor must be positive")
    return scale_polyhedron(c.polyhedron, c.vertex, t) == c.polyhedron
