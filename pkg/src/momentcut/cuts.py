"""Symplectic cuts at the level of labeled moment polytopes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputShapeError, NonGenericCutError, PointNotVertexError
from .exact import IntegerLattice, dot, fmt_vec, primitive, qvec, rank, sub
from .polyhedra import (
    FaceDescriptor,
    HPolyhedron,
    Polyhedron,
    face_polyhedron,
    faces,
    intersect,
    is_simple,
)


@dataclass(frozen=True)
class LabeledPolytope:
    """A simple rational polyhedron with positive integer facet labels.

    Labels are keyed by index into ``polytope.hrep.halfspaces``; missing
    facets default to label 1.
    """

    polytope: Polyhedron
    facet_labels: dict = field(default_factory=dict)
    lattice: IntegerLattice | None = None

    def __post_init__(self):
        n = len(self.polytope.hrep.halfspaces)
        labels = {int(k): int(v) for k, v in self.facet_labels.items()}
        for k, v in labels.items():
            if not 0 <= k < n:
                raise InputShapeError(f"label for nonexistent facet {k}")
            if v < 1:
                raise InputShapeError(f"facet labels must be positive, got {v}")
        full = {i: labels.get(i, 1) for i in range(n)}
        object.__setattr__(self, "facet_labels", full)
        if self.lattice is None:
            object.__setattr__(self, "lattice", IntegerLattice.standard(self.polytope.dim))
        if not is_simple(self.polytope, require_bounded=False):
            raise InputShapeError("labeled polytopes must be simple")

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def __eq__(self, other):
        if not isinstance(other, LabeledPolytope):
            return NotImplemented
        return self.polytope == other.polytope and self.facet_labels == other.facet_labels

    def __hash__(self):
        return hash((self.polytope, tuple(sorted(self.facet_labels.items()))))


@dataclass(frozen=True)
class CutSpec:
    """The cutting polyhedron ``{x : <x, v_j> >= b_j}``."""

    p: HPolyhedron

    @property
    def polyhedron(self) -> Polyhedron:
        return Polyhedron(h=self.p)

    @property
    def dim(self) -> int:
        return self.p.dim

    @classmethod
    def from_rows(cls, dim, ineqs, eqs=()):
        return cls(HPolyhedron.from_rows(dim, ineqs, eqs))


@dataclass(frozen=True)
class CutResult:
    cut: LabeledPolytope
    strata: tuple
    compact: bool
    metadata: dict = field(default_factory=dict)


def _aff_dim_of_intersection(a: Polyhedron, fa: FaceDescriptor, b: Polyhedron, fb: FaceDescriptor):
    """Dimension of ``aff(fa) & aff(fb)``, or None if that is empty."""
    rows = []
    for p, f in ((a, fa), (b, fb)):
        h = p.hrep
        rows += [(s.normal, s.offset) for i, s in enumerate(h.halfspaces) if i in f.active_set]
        rows += [(e.normal, e.offset) for e in h.equalities]
    d = a.dim
    if not rows:
        return d
    coeffs = [tuple(r[0]) for r in rows]
    aug = [tuple(r[0]) + (r[1],) for r in rows]
    rk = rank(coeffs, d)
    if rank(aug, d + 1) > rk:
        return None
    return d - rk


def is_generic_cut(m: LabeledPolytope, p: CutSpec):
    """``(ok, witness)``: transversality of all face pairs plus simplicity.

    ``witness`` is the first offending ``(face of m, face of p)`` pair, or
    ``None``.  When every pair is transversal but the intersection is not
    simple, the witness is ``(None, None)``.
    """
    if m.dim != p.dim:
        raise InputShapeError("cut and polytope live in different dimensions")
    a, b = m.polytope, p.polyhedron
    d = a.dim
    fa_all, fb_all = faces(a), faces(b)
    for fa in fa_all:
        ca = face_polyhedron(a, fa)
        for fb in fb_all:
            if intersect(ca, face_polyhedron(b, fb)).is_empty:
                continue
            got = _aff_dim_of_intersection(a, fa, b, fb)
            if got != fa.dim + fb.dim - d:
                return False, (fa, fb)
    q = intersect(a, b)
    if not q.is_empty and not is_simple(q, require_bounded=False):
        return False, (None, None)
    return True, None


def _describe(witness) -> str:
    fa, fb = witness
    if fa is None:
        return "cut is not generic: the intersection is not simple"
    return (
        f"cut is not generic: the {fa.dim}-face at {fmt_vec(fa.relint_point)} of the polytope "
        f"meets the {fb.dim}-face at {fmt_vec(fb.relint_point)} of the cut non-transversally"
    )


def _direction_space(p: Polyhedron, f: FaceDescriptor) -> list:
    v = p.vrep
    verts = [v.vertices[i] for i in f.vertex_ids]
    out = [sub(x, verts[0]) for x in verts[1:]]
    out += [v.rays[i] for i in f.ray_ids]
    out += list(v.lineality)
    return out


def _facet_source(q: Polyhedron, k: int, m: Polyhedron):
    """Index of the facet of ``m`` supporting facet ``k`` of ``q``, or None."""
    fq = face_polyhedron(q, _facet_face(q, k))
    verts, rays, lin = fq.generators()
    for i, s in enumerate(m.hrep.halfspaces):
        if all(s.slack(x) == 0 for x in verts) and all(dot(s.normal, r) == 0 for r in rays + lin):
            return i
    return None


def _facet_face(q: Polyhedron, k: int) -> FaceDescriptor:
    return FaceDescriptor(frozenset([k]), q.affine_dim - 1, ())


def symplectic_cut(m: LabeledPolytope, p: CutSpec) -> CutResult:
    """Cut ``m`` by ``p``: polytope ``m & p``, old labels kept, new facets labelled 1."""
    ok, witness = is_generic_cut(m, p)
    if not ok:
        raise NonGenericCutError(_describe(witness), witness)
    q = intersect(m.polytope, p.polyhedron)
    labels = {}
    for k in range(len(q.hrep.halfspaces)):
        src = _facet_source(q, k, m.polytope)
        labels[k] = 1 if src is None else m.facet_labels[src]
    cut = LabeledPolytope(q, labels, m.lattice)
    strata = []
    if not q.is_empty:
        for f in faces(q):
            strata.append((f, annihilator_of_face(q, f, m.lattice)))
    meta = {}
    if any(v > 1 for v in m.facet_labels.values()):
        meta["label_propagation"] = "unverified: input carries labels > 1"
    return CutResult(cut, tuple(strata), q.is_bounded, meta)


def annihilator_of_face(p: Polyhedron, f: FaceDescriptor, lattice: IntegerLattice) -> IntegerLattice:
    from .exact import annihilator_lattice

    span = _direction_space(p, f)
    return annihilator_lattice(span, lattice)


def is_compact_cut(m: LabeledPolytope, p: CutSpec) -> bool:
    return intersect(m.polytope, p.polyhedron).is_bounded


def vertex_weights(m: LabeledPolytope | Polyhedron, v) -> list:
    """Primitive edge directions at the vertex ``v``, sorted."""
    poly = m.polytope if isinstance(m, LabeledPolytope) else m
    v = qvec(v)
    verts = poly.vrep.vertices
    if poly.vrep.lineality or v not in verts:
        raise PointNotVertexError(f"{fmt_vec(v)} is not a vertex")
    idx = verts.index(v)
    out = []
    for f in faces(poly):
        if f.dim != 1 or idx not in f.vertex_ids:
            continue
        if len(f.vertex_ids) == 2:
            other = verts[f.vertex_ids[0] if f.vertex_ids[1] == idx else f.vertex_ids[1]]
            out.append(primitive(sub(other, v)))
        else:
            out.append(tuple(poly.vrep.rays[f.ray_ids[0]]))
    return sorted(out)
