"""Faces, intersections, tangent cones, reconstruction and closures.

Face indices always refer to the canonical halfspace list ``p.hrep``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import (
    InputShapeError,
    InsufficientWitnessError,
    NoRoomError,
    PointNotInSetError,
    PreconditionError,
    UnboundedInputError,
)
from ..exact import ZERO, dot, fmt_vec, qvec, rank, sub
from .core import HPolyhedron, HalfSpace, Polyhedron


@dataclass(frozen=True)
class FaceDescriptor:
    """A nonempty face, identified by the canonical halfspaces tight on it.

    ``vertex_ids`` / ``ray_ids`` index ``p.vrep`` and list the generators
    lying in the face.
    """

    active_set: frozenset
    dim: int
    relint_point: tuple
    vertex_ids: tuple = field(default=(), compare=False)
    ray_ids: tuple = field(default=(), compare=False)


def incidence(p: Polyhedron):
    """Zero sets of the canonical generators: ``(vertex_sets, ray_sets)``."""
    h, v = p.hrep, p.vrep
    vz = [frozenset(i for i, s in enumerate(h.halfspaces) if s.slack(x) == 0) for x in v.vertices]
    rz = [frozenset(i for i, s in enumerate(h.halfspaces) if dot(s.normal, r) == 0) for r in v.rays]
    return vz, rz


def _face(p: Polyhedron, active: frozenset, vz, rz) -> FaceDescriptor:
    v = p.vrep
    vids = tuple(i for i, z in enumerate(vz) if active <= z)
    rids = tuple(i for i, z in enumerate(rz) if active <= z)
    verts = [v.vertices[i] for i in vids]
    rays = [v.rays[i] for i in rids]
    spanning = [sub(x, verts[0]) for x in verts[1:]] + list(rays) + list(v.lineality)
    d = rank(spanning, p.dim) if spanning else 0
    n = len(verts)
    x = [sum((q[i] for q in verts), ZERO) / n for i in range(p.dim)]
    for r in rays:
        x = [a + b for a, b in zip(x, r)]
    return FaceDescriptor(frozenset(active), d, tuple(x), vids, rids)


def faces(p: Polyhedron) -> list:
    """All nonempty faces of ``p``, sorted by dimension then active set."""
    if p.is_empty:
        return []
    vz, rz = incidence(p)
    found = set(vz)
    frontier = list(found)
    gens = vz + rz
    while frontier:
        nxt = []
        for a in frontier:
            for z in gens:
                b = a & z
                if b not in found:
                    found.add(b)
                    nxt.append(b)
        frontier = nxt
    out = [_face(p, a, vz, rz) for a in found]
    out.sort(key=lambda f: (f.dim, sorted(f.active_set)))
    return out


def face_of_point(p: Polyhedron, x) -> FaceDescriptor:
    """The face whose relative interior contains ``x``."""
    x = qvec(x)
    if not p.contains(x):
        raise PointNotInSetError(f"{fmt_vec(x)} is not in the polyhedron")
    vz, rz = incidence(p)
    return _face(p, p.active_set(x), vz, rz)


def face_polyhedron(p: Polyhedron, face: FaceDescriptor) -> Polyhedron:
    """The closed face as a polyhedron."""
    h = p.hrep
    ineqs = [(s.normal, s.offset) for i, s in enumerate(h.halfspaces) if i not in face.active_set]
    eqs = [(s.normal, s.offset) for i, s in enumerate(h.halfspaces) if i in face.active_set]
    eqs += [(e.normal, e.offset) for e in h.equalities]
    return Polyhedron.from_h(p.dim, ineqs, eqs)


def _rows(p: Polyhedron):
    h = p.h if p.h is not None else p.hrep
    return (
        [(s.normal, s.offset) for s in h.halfspaces],
        [(e.normal, e.offset) for e in h.equalities],
    )


def intersect(*ps: Polyhedron) -> Polyhedron:
    """Intersection; the result is built from the concatenated H-rows."""
    if not ps:
        raise InputShapeError("intersect() needs at least one polyhedron")
    dim = ps[0].dim
    if any(q.dim != dim for q in ps):
        raise InputShapeError("intersect() of polyhedra in different dimensions")
    ineqs, eqs = [], []
    for q in ps:
        i, e = _rows(q)
        ineqs += i
        eqs += e
    return Polyhedron(h=HPolyhedron.from_rows(dim, ineqs, eqs))


def tangent_cone(p: Polyhedron, x) -> Polyhedron:
    """Closed cone with vertex ``x`` generated by ``p - x``."""
    x = qvec(x)
    if len(x) != p.dim:
        raise InputShapeError("point dimension mismatch")
    if not p.contains(x):
        raise PointNotInSetError(f"{fmt_vec(x)} is not in the polyhedron")
    h = p.hrep
    ineqs = [(s.normal, s.offset) for s in h.halfspaces if s.slack(x) == 0]
    eqs = [(e.normal, e.offset) for e in h.equalities]
    return Polyhedron.from_h(p.dim, ineqs, eqs)


def face_witnesses(p: Polyhedron, s: Polyhedron) -> list:
    """A relative-interior point of every face of ``p`` whose relint meets ``s``.

    Faces of ``p & s`` have relative interiors inside single faces of ``p``,
    and every face of ``p`` meeting ``s`` in its relint contains one.
    """
    return [f.relint_point for f in faces(intersect(p, s))]


def reconstruct_from_tangent_cones(x_set: Iterable, p: Polyhedron, s: Polyhedron) -> Polyhedron:
    """``(intersection of tangent_cone(p, x) for x in x_set) & s``.

    Equals ``p & s`` when ``x_set`` meets the relative interior of every face
    of ``p`` that meets ``s``; otherwise raises InsufficientWitnessError.
    """
    if p.dim != s.dim:
        raise InputShapeError("dimension mismatch")
    ineqs, eqs = _rows(s)
    for x in x_set:
        x = qvec(x)
        if not s.contains(x):
            raise PointNotInSetError(f"witness {fmt_vec(x)} is not in s")
        i, e = _rows(tangent_cone(p, x))
        ineqs += i
        eqs += e
    result = Polyhedron(h=HPolyhedron.from_rows(p.dim, ineqs, eqs))
    if result != intersect(p, s):
        raise InsufficientWitnessError("witness set misses a face; cone intersection is too large")
    return result


def vertex_facet_counts(p: Polyhedron) -> list:
    vz, _ = incidence(p)
    return [len(z) for z in vz]


def is_simple(p: Polyhedron, require_bounded: bool = True) -> bool:
    """Every vertex lies on exactly ``affine_dim`` facets."""
    if require_bounded and not p.is_bounded:
        raise UnboundedInputError("is_simple() expects a polytope")
    if p.is_empty:
        return True
    d = p.affine_dim
    if p.vrep.lineality:
        return True
    return all(c == d for c in vertex_facet_counts(p))


def minimize_linear(p: Polyhedron, xi):
    """Exact ``min <x, xi>`` over ``p`` and the face where it is attained.

    Returns ``(-math.inf, None)`` when the functional is unbounded below.
    """
    xi = qvec(xi)
    if len(xi) != p.dim:
        raise InputShapeError("functional dimension mismatch")
    if p.is_empty:
        raise PreconditionError("minimize_linear() on the empty set")
    v = p.vrep
    if any(dot(xi, l) != 0 for l in v.lineality) or any(dot(xi, r) < 0 for r in v.rays):
        return -math.inf, None
    vals = [dot(xi, x) for x in v.vertices]
    m = min(vals)
    vz, rz = incidence(p)
    active = None
    for i, val in enumerate(vals):
        if val == m:
            active = vz[i] if active is None else active & vz[i]
    for i, r in enumerate(v.rays):
        if dot(xi, r) == 0:
            active &= rz[i]
    return m, _face(p, active, vz, rz)


def closure_of_face_intersection(cone: Polyhedron, face: FaceDescriptor, p: Polyhedron) -> Polyhedron:
    """``closure(relint(face) & p)``, returned as ``closed_face & p``.

    The two agree when ``relint(face)`` meets ``relint(p)``; that is checked
    through the barycenter of ``closed_face & p``, which lies in both
    relative interiors exactly when they meet.
    """
    closed = face_polyhedron(cone, face)
    q = intersect(closed, p)
    if q.is_empty:
        raise PreconditionError("the open face does not meet the relative interior of p")
    y = q.relint_point()
    if not (closed.relint_contains(y) and p.relint_contains(y)):
        raise PreconditionError("the open face does not meet the relative interior of p")
    return q


def _hview(p: Polyhedron) -> HPolyhedron:
    return p.h if p.h is not None else p.hrep


def fit_generic_polytope(k: Polyhedron, sigma: HPolyhedron, seed: int = 0, max_tries: int = 64) -> Polyhedron:
    """A simple rational polytope ``P`` with ``k`` in ``int(P)`` and ``P`` in ``int(sigma)``.

    Starts from the hull of small cross-polytopes around the vertices of
    ``k`` and, if that is not simple, pushes facets outward by small random
    rational amounts until it is.
    """
    if not k.is_bounded:
        raise UnboundedInputError("fit_generic_polytope() expects a bounded set")
    if k.is_empty:
        raise PreconditionError("fit_generic_polytope() of the empty set")
    if k.dim != sigma.dim:
        raise InputShapeError("dimension mismatch")
    if sigma.equalities:
        raise NoRoomError("sigma has empty interior")
    d = k.dim
    verts = k.vrep.vertices

    def room(points):
        m = None
        for s in sigma.halfspaces:
            for x in points:
                sl = s.slack(x) / sum(abs(c) for c in s.normal)
                m = sl if m is None or sl < m else m
        return m

    slack = room(verts)
    if slack is not None and slack <= 0:
        raise NoRoomError("k touches the boundary of sigma")
    # radius: a power of 1/2 below half the normalised slack
    r = Fraction(1)
    if slack is not None:
        while r > slack / 2:
            r /= 2
    pts = []
    for x in verts:
        for i in range(d):
            for sgn in (1, -1):
                y = list(x)
                y[i] += sgn * r
                pts.append(tuple(y))
    base = Polyhedron.from_v(pts)
    if is_simple(base) and _strictly_inside(base, sigma):
        return base
    rng = random.Random(seed)
    h = base.hrep
    eps = r / 4
    for _ in range(max_tries):
        rows = [
            (s.normal, s.offset - eps * Fraction(rng.randint(1, 997), 997)) for s in h.halfspaces
        ]
        cand = Polyhedron.from_h(d, rows)
        if is_simple(cand) and _strictly_inside(cand, sigma):
            return cand
        if not _strictly_inside(cand, sigma):
            eps /= 2
    raise NoRoomError("could not find a generic polytope; sigma leaves too little room")


def _strictly_inside(p: Polyhedron, sigma: HPolyhedron) -> bool:
    return all(s.slack(x) > 0 for s in sigma.halfspaces for x in p.vrep.vertices)
