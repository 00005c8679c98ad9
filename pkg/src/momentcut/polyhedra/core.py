"""Exact rational polyhedra in dual representation.

A :class:`Polyhedron` carries an H-representation, a V-representation, or
both.  The canonical forms (``hrep`` / ``vrep``) are computed lazily by
double description and are unique for a given point set, so structural
equality of canonical forms is set equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ..errors import InputShapeError, ZeroVectorError
from ..exact import (
    ZERO,
    dot,
    integerize,
    primitive,
    project_out,
    qvec,
    rref,
    solve,
    sub,
)
from .dd import cone_generators


def _check_primitive(normal):
    if not any(normal):
        raise ZeroVectorError("normal vector is zero")
    if any(not isinstance(x, int) for x in normal):
        raise InputShapeError("normal must be an integer vector")
    g = 0
    for x in normal:
        g = gcd(g, x)
    if g != 1:
        raise InputShapeError(f"normal {normal} is not primitive")


@dataclass(frozen=True, order=True)
class HalfSpace:
    """``{x : <normal, x> >= offset}`` with a primitive integer normal."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        _check_primitive(self.normal)

    @classmethod
    def make(cls, normal: Sequence, offset) -> "HalfSpace":
        """Rescale a rational ``(normal, offset)`` by a positive factor."""
        iv = integerize(normal)
        p = primitive(iv)
        k = next(i for i, x in enumerate(p) if x)
        factor = Fraction(p[k]) / Fraction(normal[k])
        return cls(p, Fraction(offset) * factor)

    def slack(self, x) -> Fraction:
        return dot(self.normal, x) - self.offset


@dataclass(frozen=True, order=True)
class Equation:
    """``{x : <normal, x> = offset}`` with a primitive integer normal."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        _check_primitive(self.normal)

    @classmethod
    def make(cls, normal: Sequence, offset) -> "Equation":
        h = HalfSpace.make(normal, offset)
        return cls(h.normal, h.offset)

    def residual(self, x) -> Fraction:
        return dot(self.normal, x) - self.offset


@dataclass(frozen=True)
class HPolyhedron:
    dim: int
    halfspaces: tuple = ()
    equalities: tuple = ()

    def __post_init__(self):
        for h in self.halfspaces + self.equalities:
            if len(h.normal) != self.dim:
                raise InputShapeError(f"normal of length {len(h.normal)} in dimension {self.dim}")

    @classmethod
    def from_rows(cls, dim: int, ineqs: Iterable = (), eqs: Iterable = ()) -> "HPolyhedron":
        """Build from rational ``(normal, offset)`` rows.

        Trivial rows (zero normal) are dropped if satisfied; an unsatisfiable
        trivial row yields the canonical empty H-representation.
        """
        hs, es = [], []
        for normal, b in ineqs:
            normal, b = qvec(normal), Fraction(b)
            if len(normal) != dim:
                raise InputShapeError(f"row of length {len(normal)} in dimension {dim}")
            if not any(normal):
                if b > 0:
                    return empty_h(dim)
                continue
            hs.append(HalfSpace.make(normal, b))
        for normal, b in eqs:
            normal, b = qvec(normal), Fraction(b)
            if len(normal) != dim:
                raise InputShapeError(f"row of length {len(normal)} in dimension {dim}")
            if not any(normal):
                if b != 0:
                    return empty_h(dim)
                continue
            es.append(Equation.make(normal, b))
        return cls(dim, tuple(hs), tuple(es))

    def contains(self, x) -> bool:
        return all(e.residual(x) == 0 for e in self.equalities) and all(
            h.slack(x) >= 0 for h in self.halfspaces
        )


def empty_h(dim: int) -> HPolyhedron:
    e = tuple(int(i == 0) for i in range(dim))
    return HPolyhedron(
        dim,
        (HalfSpace(tuple(-x for x in e), Fraction(1)), HalfSpace(e, ZERO)),
        (),
    )


@dataclass(frozen=True)
class VPolyhedron:
    """``conv(vertices) + cone(rays) + span(lineality)``; empty iff no vertices."""

    dim: int
    vertices: tuple = ()
    rays: tuple = ()
    lineality: tuple = ()

    def __post_init__(self):
        for v in self.vertices + self.rays + self.lineality:
            if len(v) != self.dim:
                raise InputShapeError(f"generator of length {len(v)} in dimension {self.dim}")

    @property
    def is_empty(self) -> bool:
        return not self.vertices


# -- canonical forms ----------------------------------------------------------


def _canon_lineality(lineality):
    if not lineality:
        return ()
    red, _ = rref(lineality)
    return tuple(primitive(r) for r in red)


def canonical_v(dim, vertices, rays=(), lineality=()) -> VPolyhedron:
    """Canonical V-form of already-minimal generators.

    Lineality is stored as primitive RREF rows; vertices and rays are
    projected orthogonally off the lineality space and sorted.
    """
    if not vertices:
        return VPolyhedron(dim)
    lin = _canon_lineality([tuple(l) for l in lineality])
    verts = sorted({project_out(v, lin) for v in vertices})
    rs = sorted({primitive(project_out(r, lin)) for r in rays})
    return VPolyhedron(dim, tuple(verts), tuple(rs), lin)


def canonical_h(dim, ineqs, eqs) -> HPolyhedron:
    """Canonical H-form of an irredundant, nonempty description.

    Equalities become the primitive-scaled RREF of ``[E | e]``; inequality
    normals are projected off the equality span and rescaled to primitive.
    """
    eqs = [(qvec(a), Fraction(b)) for a, b in eqs]
    equations = []
    xp = None
    normals = []
    if eqs:
        red, pivots = rref([a + (b,) for a, b in eqs], dim + 1)
        if dim in pivots:
            return empty_h(dim)
        for row in red:
            equations.append(Equation.make(row[:dim], row[dim]))
        normals = [e.normal for e in equations]
        xp = solve(normals, [e.offset for e in equations])
    halfspaces = set()
    for a, b in ineqs:
        a, b = qvec(a), Fraction(b)
        if normals:
            ap = project_out(a, normals)
            b = b - dot(sub(a, ap), xp)
            a = ap
        if not any(a):
            if b > 0:
                return empty_h(dim)
            continue
        halfspaces.add(HalfSpace.make(a, b))
    return HPolyhedron(dim, tuple(sorted(halfspaces)), tuple(sorted(equations)))


# -- conversions --------------------------------------------------------------


def h_to_v(p: HPolyhedron) -> VPolyhedron:
    """Vertices, extreme rays and lineality of an H-polyhedron."""
    n = p.dim + 1
    ineqs = [(-h.offset,) + tuple(h.normal) for h in p.halfspaces]
    ineqs.append((1,) + (0,) * p.dim)
    eqs = [(-e.offset,) + tuple(e.normal) for e in p.equalities]
    lin, rays = cone_generators(ineqs, eqs, n)
    vertices, prays = [], []
    for r in rays:
        if r[0] > 0:
            vertices.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            prays.append(r[1:])
    if not vertices:
        return VPolyhedron(p.dim)
    return canonical_v(p.dim, vertices, prays, [l[1:] for l in lin])


def v_to_h(p: VPolyhedron) -> HPolyhedron:
    """Irredundant H-representation (facets and affine hull) of a V-polyhedron."""
    if p.is_empty:
        return empty_h(p.dim)
    n = p.dim + 1
    gens = [(1,) + tuple(v) for v in p.vertices] + [(0,) + tuple(r) for r in p.rays]
    eqs = [(0,) + tuple(l) for l in p.lineality]
    lin, rays = cone_generators(gens, eqs, n)
    ineqs = [(r[1:], Fraction(-r[0])) for r in rays if any(r[1:])]
    equalities = [(l[1:], Fraction(-l[0])) for l in lin]
    return canonical_h(p.dim, ineqs, equalities)


# -- the polyhedron value -----------------------------------------------------


class Polyhedron:
    """An exact rational polyhedral set.

    ``h`` and ``v`` hold the representations the value was built from (either
    may be ``None``); ``hrep`` and ``vrep`` are the canonical forms.
    """

    __slots__ = ("dim", "h", "v", "_hc", "_vc")

    def __init__(self, h: HPolyhedron | None = None, v: VPolyhedron | None = None):
        if h is None and v is None:
            raise InputShapeError("a polyhedron needs an H- or V-representation")
        if h is not None and v is not None and h.dim != v.dim:
            raise InputShapeError("H and V representations differ in dimension")
        self.dim = h.dim if h is not None else v.dim
        self.h, self.v = h, v
        self._hc = self._vc = None

    # constructors
    @classmethod
    def from_h(cls, dim: int, ineqs: Iterable = (), eqs: Iterable = ()) -> "Polyhedron":
        """From rational rows ``(normal, offset)``: ``normal.x >= offset`` / ``== offset``."""
        return cls(h=HPolyhedron.from_rows(dim, ineqs, eqs))

    @classmethod
    def from_v(cls, vertices: Iterable, rays: Iterable = (), lineality: Iterable = (), dim: int | None = None):
        vertices = [qvec(x) for x in vertices]
        rays = [qvec(x) for x in rays]
        lineality = [qvec(x) for x in lineality]
        if dim is None:
            allv = vertices + rays + lineality
            if not allv:
                raise InputShapeError("dimension required for an empty generator list")
            dim = len(allv[0])
        rays = [r for r in rays if any(r)]
        lineality = [l for l in lineality if any(l)]
        return cls(v=VPolyhedron(dim, tuple(vertices), tuple(rays), tuple(lineality)))

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(h=empty_h(dim), v=VPolyhedron(dim))

    @classmethod
    def universe(cls, dim: int) -> "Polyhedron":
        return cls(h=HPolyhedron(dim))

    @classmethod
    def point(cls, x) -> "Polyhedron":
        return cls.from_v([x])

    # canonical forms
    @property
    def vrep(self) -> VPolyhedron:
        if self._vc is None:
            if self.h is not None:
                self._vc = h_to_v(self.h)
            else:
                self._vc = h_to_v(self.hrep)
        return self._vc

    @property
    def hrep(self) -> HPolyhedron:
        if self._hc is None:
            if self.v is not None and self._vc is None:
                self._hc = v_to_h(self.v)
            else:
                self._hc = v_to_h(self.vrep)
        return self._hc

    def _hview(self) -> HPolyhedron:
        return self.h if self.h is not None else self.hrep

    # predicates
    @property
    def is_empty(self) -> bool:
        return self.vrep.is_empty

    @property
    def is_bounded(self) -> bool:
        v = self.vrep
        return not v.rays and not v.lineality

    @property
    def affine_dim(self) -> int:
        if self.is_empty:
            return -1
        return self.dim - len(self.hrep.equalities)

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def contains(self, x) -> bool:
        x = qvec(x)
        if len(x) != self.dim:
            raise InputShapeError(f"point of length {len(x)} in dimension {self.dim}")
        if self.h is None and self.is_empty:
            return False
        return self._hview().contains(x)

    __contains__ = contains

    def relint_contains(self, x) -> bool:
        x = qvec(x)
        if self.is_empty:
            return False
        h = self.hrep
        return all(e.residual(x) == 0 for e in h.equalities) and all(
            s.slack(x) > 0 for s in h.halfspaces
        )

    def active_set(self, x) -> frozenset:
        """Indices of canonical halfspaces tight at ``x``."""
        x = qvec(x)
        return frozenset(i for i, s in enumerate(self.hrep.halfspaces) if s.slack(x) == 0)

    def issubset(self, other: "Polyhedron") -> bool:
        if self.dim != other.dim:
            raise InputShapeError("dimension mismatch")
        v = self.vrep
        if v.is_empty:
            return True
        if other.is_empty:
            return False
        h = other._hview()
        if not all(h.contains(x) for x in v.vertices):
            return False
        for r in v.rays:
            if any(dot(e.normal, r) != 0 for e in h.equalities):
                return False
            if any(dot(s.normal, r) < 0 for s in h.halfspaces):
                return False
        for l in v.lineality:
            if any(dot(s.normal, l) != 0 for s in h.halfspaces + h.equalities):
                return False
        return True

    def same_set(self, other: "Polyhedron") -> bool:
        """Set equality by double inclusion (independent of canonical forms)."""
        return self.issubset(other) and other.issubset(self)

    def check_consistent(self) -> bool:
        """When both raw representations are present, verify they agree."""
        if self.h is None or self.v is None:
            return True
        return Polyhedron(h=self.h).same_set(Polyhedron(v=self.v))

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.dim == other.dim and self.vrep == other.vrep

    def __hash__(self):
        return hash((self.dim, self.vrep))

    def __repr__(self):
        v = self.vrep
        if v.is_empty:
            return f"Polyhedron(dim={self.dim}, empty)"
        return (
            f"Polyhedron(dim={self.dim}, vertices={len(v.vertices)}, rays={len(v.rays)}, "
            f"lineality={len(v.lineality)}, facets={len(self.hrep.halfspaces)})"
        )

    # generators in one place
    def generators(self):
        v = self.vrep
        return v.vertices, v.rays, v.lineality

    def relint_point(self):
        """Barycenter of the vertices plus the sum of the rays."""
        v = self.vrep
        if v.is_empty:
            return None
        n = len(v.vertices)
        x = [sum((p[i] for p in v.vertices), ZERO) / n for i in range(self.dim)]
        for r in v.rays:
            x = [a + b for a, b in zip(x, r)]
        return tuple(x)
