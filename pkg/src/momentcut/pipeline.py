"""End-to-end certification of moment sets on bounded windows."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cuts import CutSpec, LabeledPolytope, symplectic_cut
from .errors import CertificationFailure, NotInChamberError, UnboundedInputError
from .lie import ChamberWall, RootSystem, chamber_polyhedron, is_dominant, principal_wall
from .oracle import SampleCloud, ToleranceConfig, rationalize
from .polyhedra import (
    Polyhedron,
    closure_of_face_intersection,
    face_of_point,
    face_witnesses,
    intersect,
    reconstruct_from_tangent_cones,
)


@dataclass(frozen=True)
class MomentSetCertificate:
    chamber_wall: ChamberWall
    local_part: Polyhedron
    window: Polyhedron
    assembled: Polyhedron
    witnesses: tuple = ()

    def __eq__(self, other):
        if not isinstance(other, MomentSetCertificate):
            return NotImplemented
        return (
            self.chamber_wall.zero_set == other.chamber_wall.zero_set
            and self.local_part == other.local_part
            and self.window == other.window
            and self.assembled == other.assembled
        )

    def __hash__(self):
        return hash((self.chamber_wall.zero_set, self.assembled))


def _separating_point(a: Polyhedron, b: Polyhedron):
    """A generator point of ``a`` outside ``b`` or vice versa."""
    for p, q in ((a, b), (b, a)):
        for x in p.vrep.vertices:
            if not q.contains(x):
                return x
        if p.vrep.vertices:
            x0 = p.vrep.vertices[0]
            for r in p.vrep.rays + p.vrep.lineality:
                y = tuple(u + v for u, v in zip(x0, r))
                if not q.contains(y):
                    return y
    return None


def bounding_window(p: Polyhedron, margin=1) -> Polyhedron:
    """The box around a bounded ``p`` enlarged by ``margin`` on every side."""
    if not p.is_bounded:
        raise UnboundedInputError("bounding_window() needs a bounded set")
    verts = p.vrep.vertices
    d = p.dim
    rows = []
    for i in range(d):
        lo = min(v[i] for v in verts) - margin
        hi = max(v[i] for v in verts) + margin
        e = tuple(int(j == i) for j in range(d))
        rows.append((e, lo))
        rows.append((tuple(-c for c in e), -hi))
    return Polyhedron.from_h(d, rows)


def _cloud_to_polyhedron(rs: RootSystem, cloud: SampleCloud, tol: ToleranceConfig) -> Polyhedron:
    from .oracle import cloud_hull

    pts = np.asarray(cloud.points, dtype=float)
    fc = np.array([[float(c) for c in f] for f in rs.simple_coroot_functionals]).reshape(-1, pts.shape[1])
    if fc.size and (pts @ fc.T).min() < -tol.containment_eps:
        raise NotInChamberError("sample cloud leaves the dominant chamber")
    hull = cloud_hull(pts)
    verts = {tuple(rationalize(x) for x in pts[i]) for i in hull.vertex_indices}
    return intersect(Polyhedron.from_v(sorted(verts)), chamber_polyhedron(rs))


def certify_moment_set(rs: RootSystem, delta, window: Polyhedron, tol: ToleranceConfig | None = None) -> MomentSetCertificate:
    """Assemble ``closure(sigma) & P`` on ``window`` and check it against ``delta``.

    ``P`` is rebuilt as the intersection of the tangent cones of ``delta`` at
    relative-interior witnesses of its faces meeting the window; ``sigma`` is
    the principal wall.  ``delta`` may be a Polyhedron or a SampleCloud;
    clouds are compared within ``tol.containment_eps``.
    """
    tol = tol or ToleranceConfig()
    cloud = None
    if isinstance(delta, SampleCloud):
        cloud = delta
        delta = _cloud_to_polyhedron(rs, cloud, tol)
    if not window.is_bounded:
        raise UnboundedInputError("the window must be bounded")
    ch = chamber_polyhedron(rs)
    if not delta.issubset(ch):
        raise NotInChamberError("input is not contained in the dominant chamber")
    target = intersect(delta, window)
    sigma = principal_wall(rs, delta)
    if target.is_empty:
        # no witnesses, and an empty cone intersection would be the whole window
        local = assembled = target
        witnesses = []
    else:
        witnesses = face_witnesses(delta, window)
        local = reconstruct_from_tangent_cones(witnesses, delta, window)
        face = face_of_point(ch, sigma.relint_point)
        assembled = closure_of_face_intersection(ch, face, local)
    if not assembled.issubset(ch):
        raise CertificationFailure("assembled set leaves the chamber", _separating_point(assembled, ch))
    if assembled != target:
        raise CertificationFailure(
            "assembled set differs from the input on the window", _separating_point(assembled, target)
        )
    if cloud is not None:
        from .oracle import FloatHull

        w = FloatHull.of(window).contains(cloud.points, tol.containment_eps)
        inside = FloatHull.of(assembled).contains(cloud.points[w], tol.containment_eps)
        if not inside.all():
            bad = cloud.points[w][~inside][0]
            raise CertificationFailure("a sample lies outside the assembled set", tuple(float(x) for x in bad))
    return MomentSetCertificate(sigma, local, window, assembled, tuple(witnesses))


@dataclass(frozen=True)
class CutCertificate:
    certificate: MomentSetCertificate
    cut: object
    uncut: MomentSetCertificate
    commutes: bool


def cut_then_certify(m: LabeledPolytope, p: CutSpec, rs: RootSystem, window: Polyhedron | None = None) -> CutCertificate:
    """Certify the cut polytope, and compare with certifying ``m`` then cutting.

    The default window is the bounding box of the cut polytope with unit
    margin, which needs a compact cut.
    """
    res = symplectic_cut(m, p)
    q = res.cut.polytope
    if window is None:
        window = bounding_window(q, Fraction(1))
    cert = certify_moment_set(rs, q, window)
    uncut = certify_moment_set(rs, m.polytope, window)
    other = intersect(uncut.assembled, p.polyhedron)
    if other != cert.assembled:
        raise CertificationFailure(
            "cutting and certifying do not commute", _separating_point(other, cert.assembled)
        )
    return CutCertificate(cert, res, uncut, True)
