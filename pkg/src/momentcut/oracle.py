"""Floating-point experiments on coadjoint orbits.

Everything here is numerical; hulls of sample clouds are handed to the exact
engine after rounding coordinates to a fixed rational grid.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree

from .errors import DomainError, NotDominantError, RankError
from .exact import fmt_vec, rank, transpose
from .lie import RootSystem, build_root_system, is_dominant, weyl_orbit
from .polyhedra import Polyhedron, face_polyhedron, minimize_linear, project

GENERATOR_ID = "schur-horn/qr-phase/v1"
CHUNK = 2048
RESOLUTION = 10**12


@dataclass(frozen=True)
class Spectrum:
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise DomainError("empty spectrum")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise DomainError("spectrum must be weakly decreasing")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SampleCloud:
    points: np.ndarray
    seed: int
    generator_id: str

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __eq__(self, other):
        if not isinstance(other, SampleCloud):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.generator_id == other.generator_id
            and np.array_equal(self.points, other.points)
        )


@dataclass(frozen=True)
class ToleranceConfig:
    containment_eps: float = 1e-9
    hull_coverage_target: float = 0.99

    def __post_init__(self):
        if self.containment_eps <= 0:
            raise DomainError("containment_eps must be positive")
        if not 0 < self.hull_coverage_target < 1:
            raise DomainError("hull_coverage_target must lie in (0, 1)")


def kostant_polytope(rs: RootSystem, lam) -> Polyhedron:
    """Convex hull of the Weyl orbit of a dominant ``lam``."""
    if not is_dominant(rs, lam):
        raise NotDominantError(f"{fmt_vec(lam)} is not dominant for {rs.name}")
    return Polyhedron.from_v(weyl_orbit(rs, lam))


def permutohedron(values) -> Polyhedron:
    """Hull of all permutations of ``values`` (the unitary type-A model)."""
    vals = sorted((Fraction(v) for v in values), reverse=True)
    rs = build_root_system("A", len(vals) - 1, "unitary")
    return kostant_polytope(rs, vals)


# -- sampling ------------------------------------------------------------------

def _worker_count() -> int:
    cap = os.environ.get("MOMENTCUT_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def random_unitaries(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    """QR of complex Gaussian matrices, columns rephased so ``diag(R) > 0``."""
    z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    ph = d / np.abs(d)
    return q * ph[:, None, :]


def _chunk(seed: int, index: int, size: int, lam: np.ndarray) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    u = random_unitaries(rng, size, lam.size)
    # diag(U diag(lam) U*)_i = sum_j |U_ij|^2 lam_j
    return (np.abs(u) ** 2) @ lam


def schur_horn_sample(spectrum: Spectrum, count: int, seed: int = 0, workers: int | None = None) -> SampleCloud:
    """Diagonals of ``U diag(spectrum) U*`` for ``count`` random unitaries.

    Chunk ``i`` draws from the substream ``SeedSequence(seed, spawn_key=(i,))``
    so the output does not depend on the worker count.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    if not isinstance(spectrum, Spectrum):
        spectrum = Spectrum(tuple(spectrum))
    lam = np.asarray(spectrum.values, dtype=float)
    sizes = [min(CHUNK, count - s) for s in range(0, count, CHUNK)]
    workers = workers or _worker_count()
    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda a: _chunk(seed, a[0], a[1], lam), enumerate(sizes)))
    else:
        parts = [_chunk(seed, i, s, lam) for i, s in enumerate(sizes)]
    return SampleCloud(np.concatenate(parts, axis=0), int(seed), GENERATOR_ID)


# -- float <-> exact -------------------------------------------------------------

def rationalize(x: float, resolution: int = RESOLUTION) -> Fraction:
    return Fraction(round(float(x) * resolution), resolution)


def _affine_frame(points: np.ndarray, tol: float = 1e-9):
    """Origin, orthonormal basis rows and reduced coordinates of the affine hull."""
    origin = points.mean(axis=0)
    centered = points - origin
    if centered.size == 0:
        return origin, np.zeros((0, points.shape[1])), np.zeros((len(points), 0))
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(1.0, float(np.abs(points).max()))
    k = int(np.sum(s > tol * scale * max(1.0, np.sqrt(len(points)))))
    basis = vt[:k]
    return origin, basis, centered @ basis.T


def hull_candidates(points: np.ndarray) -> np.ndarray:
    """Indices of points that can be vertices of the hull (float prefilter)."""
    points = np.asarray(points, dtype=float)
    _, basis, red = _affine_frame(points)
    k = basis.shape[0]
    if k == 0:
        return np.array([0])
    if k == 1:
        return np.unique([int(np.argmin(red[:, 0])), int(np.argmax(red[:, 0]))])
    try:
        return np.sort(ConvexHull(red).vertices)
    except QhullError:
        return np.arange(len(points))


class CloudHull:
    """Hull of a float cloud, exact inside the cloud's numerical affine hull.

    Reduced coordinates ``(x - origin) @ basis.T`` are rounded to
    ``1/resolution`` and hulled exactly; ``polytope`` lives in those
    coordinates.  Membership also bounds the distance to the affine hull.
    """

    def __init__(self, points, resolution: int = RESOLUTION):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or len(pts) == 0:
            raise DomainError("a cloud needs at least one point")
        self.origin, self.basis, red = _affine_frame(pts)
        self.vertex_indices = hull_candidates(pts)
        k = self.basis.shape[0]
        self.polytope = None
        if k:
            verts = {tuple(rationalize(x, resolution) for x in red[i]) for i in self.vertex_indices}
            self.polytope = Polyhedron.from_v(sorted(verts))
            self._fh = FloatHull.of(self.polytope)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def reduce(self, x) -> tuple:
        """Reduced coordinates and distance to the affine hull."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        c = x - self.origin
        y = c @ self.basis.T
        off = np.linalg.norm(c - y @ self.basis, axis=1)
        return y, off

    def violation(self, x) -> np.ndarray:
        y, off = self.reduce(x)
        if self.polytope is None:
            return off
        return np.maximum(self._fh.violation(y), off)

    def contains(self, x, eps: float = 1e-9) -> np.ndarray:
        return self.violation(x) <= eps


def cloud_hull(points, resolution: int = RESOLUTION) -> CloudHull:
    return CloudHull(points, resolution)


@dataclass(frozen=True)
class FloatHull:
    """Float H-form ``A x >= b`` of an exact polyhedron, for bulk membership."""

    a: np.ndarray
    b: np.ndarray
    eq_a: np.ndarray
    eq_b: np.ndarray

    @classmethod
    def of(cls, p: Polyhedron) -> "FloatHull":
        h = p.hrep
        d = p.dim

        def arr(rows):
            return np.array([[float(c) for c in r.normal] for r in rows], dtype=float).reshape(-1, d)

        a = arr(h.halfspaces)
        b = np.array([float(s.offset) for s in h.halfspaces], dtype=float)
        ea = arr(h.equalities)
        eb = np.array([float(e.offset) for e in h.equalities], dtype=float)
        return cls(a, b, ea, eb)

    def violation(self, x: np.ndarray) -> np.ndarray:
        """Largest normalised constraint violation per row of ``x`` (<= 0 inside)."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        out = np.full(x.shape[0], -np.inf)
        if self.a.size:
            na = np.linalg.norm(self.a, axis=1)
            out = np.maximum(out, ((self.b[None, :] - x @ self.a.T) / na).max(axis=1))
        if self.eq_a.size:
            ne = np.linalg.norm(self.eq_a, axis=1)
            out = np.maximum(out, (np.abs(x @ self.eq_a.T - self.eq_b[None, :]) / ne).max(axis=1))
        return out

    def contains(self, x, eps: float = 1e-9) -> np.ndarray:
        return self.violation(x) <= eps


def containment_count(cloud: SampleCloud, p: Polyhedron, tol: ToleranceConfig | None = None) -> int:
    tol = tol or ToleranceConfig()
    return int(FloatHull.of(p).contains(cloud.points, tol.containment_eps).sum())


def sample_in_polytope(p: Polyhedron, count: int, seed: int = 0) -> np.ndarray:
    """Uniform points in a bounded polytope, by rejection inside its affine hull."""
    if not p.is_bounded or p.is_empty:
        raise DomainError("sampling needs a nonempty polytope")
    verts = np.array([[float(c) for c in v] for v in p.vrep.vertices])
    origin, basis, red = _affine_frame(verts)
    fh = FloatHull.of(p)
    rng = np.random.default_rng(seed)
    if basis.shape[0] == 0:
        return np.repeat(verts[:1], count, axis=0)
    lo, hi = red.min(axis=0), red.max(axis=0)
    out = []
    have = 0
    while have < count:
        y = rng.uniform(lo, hi, size=(max(1024, 2 * (count - have)), basis.shape[0]))
        x = origin + y @ basis
        x = x[fh.contains(x, 1e-12)]
        out.append(x)
        have += len(x)
    return np.concatenate(out)[:count]


def hull_coverage(target: Polyhedron, hull, probes: int = 10**5, seed: int = 0, eps: float = 1e-9) -> float:
    """Fraction of uniform probes of ``target`` that lie in ``hull``."""
    x = sample_in_polytope(target, probes, seed)
    if isinstance(hull, Polyhedron):
        hull = FloatHull.of(hull)
    return float(hull.contains(x, eps).mean())


# -- probes ----------------------------------------------------------------------

@dataclass
class ConvexityReport:
    passed: bool
    pairs_checked: int
    gap_threshold: float
    violations: list = field(default_factory=list)


def convexity_check(cloud: SampleCloud, tol: ToleranceConfig | None = None, pairs: int = 2000, seed: int = 0, gap_factor: float = 2.0) -> ConvexityReport:
    """Midpoint probe: a midpoint of two cloud points must be inside the hull
    and must not sit in a gap of the cloud.

    The gap threshold is ``gap_factor`` times the largest nearest-neighbour
    distance inside the cloud; a sampled convex set has no holes wider than
    its own sparsest spacing, while a non-convex one leaves midpoints far
    from every sample.
    """
    tol = tol or ToleranceConfig()
    pts = np.asarray(cloud.points, dtype=float)
    if len(pts) < 2:
        raise DomainError("convexity_check needs at least two points")
    tree = cKDTree(pts)
    nn, _ = tree.query(pts, k=2)
    thresh = gap_factor * float(nn[:, 1].max()) + tol.containment_eps
    hull = cloud_hull(pts)
    rng = np.random.default_rng(seed)
    n = len(pts)
    if n * (n - 1) // 2 <= pairs:
        ii, jj = np.triu_indices(n, 1)
    else:
        ii = rng.integers(0, n, pairs)
        jj = rng.integers(0, n, pairs)
    mids = (pts[ii] + pts[jj]) / 2
    gap, _ = tree.query(mids)
    inside = hull.contains(mids, tol.containment_eps)
    bad = np.nonzero((gap > thresh) | ~inside)[0]
    viol = [(int(ii[k]), int(jj[k]), float(gap[k])) for k in bad]
    return ConvexityReport(not viol, len(mids), thresh, viol)


@dataclass
class LocalMinReport:
    passed: bool
    min_value: float
    face_id: str
    face_dim: int
    minimizers: list


def local_min_probe(cloud: SampleCloud, xi, tol: ToleranceConfig | None = None) -> LocalMinReport:
    """Check that the eps-minimizers of ``<., xi>`` lie on one face of the hull."""
    tol = tol or ToleranceConfig()
    pts = np.asarray(cloud.points, dtype=float)
    xi_f = np.asarray(xi, dtype=float)
    vals = pts @ xi_f
    m = float(vals.min())
    mins = np.nonzero(vals <= m + tol.containment_eps)[0]
    hull = cloud_hull(pts)
    if hull.polytope is None:
        return LocalMinReport(True, m, "face{}", 0, [int(i) for i in mins])
    xi_red = hull.basis @ xi_f
    xi_q = tuple(rationalize(x) for x in xi_red)
    _, face = minimize_linear(hull.polytope, xi_q)
    fh = FloatHull.of(face_polyhedron(hull.polytope, face))
    y, off = hull.reduce(pts[mins])
    ok = bool((fh.contains(y, tol.containment_eps) & (off <= tol.containment_eps)).all())
    fid = "face{" + ",".join(str(i) for i in sorted(face.active_set)) + "}"
    return LocalMinReport(ok, m, fid, face.dim, [int(i) for i in mins])


def heckman_restriction(p: Polyhedron, inclusion) -> Polyhedron:
    """Image of ``p`` under the transpose of ``inclusion: t_H -> t``."""
    inc = [tuple(Fraction(c) for c in row) for row in inclusion]
    if len(inc) != p.dim:
        raise RankError(f"inclusion must have {p.dim} rows")
    k = len(inc[0]) if inc else 0
    if k == 0 or rank(inc, k) < k:
        raise RankError("inclusion must have full column rank")
    return project(p, transpose(inc))
