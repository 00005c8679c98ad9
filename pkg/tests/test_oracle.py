import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest

from momentcut.errors import DomainError, NotDominantError, RankError
from momentcut.lie import build_root_system
from momentcut.oracle import (
    GENERATOR_ID,
    SampleCloud,
    Spectrum,
    ToleranceConfig,
    cloud_hull,
    containment_count,
    convexity_check,
    heckman_restriction,
    hull_coverage,
    kostant_polytope,
    local_min_probe,
    permutohedron,
    random_unitaries,
    schur_horn_sample,
)
from momentcut.polyhedra import Polyhedron, face_polyhedron, minimize_linear
from oracles import permutations_of


def cloud(points, seed=0):
    return SampleCloud(np.asarray(points, dtype=float), seed, "test")


def test_kostant_examples():
    assert kostant_polytope(build_root_system("A1"), (1,)) == Polyhedron.from_v([(-1,), (1,)])
    a2 = build_root_system("A2")
    assert len(kostant_polytope(a2, (1, 1)).vrep.vertices) == 6
    assert len(kostant_polytope(a2, (2, 0)).vrep.vertices) == 3
    with pytest.raises(NotDominantError):
        kostant_polytope(a2, (-1, 1))


def test_permutohedron_matches_permutation_hull():
    p = permutohedron((2, 1, 0))
    assert sorted(p.vrep.vertices) == sorted(permutations_of((F(2), F(1), F(0))))
    assert len(p.hrep.equalities) == 1


def test_spectrum_validation():
    with pytest.raises(DomainError):
        Spectrum((0, 1))
    with pytest.raises(DomainError):
        Spectrum(())


def test_tolerance_validation():
    with pytest.raises(DomainError):
        ToleranceConfig(containment_eps=0)
    with pytest.raises(DomainError):
        ToleranceConfig(hull_coverage_target=1.5)


def test_random_unitaries_are_unitary():
    u = random_unitaries(np.random.default_rng(0), 50, 4)
    eye = np.eye(4)
    for m in u:
        assert np.allclose(m.conj().T @ m, eye, atol=1e-12)


def test_two_point_spectrum():
    c = schur_horn_sample(Spectrum((1, 0)), 500, seed=1)
    d = c.points[:, 0]
    assert np.all(d >= -1e-12) and np.all(d <= 1 + 1e-12)
    assert np.allclose(c.points.sum(axis=1), 1, atol=1e-12)


def test_scalar_spectrum():
    c = schur_horn_sample(Spectrum((3, 3, 3)), 300, seed=2)
    assert np.allclose(c.points, 3, atol=1e-12)


def test_count_must_be_positive():
    with pytest.raises(DomainError):
        schur_horn_sample(Spectrum((1, 0)), 0)


def test_determinism_and_metadata():
    a = schur_horn_sample(Spectrum((2, 1, 0)), 5000, seed=7)
    b = schur_horn_sample(Spectrum((2, 1, 0)), 5000, seed=7)
    assert a == b and a.generator_id == GENERATOR_ID and a.seed == 7
    assert not np.array_equal(a.points, schur_horn_sample(Spectrum((2, 1, 0)), 5000, seed=8).points)


def test_worker_count_does_not_change_output():
    s = Spectrum((3, 1, 0, -1))
    one = schur_horn_sample(s, 7000, seed=3, workers=1)
    many = schur_horn_sample(s, 7000, seed=3, workers=4)
    assert np.array_equal(one.points, many.points)


@pytest.mark.parametrize("lam", [(2, 1, 0), (5, 2, 2, -1), (4, 3, 1, 0, -2)])
def test_trace_and_containment(lam):
    c = schur_horn_sample(Spectrum(lam), 10**4, seed=11)
    n = len(lam)
    assert np.abs(c.points.sum(axis=1) - sum(lam)).max() <= 1e-10 * n
    assert containment_count(c, permutohedron(lam)) == 10**4


def test_convexity_examples():
    sq = [(0, 0), (1, 0), (0, 1), (1, 1), (0.5, 0), (0, 0.5), (1, 0.5), (0.5, 1)]
    assert convexity_check(cloud(sq)).passed
    t = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    circle = np.c_[np.cos(t), np.sin(t)]
    report = convexity_check(cloud(circle))
    assert not report.passed and report.violations


def test_convexity_of_schur_horn_cloud():
    c = schur_horn_sample(Spectrum((2, 1, 0)), 4000, seed=5)
    assert convexity_check(c).passed


def test_convexity_needs_two_points():
    with pytest.raises(DomainError):
        convexity_check(cloud([(0, 0)]))


def test_local_min_examples():
    sq = cloud([(0, 0), (1, 0), (0, 1), (1, 1)])
    r = local_min_probe(sq, (1, 0))
    assert r.passed and r.min_value == 0 and r.face_dim == 1 and sorted(r.minimizers) == [0, 2]
    r = local_min_probe(sq, (0, 0))
    assert r.passed and sorted(r.minimizers) == [0, 1, 2, 3]


def test_local_min_on_schur_horn_matches_exact_face():
    rng = random.Random(8)
    c = schur_horn_sample(Spectrum((2, 1, 0)), 4000, seed=6)
    p = permutohedron((2, 1, 0))
    for _ in range(5):
        xi = tuple(rng.randint(-5, 5) for _ in range(3))
        r = local_min_probe(c, xi, ToleranceConfig(containment_eps=1e-6))
        assert r.passed
        val, face = minimize_linear(p, xi)
        assert r.min_value >= float(val) - 1e-9
        # near-minimizers sit near the exact argmin face
        fp = face_polyhedron(p, face)
        best = c.points[r.minimizers[0]]
        d = min(np.linalg.norm(best - np.array([float(x) for x in v])) for v in fp.vrep.vertices)
        assert d < 0.5 or fp.affine_dim > 0


def test_heckman_examples():
    rs = build_root_system("A2")
    hexagon = kostant_polytope(rs, (1, 1))
    sub = [(1,), (0,)]
    img = [tuple(sum(a * b for a, b in zip(col, v)) for col in zip(*sub)) for v in hexagon.vrep.vertices]
    assert heckman_restriction(hexagon, sub) == Polyhedron.from_v(img)
    assert heckman_restriction(hexagon, [(1, 0), (0, 1)]) == hexagon
    assert heckman_restriction(Polyhedron.point((1, 2)), [(1,), (1,)]) == Polyhedron.point((3,))
    with pytest.raises(RankError):
        heckman_restriction(hexagon, [(1, 2), (2, 4)])
    with pytest.raises(RankError):
        heckman_restriction(hexagon, [(1,)])


def test_heckman_agrees_with_projected_samples():
    rng = random.Random(12)
    lam = (2, 1, 0)
    p = permutohedron(lam)
    c = schur_horn_sample(Spectrum(lam), 4000, seed=9)
    for _ in range(4):
        inc = [(rng.randint(-2, 2),) for _ in range(3)]
        if not any(r[0] for r in inc):
            continue
        exact = heckman_restriction(p, inc)
        proj = c.points @ np.array([[float(r[0])] for r in inc])
        lo, hi = (float(v[0]) for v in sorted(exact.vrep.vertices)) if len(exact.vrep.vertices) == 2 else (float(exact.vrep.vertices[0][0]),) * 2
        assert proj.min() >= lo - 1e-9 and proj.max() <= hi + 1e-9
        # the sampled image spreads over most of the exact interval
        assert proj.max() - proj.min() >= 0.8 * (hi - lo)


def test_cloud_hull_lives_in_trace_plane():
    c = schur_horn_sample(Spectrum((2, 1, 0)), 2000, seed=1)
    h = cloud_hull(c.points)
    assert h.dim == 2
    assert np.all(h.contains(c.points, 1e-9))
    assert not h.contains(np.array([[1.0, 1.0, 1.5]]))[0]


def test_hull_coverage_of_exact_polytope_is_total():
    p = permutohedron((2, 1, 0))
    assert hull_coverage(p, p, probes=2000) == 1.0
