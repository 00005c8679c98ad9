import os
import random
import subprocess
import sys

import numpy as np
import pytest

from momentcut import _ddcore_py, _kernels
from momentcut.polyhedra import Polyhedron, dd
from gen import random_rows

compiled = pytest.importorskip("momentcut._ddcore") if _kernels.BACKEND == "cython" else None


def _homogenize(rows):
    return [(-b,) + tuple(a) for a, b in rows] + [(1,) + (0,) * len(rows[0][0])]


@pytest.mark.skipif(_kernels.BACKEND != "cython", reason="compiled kernel not built")
@pytest.mark.parametrize("seed", range(6))
def test_backends_agree_on_every_kernel_call(seed):
    rng = random.Random(seed)
    dim = rng.choice([3, 4])
    cone = _homogenize(random_rows(rng, dim, 12, box=6))
    calls = []

    def spy(zs, pos, neg, k):
        calls.append((zs.copy(), list(pos), list(neg), k))
        return _ddcore_py.adjacent_pairs(zs, pos, neg, k)

    out_py = dd.cone_generators(cone, [], dim + 1, adjacent_pairs=spy)
    out_c = dd.cone_generators(cone, [], dim + 1, adjacent_pairs=compiled.adjacent_pairs)
    assert out_py == out_c
    for c in calls:
        assert compiled.adjacent_pairs(*c) == _ddcore_py.adjacent_pairs(*c)


def test_kernel_handles_wide_bitsets():
    # more than 64 constraints spills into a second word
    rng = np.random.default_rng(0)
    zs = rng.integers(0, 2**63, size=(20, 2), dtype=np.uint64)
    pos, neg = list(range(0, 10)), list(range(10, 20))
    ref = _ddcore_py.adjacent_pairs(zs, pos, neg, 3)
    if _kernels.BACKEND == "cython":
        assert compiled.adjacent_pairs(zs, pos, neg, 3) == ref


def test_backend_is_reported():
    import momentcut

    assert momentcut.BACKEND in ("cython", "python")
    assert momentcut.BACKEND == _kernels.BACKEND


def test_env_var_forces_fallback():
    env = dict(os.environ, MOMENTCUT_PURE_PYTHON="1")
    code = (
        "import momentcut\n"
        "from momentcut.polyhedra import Polyhedron\n"
        "p = Polyhedron.from_v([(0, 0), (1, 0), (0, 1)])\n"
        "print(momentcut.BACKEND, len(p.hrep.halfspaces))\n"
    )
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert r.stdout.split() == ["python", "3"]


def test_results_do_not_depend_on_backend():
    rows = [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0), ((-1, -1, -1), -2), ((1, -1, 0), -1)]
    here = Polyhedron.from_h(3, rows)
    env = dict(os.environ, MOMENTCUT_PURE_PYTHON="1")
    code = (
        "from momentcut.polyhedra import Polyhedron\n"
        f"p = Polyhedron.from_h(3, {rows!r})\n"
        "print(repr(p.vrep.vertices))\n"
    )
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip() == repr(here.vrep.vertices)
