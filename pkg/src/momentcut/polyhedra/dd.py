"""Double description for homogeneous cones over the integers.

Computes generators of ``{y : A y >= 0, E y = 0}``.  Constraints are
inserted in the order given; lineality is tracked explicitly so the cone
need not be pointed.  All arithmetic is on Python ints and every generator
is kept primitive, which bounds coefficient growth.
"""
from __future__ import annotations

from math import gcd

import numpy as np

from .. import _kernels
from ..exact import integerize, nullspace, primitive

_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


def _prim(v):
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return tuple(v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _dot(a, v):
    return sum(x * y for x, y in zip(a, v))


def _bit(i):
    return i >> 6, np.uint64(1 << (i & 63))


def _mask_below(i, nwords):
    row = np.zeros(nwords, dtype=np.uint64)
    full, rest = divmod(i, 64)
    row[:full] = _ALL
    if rest:
        row[full] = np.uint64((1 << rest) - 1)
    return row


def _dd(constraints, k, adjacent_pairs):
    """Core loop in ``Z^k``; returns ``(lineality, rays)``."""
    lineality = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    rays: list[tuple] = []
    nwords = max(1, (len(constraints) + 63) // 64)
    zs = np.zeros((0, nwords), dtype=np.uint64)

    for i, a in enumerate(constraints):
        w, b = _bit(i)
        vals = [_dot(a, l) for l in lineality]
        j0 = next((j for j, v in enumerate(vals) if v), None)
        if j0 is not None:
            l0, al0 = lineality[j0], vals[j0]
            if al0 < 0:
                l0, al0 = tuple(-x for x in l0), -al0
            lineality = [
                _prim(tuple(al0 * x - v * y for x, y in zip(l, l0)))
                for j, (l, v) in enumerate(zip(lineality, vals))
                if j != j0
            ]
            new_rays = []
            for r in rays:
                ar = _dot(a, r)
                new_rays.append(_prim(tuple(al0 * x - ar * y for x, y in zip(r, l0))) if ar else r)
            rays = new_rays + [l0]
            zs[:, w] |= b
            zs = np.vstack([zs, _mask_below(i, nwords)[None, :]])
            continue

        vals = [_dot(a, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zero = [j for j, v in enumerate(vals) if v == 0]
        if not neg:
            if zero:
                zs[zero, w] |= b
            continue
        pairs = adjacent_pairs(zs, pos, neg, k - len(lineality) - 2) if pos else []
        keep = pos + zero
        new_rays = [rays[j] for j in keep]
        new_zs = zs[keep].copy()
        if zero:
            new_zs[len(pos):, w] |= b
        if pairs:
            comb = []
            for p, n in pairs:
                vp, vn = vals[p], -vals[n]
                rp, rn = rays[p], rays[n]
                comb.append(_prim(tuple(vp * x + vn * y for x, y in zip(rn, rp))))
            pz = np.array([p for p, _ in pairs], dtype=np.intp)
            nz = np.array([n for _, n in pairs], dtype=np.intp)
            cz = zs[pz] & zs[nz]
            cz[:, w] |= b
            new_rays += comb
            new_zs = np.vstack([new_zs, cz])
        rays, zs = new_rays, new_zs
    return lineality, rays


def cone_generators(ineqs, eqs, n, adjacent_pairs=None):
    """Generators of ``{y in R^n : a.y >= 0 for a in ineqs, e.y = 0 for e in eqs}``.

    Rows may be rational; they are scaled to integers.  Returns
    ``(lineality, rays)`` as lists of primitive integer vectors; ``rays``
    are the extreme rays of the cone modulo its lineality space.
    """
    if adjacent_pairs is None:
        adjacent_pairs = _kernels.adjacent_pairs
    ineqs = [integerize(a) for a in ineqs]
    eqs = [integerize(e) for e in eqs if any(e)]
    if eqs:
        basis = [primitive(v) for v in nullspace(eqs, n)]
    else:
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    k = len(basis)
    if k == 0:
        return [], []
    if eqs:
        reduced = [_prim(tuple(_dot(a, b) for b in basis)) for a in ineqs]
    else:
        reduced = [_prim(a) for a in ineqs]
    reduced = [a for a in reduced if any(a)]
    lin, rays = _dd(reduced, k, adjacent_pairs)
    if eqs:
        lift = lambda z: _prim(tuple(sum(c * b[j] for c, b in zip(z, basis)) for j in range(n)))
        lin = [lift(z) for z in lin]
        rays = [lift(z) for z in rays]
    return lin, rays
