"""Linear images of polyhedra by Fourier-Motzkin elimination."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InputShapeError
from ..exact import qvec
from .core import HPolyhedron, Polyhedron, empty_h


def _normalize(row):
    """Scale ``(coeffs, rhs)`` so the first nonzero coefficient has |c| = 1."""
    coeffs, rhs = row
    c = next((x for x in coeffs if x), None)
    if c is None:
        return row
    f = 1 / abs(c)
    return tuple(x * f for x in coeffs), rhs * f


def eliminate(ineqs, eqs, nvars, drop):
    """Project ``{z : A z >= b, E z = e}`` onto the variables not in ``drop``.

    Rows are ``(coeffs, rhs)`` over ``nvars`` variables.  Equalities are used
    first as substitutions; the remaining variables are removed by
    Fourier-Motzkin with Chernikov's history rule to discard redundant
    combinations.  Returns ``(ineqs, eqs)`` over the kept variables, or
    ``None`` if the system is infeasible.
    """
    drop = sorted(set(drop))
    keep = [j for j in range(nvars) if j not in drop]
    ineqs = [(qvec(a), Fraction(b)) for a, b in ineqs]
    eqs = [(qvec(a), Fraction(b)) for a, b in eqs]

    # substitution with equalities
    pending = list(drop)
    out_eqs = []
    while eqs:
        a, b = eqs.pop(0)
        j = next((j for j in pending if a[j] != 0), None)
        if j is None:
            if not any(a):
                if b != 0:
                    return None
                continue
            out_eqs.append((a, b))
            continue
        pending.remove(j)
        piv = a[j]

        def sub_row(row, a=a, b=b, j=j, piv=piv):
            c, r = row
            f = c[j] / piv
            if not f:
                return row
            return tuple(x - f * y for x, y in zip(c, a)), r - f * b

        eqs = [sub_row(r) for r in eqs]
        out_eqs = [sub_row(r) for r in out_eqs]
        ineqs = [sub_row(r) for r in ineqs]

    rows = []
    for i, (a, b) in enumerate(ineqs):
        if not any(a):
            if b > 0:
                return None
            continue
        rows.append((_normalize((a, b)), frozenset([i])))

    eliminated = 0
    while pending:
        # cheapest variable first
        def cost(j):
            p = sum(1 for (c, _), _h in rows if c[j] > 0)
            n = sum(1 for (c, _), _h in rows if c[j] < 0)
            return (p * n - p - n, j)

        j = min(pending, key=cost)
        pending.remove(j)
        eliminated += 1
        pos = [r for r in rows if r[0][0][j] > 0]
        neg = [r for r in rows if r[0][0][j] < 0]
        new = [r for r in rows if r[0][0][j] == 0]
        seen = {r[0] for r in new}
        for (pc, pb), ph in pos:
            for (nc, nb), nh in neg:
                hist = ph | nh
                if len(hist) > eliminated + 1:
                    continue
                fp, fn = -nc[j], pc[j]
                c = tuple(fp * x + fn * y for x, y in zip(pc, nc))
                rhs = fp * pb + fn * nb
                if not any(c):
                    if rhs > 0:
                        return None
                    continue
                key = _normalize((c, rhs))
                if key in seen:
                    continue
                seen.add(key)
                new.append((key, hist))
        rows = new

    out_ineqs = [(tuple(c[k] for k in keep), b) for (c, b), _ in rows]
    out_eqs = [(tuple(a[k] for k in keep), b) for a, b in out_eqs]
    return out_ineqs, out_eqs


def project(p: Polyhedron, matrix: Sequence[Sequence]) -> Polyhedron:
    """The image ``{matrix . x : x in p}`` computed by Fourier-Motzkin."""
    m = [qvec(r) for r in matrix]
    if not m or any(len(r) != p.dim for r in m):
        raise InputShapeError(f"map must have {p.dim} columns")
    out_dim = len(m)
    if p.is_empty:
        return Polyhedron.empty(out_dim)
    h = p.h if p.h is not None else p.hrep
    d = p.dim
    n = out_dim + d
    zero_y = (Fraction(0),) * out_dim
    ineqs = [(zero_y + tuple(Fraction(x) for x in s.normal), s.offset) for s in h.halfspaces]
    eqs = [(zero_y + tuple(Fraction(x) for x in e.normal), e.offset) for e in h.equalities]
    # y_i - sum_j m_ij x_j = 0
    for i, row in enumerate(m):
        y = tuple(Fraction(int(k == i)) for k in range(out_dim))
        eqs.append((y + tuple(-x for x in row), Fraction(0)))
    res = eliminate(ineqs, eqs, n, range(out_dim, n))
    if res is None:
        return Polyhedron.empty(out_dim)
    out_ineqs, out_eqs = res
    hp = HPolyhedron.from_rows(out_dim, out_ineqs, out_eqs)
    result = Polyhedron(h=hp)
    if result.is_empty:
        return Polyhedron(h=empty_h(out_dim))
    return result
