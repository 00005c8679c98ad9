"""Exact rational linear algebra and integer lattices.

Scalars are :class:`fractions.Fraction`; vectors are tuples of them
(``QVector``).  Integer vectors are tuples of ``int``.  Everything here is
a pure function on immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InputShapeError, ZeroVectorError

QVector = tuple  # tuple[Fraction, ...]
IVector = tuple  # tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce ``x`` (int, Fraction, or a string like ``"3/4"``) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(x)


def qvec(xs: Iterable) -> QVector:
    return tuple(Q(x) for x in xs)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def integerize(v: Sequence) -> IVector:
    """Scale a rational vector by the lcm of its denominators (positive factor)."""
    m = 1
    for x in v:
        m = lcm(m, Fraction(x).denominator)
    return tuple(int(Fraction(x) * m) for x in v)


def primitive(v: Sequence) -> IVector:
    """The positive multiple of ``v`` that is integral with coprime entries."""
    iv = integerize(v)
    g = 0
    for x in iv:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVectorError("primitive() of the zero vector")
    return tuple(x // g for x in iv)


def primitive_or_zero(v: Sequence) -> IVector:
    iv = integerize(v)
    g = 0
    for x in iv:
        g = gcd(g, x)
    if g <= 1:
        return iv
    return tuple(x // g for x in iv)


def _check_rows(rows, dim=None):
    rows = [tuple(r) for r in rows]
    if dim is None:
        if not rows:
            raise InputShapeError("cannot infer dimension of an empty row list")
        dim = len(rows[0])
    for r in rows:
        if len(r) != dim:
            raise InputShapeError(f"row of length {len(r)} in a {dim}-column matrix")
    return rows, dim


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns ``(nonzero_rows, pivot_columns)``.
    """
    if not rows:
        return [], []
    rows, ncols = _check_rows(rows, ncols)
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[0])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of ``{x : row . x = 0 for every row}``, one vector per free column."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence):
    """One solution of ``a x = b`` or ``None`` if inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [tuple(r) + (Fraction(bi),) for r, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    aug = [tuple(Fraction(x) for x in r) + identity(n)[i] for i, r in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise InputShapeError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def project_out(v: Sequence, basis_rref: Sequence[Sequence]) -> tuple:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``.

    ``basis_rref`` may be any basis; it is orthogonalised on the fly.
    """
    if not basis_rref:
        return tuple(Fraction(x) for x in v)
    ortho = gram_schmidt(basis_rref)
    out = [Fraction(x) for x in v]
    for u, uu in ortho:
        c = dot(out, u) / uu
        if c:
            out = [a - c * b for a, b in zip(out, u)]
    return tuple(out)


def gram_schmidt(vectors: Sequence[Sequence]):
    """Exact Gram-Schmidt; returns ``[(u, <u,u>)]`` for the nonzero outputs."""
    ortho = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for u, uu in ortho:
            c = dot(w, u) / uu
            if c:
                w = [a - c * b for a, b in zip(w, u)]
        ww = dot(w, w)
        if ww:
            ortho.append((tuple(w), ww))
    return ortho


# -- integer lattices ---------------------------------------------------------


def _hnf(rows: list[list[int]], ncols: int, transform: bool):
    """Row-style Hermite normal form by unimodular row operations.

    Pivots are positive and strictly move right; entries above a pivot are
    reduced into ``[0, pivot)``.  Zero rows are moved to the bottom.
    """
    m = [list(r) for r in rows]
    n = len(m)
    u = [[int(i == j) for j in range(n)] for i in range(n)] if transform else None
    r = 0
    for c in range(ncols):
        if r == n:
            break
        # gcd-combine everything below row r into row r
        for i in range(r + 1, n):
            if m[i][c] == 0:
                continue
            a, b = m[r][c], m[i][c]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            m[r], m[i] = (
                [x * p + y * q for p, q in zip(m[r], m[i])],
                [-bg * p + ag * q for p, q in zip(m[r], m[i])],
            )
            if u is not None:
                u[r], u[i] = (
                    [x * p + y * q for p, q in zip(u[r], u[i])],
                    [-bg * p + ag * q for p, q in zip(u[r], u[i])],
                )
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        piv = m[r][c]
        for i in range(r):
            q = m[i][c] // piv
            if q:
                m[i] = [p - q * s for p, s in zip(m[i], m[r])]
                if u is not None:
                    u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        r += 1
    return m, u, r


def _xgcd(a: int, b: int):
    """``(g, x, y)`` with ``a x + b y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(rows: Sequence[Sequence[int]], dim: int | None = None):
    """Canonical basis of the integer row span of ``rows``.

    Returns ``(hnf_basis, rank)``.  ``dim`` is needed only when ``rows`` is
    empty.
    """
    if not rows:
        return [], 0
    rows, ncols = _check_rows(rows, dim)
    for r in rows:
        for x in r:
            if Fraction(x).denominator != 1:
                raise InputShapeError("hermite_normal_form needs integer rows")
    m, _, r = _hnf([[int(x) for x in row] for row in rows], ncols, False)
    return [tuple(row) for row in m[:r]], r


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list:
    """Saturated basis of ``{c in Z^n : sum_i c_i rows[i] = 0}`` (left kernel)."""
    n = len(rows)
    if n == 0:
        return []
    m, u, r = _hnf([list(row) for row in rows], ncols, True)
    return [tuple(u[i]) for i in range(r, n)]


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of ``Z^ambient_dim`` stored by its HNF basis."""

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_dim: int) -> "IntegerLattice":
        gens = [tuple(g) for g in gens]
        basis, _ = hermite_normal_form(gens, ambient_dim) if gens else ([], 0)
        return cls(ambient_dim, tuple(basis))

    @classmethod
    def standard(cls, n: int) -> "IntegerLattice":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_dim:
            raise InputShapeError("vector dimension does not match lattice")
        if any(Fraction(x).denominator != 1 for x in v):
            return False
        if not self.basis:
            return not any(v)
        coeffs = solve(transpose(self.basis), v)
        return coeffs is not None and all(c.denominator == 1 for c in coeffs)

    def is_saturated(self) -> bool:
        return self == self.saturation()

    def saturation(self) -> "IntegerLattice":
        """``span_Q(self) cap Z^n``."""
        if not self.basis:
            return self
        return annihilator_lattice(
            nullspace(self.basis, self.ambient_dim), IntegerLattice.standard(self.ambient_dim)
        )


def annihilator_lattice(span: Sequence[Sequence], lattice: IntegerLattice) -> IntegerLattice:
    """``{v in lattice : <v, s> = 0 for all s in span}`` (saturated in ``lattice``)."""
    n = lattice.ambient_dim
    span = [tuple(s) for s in span]
    for s in span:
        if len(s) != n:
            raise InputShapeError(f"span vector of length {len(s)} in dimension {n}")
    span = [s for s in span if any(s)]
    if not span:
        return lattice
    if not lattice.basis:
        return lattice
    cols = [integerize(s) for s in span]
    # pairing matrix: one row per lattice basis vector
    pairing = [[dot(b, s) for s in cols] for b in lattice.basis]
    kernel = integer_kernel(pairing, len(cols))
    gens = [tuple(sum(c * b[j] for c, b in zip(k, lattice.basis)) for j in range(n)) for k in kernel]
    return IntegerLattice.from_generators(gens, n)


def fmt_q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v) -> str:
    return "(" + ", ".join(fmt_q(x) for x in v) + ")"
