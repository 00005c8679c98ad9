"""Root systems, Weyl groups, the dominant chamber and its walls.

Coordinates on t* per family:

* ``A`` and ``G`` -- fundamental-weight coordinates, so the chamber is the
  nonnegative orthant and ``x_i = <x, alpha_i^vee>``;
* ``B``, ``C``, ``D`` -- the standard coordinates of ``R^n``;
* ``A`` with ``model="unitary"`` -- ``R^(n+1)`` for ``U(n+1)``, where the
  trace direction is central;
* ``T`` -- a torus: no roots, the chamber is all of ``R^n``.

The invariant form is normalised so that short roots have squared length 2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InputShapeError, NotInChamberError, UnsupportedTypeError
from .exact import (
    IntegerLattice,
    ONE,
    ZERO,
    annihilator_lattice,
    dot,
    fmt_vec,
    identity,
    integerize,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    primitive,
    qvec,
    rref,
    solve,
    transpose,
)
from .polyhedra import HalfSpace, HPolyhedron, Polyhedron

WEYL_ORDER_CAP = 10**5

_NAME = re.compile(r"^\s*([ABCDGT])\s*(\d+)\s*$", re.IGNORECASE)


def parse_name(name: str):
    """``"A2"`` -> ``("A", 2)``; validity is checked by build_root_system."""
    m = _NAME.match(name)
    if not m:
        raise UnsupportedTypeError(f"cannot parse root system name {name!r}")
    return m.group(1).upper(), int(m.group(2))


def _cartan_gram(family: str, rank: int):
    """Gram matrix of the simple roots (short roots have length^2 = 2)."""
    if family == "A":
        return [[Fraction(2 if i == j else (-1 if abs(i - j) == 1 else 0)) for j in range(rank)] for i in range(rank)]
    if family == "G":
        return [[Fraction(2), Fraction(-3)], [Fraction(-3), Fraction(6)]]
    raise AssertionError(family)


def _standard_roots(family: str, n: int):
    """Simple roots and form scale for B/C/D in R^n."""
    e = lambda i: [ZERO] * i + [ONE] + [ZERO] * (n - i - 1)
    diffs = [tuple(a - b for a, b in zip(e(i), e(i + 1))) for i in range(n - 1)]
    if family == "B":
        return diffs + [tuple(e(n - 1))], Fraction(2)
    if family == "C":
        return diffs + [tuple(2 * x for x in e(n - 1))], Fraction(1)
    if family == "D":
        return diffs + [tuple(a + b for a, b in zip(e(n - 2), e(n - 1)))], Fraction(1)
    raise AssertionError(family)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element acting on column vectors: ``x -> matrix . x``.

    ``word`` lists simple-reflection indices with the leftmost factor applied
    last: the element is ``s_word[0] s_word[1] ... s_word[-1]``.
    """

    matrix: tuple
    word: tuple = ()

    def __call__(self, x):
        return mat_vec(self.matrix, qvec(x))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(mat_mul(self.matrix, other.matrix), self.word + other.word)


@dataclass(frozen=True)
class ChamberWall:
    """An open face of the dominant chamber.

    ``zero_set`` holds the simple-root indices whose coroot pairing vanishes
    on the wall.  ``complement_lattice`` is the sublattice of the integral
    lattice annihilating the wall's span (the torus of ``[g_tau, g_tau]``).
    """

    zero_set: frozenset
    dim: int
    centralizer_roots: tuple
    center_span: tuple
    complement_lattice: IntegerLattice
    relint_point: tuple

    @property
    def name(self) -> str:
        return wall_name(self.zero_set, self.dim)


def wall_name(zero_set, dim: int | None = None) -> str:
    if dim == 0:
        return "origin"
    if not zero_set:
        return "interior"
    return "zero:" + ",".join(str(i + 1) for i in sorted(zero_set))


def parse_wall_name(text: str, rs: "RootSystem | None" = None) -> frozenset:
    text = text.strip()
    if text == "interior":
        return frozenset()
    if text == "origin":
        if rs is None:
            raise InputShapeError("'origin' needs a root system to resolve")
        return frozenset(range(len(rs.simple_roots)))
    if not text.startswith("zero:"):
        raise InputShapeError(f"bad wall id {text!r}")
    return frozenset(int(t) - 1 for t in text[5:].split(","))


class RootSystem:
    """A reduced root system realised in explicit rational coordinates."""

    def __init__(self, family: str, rank: int, model: str = "default"):
        family = family.upper()
        self.family, self.rank, self.model = family, rank, model
        if family == "T":
            if not 1 <= rank <= 8:
                raise UnsupportedTypeError(f"T{rank} is not supported")
            self.ambient_dim = rank
            self.inner_product = identity(rank)
            self.simple_roots = ()
        elif family == "A" and model == "unitary":
            if not 1 <= rank <= 8:
                raise UnsupportedTypeError(f"A{rank} is not supported")
            n = rank + 1
            self.ambient_dim = n
            self.inner_product = identity(n)
            self.simple_roots = tuple(
                tuple(Fraction(int(k == i) - int(k == i + 1)) for k in range(n)) for i in range(rank)
            )
        elif family in ("A", "G"):
            if family == "A" and not 1 <= rank <= 8:
                raise UnsupportedTypeError(f"A{rank} is not supported")
            if family == "G" and rank != 2:
                raise UnsupportedTypeError("G2 is the only G-type system")
            gram = _cartan_gram(family, rank)
            # simple roots in weight coordinates: <alpha_j, alpha_i^vee>
            rows = tuple(tuple(2 * gram[j][i] / gram[i][i] for i in range(rank)) for j in range(rank))
            rinv = inverse(rows)
            self.ambient_dim = rank
            self.simple_roots = rows
            self.inner_product = mat_mul(mat_mul(rinv, gram), transpose(rinv))
        elif family in ("B", "C", "D"):
            lo = 3 if family == "D" else 2
            if not lo <= rank <= 8:
                raise UnsupportedTypeError(f"{family}{rank} is not supported")
            roots, s = _standard_roots(family, rank)
            self.ambient_dim = rank
            self.simple_roots = tuple(roots)
            self.inner_product = tuple(
                tuple(s if i == j else ZERO for j in range(rank)) for i in range(rank)
            )
        else:
            raise UnsupportedTypeError(f"family {family!r} is not supported")
        if model not in ("default", "unitary"):
            raise UnsupportedTypeError(f"unknown coordinate model {model!r}")
        if model == "unitary" and family != "A":
            raise UnsupportedTypeError("the unitary model exists only for type A")

    # -- basic pairings ------------------------------------------------------
    @property
    def name(self) -> str:
        base = f"{self.family}{self.rank}"
        return base if self.model == "default" else f"{base}/{self.model}"

    def form(self, x, y) -> Fraction:
        return dot(x, mat_vec(self.inner_product, y))

    def coroot_functional(self, alpha) -> tuple:
        """The vector ``c`` with ``c . x = <x, alpha^vee>``."""
        aa = self.form(alpha, alpha)
        return tuple(2 * c / aa for c in mat_vec(self.inner_product, alpha))

    @cached_property
    def simple_coroot_functionals(self) -> tuple:
        return tuple(self.coroot_functional(a) for a in self.simple_roots)

    def pairings(self, x) -> tuple:
        """``(<x, alpha_i^vee>)_i`` over the simple roots."""
        x = qvec(x)
        return tuple(dot(c, x) for c in self.simple_coroot_functionals)

    @cached_property
    def cartan_matrix(self) -> tuple:
        """``A[i][j] = <alpha_i, alpha_j^vee>``."""
        return tuple(
            tuple(int(dot(c, a)) for c in self.simple_coroot_functionals) for a in self.simple_roots
        )

    def reflect(self, i: int, x) -> tuple:
        a = self.simple_roots[i]
        t = dot(self.simple_coroot_functionals[i], x)
        return tuple(xi - t * ai for xi, ai in zip(x, a))

    def reflection(self, i: int) -> WeylElement:
        n = self.ambient_dim
        cols = [self.reflect(i, e) for e in identity(n)]
        return WeylElement(transpose(cols), (i,))

    # -- roots ---------------------------------------------------------------
    def simple_coefficients(self, x) -> tuple:
        """Coordinates of ``x`` in the simple-root basis (``x`` in their span)."""
        s = self.simple_roots
        gram = [[dot(a, b) for b in s] for a in s]
        return solve(gram, [dot(a, x) for a in s])

    @cached_property
    def roots(self) -> tuple:
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank if self.simple_roots else 0):
                    y = self.reflect(i, r)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen, key=self._root_key))

    def _root_key(self, r):
        c = self.simple_coefficients(r)
        return (sum(c) < 0, abs(sum(c)), tuple(-x for x in c))

    @cached_property
    def positive_roots(self) -> tuple:
        out = [r for r in self.roots if all(c >= 0 for c in self.simple_coefficients(r))]
        return tuple(sorted(out, key=lambda r: (sum(self.simple_coefficients(r)), self.simple_coefficients(r))))

    @cached_property
    def lattice(self) -> IntegerLattice:
        """Integral lattice (coroot lattice, plus the centre for the unitary model and tori)."""
        n = self.ambient_dim
        if self.family == "T" or self.model == "unitary":
            return IntegerLattice.standard(n)
        gens = [integerize(c) for c in self.simple_coroot_functionals]
        return IntegerLattice.from_generators(gens, n)

    # -- Weyl group ----------------------------------------------------------
    def weyl_group(self, cap: int = WEYL_ORDER_CAP) -> list:
        """All Weyl elements, breadth first from the identity (shortest words)."""
        e = WeylElement(identity(self.ambient_dim), ())
        gens = [self.reflection(i) for i in range(len(self.simple_roots))]
        seen = {e.matrix: e}
        frontier = [e]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    u = s * w
                    if u.matrix not in seen:
                        seen[u.matrix] = u
                        nxt.append(u)
                        if len(seen) > cap:
                            raise UnsupportedTypeError(f"Weyl group of {self.name} exceeds {cap} elements")
            frontier = nxt
        return list(seen.values())

    def __repr__(self):
        return f"RootSystem({self.name})"


def build_root_system(family: str, rank: int | None = None, model: str = "default") -> RootSystem:
    """``build_root_system("A", 2)`` or ``build_root_system("A2")``."""
    if rank is None:
        family, rank = parse_name(family)
    return RootSystem(family, rank, model)


def chamber(rs: RootSystem) -> HPolyhedron:
    """The closed dominant chamber ``{x : <x, alpha^vee> >= 0}``."""
    return HPolyhedron(
        rs.ambient_dim,
        tuple(HalfSpace(primitive(c), Fraction(0)) for c in rs.simple_coroot_functionals),
    )


def chamber_polyhedron(rs: RootSystem) -> Polyhedron:
    return Polyhedron(h=chamber(rs))


def is_dominant(rs: RootSystem, x) -> bool:
    return all(t >= 0 for t in rs.pairings(x))


def weyl_orbit(rs: RootSystem, x) -> list:
    """The Weyl orbit of ``x`` by closure under simple reflections, sorted."""
    x = qvec(x)
    if len(x) != rs.ambient_dim:
        raise InputShapeError("point dimension mismatch")
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for i in range(len(rs.simple_roots)):
                z = rs.reflect(i, y)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return sorted(seen)


def dominant_projection(rs: RootSystem, x):
    """``(x_plus, w)`` with ``w(x) = x_plus`` dominant and ``w`` of minimal length."""
    x = qvec(x)
    if len(x) != rs.ambient_dim:
        raise InputShapeError("point dimension mismatch")
    applied = []
    y = x
    while True:
        p = rs.pairings(y)
        i = next((i for i, t in enumerate(p) if t < 0), None)
        if i is None:
            break
        y = rs.reflect(i, y)
        applied.append(i)
    w = WeylElement(identity(rs.ambient_dim), ())
    for i in applied:
        w = rs.reflection(i) * w
    return y, w


def _wall_relint(rs: RootSystem, zero_set) -> tuple:
    """Least-norm point with pairing 0 on ``zero_set`` and 1 elsewhere."""
    c = rs.simple_coroot_functionals
    if not c:
        return tuple(ZERO for _ in range(rs.ambient_dim))
    target = [ZERO if i in zero_set else ONE for i in range(len(c))]
    gram = [[dot(a, b) for b in c] for a in c]
    y = solve(gram, target)
    return tuple(sum(yi * ci[k] for yi, ci in zip(y, c)) for k in range(rs.ambient_dim))


def make_wall(rs: RootSystem, zero_set) -> ChamberWall:
    zero_set = frozenset(zero_set)
    c = rs.simple_coroot_functionals
    x = _wall_relint(rs, zero_set)
    cons = [c[i] for i in sorted(zero_set)]
    span = nullspace(cons, rs.ambient_dim) if cons else [tuple(r) for r in identity(rs.ambient_dim)]
    span = [primitive(v) for v in span]
    cent = tuple(a for a in rs.roots if dot(x, mat_vec(rs.inner_product, a)) == 0)
    dim = rs.ambient_dim - (len(rref(cons, rs.ambient_dim)[0]) if cons else 0)
    return ChamberWall(
        zero_set,
        dim,
        cent,
        tuple(span),
        annihilator_lattice(span, rs.lattice),
        x,
    )


def walls(rs: RootSystem) -> list:
    """One wall per subset of simple roots, ordered by zero-set size then members."""
    from itertools import combinations

    k = len(rs.simple_roots)
    out = []
    for size in range(k + 1):
        for z in combinations(range(k), size):
            out.append(make_wall(rs, z))
    return out


def wall_polyhedron(rs: RootSystem, wall: ChamberWall) -> Polyhedron:
    """The closure of ``wall``."""
    c = rs.simple_coroot_functionals
    ineqs = [(c[i], 0) for i in range(len(c)) if i not in wall.zero_set]
    eqs = [(c[i], 0) for i in sorted(wall.zero_set)]
    return Polyhedron.from_h(rs.ambient_dim, ineqs, eqs)


def wall_of_point(rs: RootSystem, x) -> ChamberWall:
    if not is_dominant(rs, x):
        raise NotInChamberError(f"{fmt_vec(x)} is not dominant")
    return make_wall(rs, [i for i, t in enumerate(rs.pairings(x)) if t == 0])


def natural_slice_walls(rs: RootSystem, tau: ChamberWall) -> list:
    """Walls whose closure contains ``tau``."""
    return [w for w in walls(rs) if w.zero_set <= tau.zero_set]


def principal_wall(rs: RootSystem, delta: Polyhedron) -> ChamberWall:
    """The smallest wall whose closure contains ``delta``.

    Its zero set is every simple root whose coroot pairing vanishes on all
    generators of ``delta``; the relative interior of ``delta`` lies in the
    open wall, so ``delta & wall`` is dense in ``delta``.
    """
    if delta.dim != rs.ambient_dim:
        raise InputShapeError("dimension mismatch")
    if delta.is_empty:
        raise NotInChamberError("principal_wall() of the empty set")
    if not delta.issubset(chamber_polyhedron(rs)):
        raise NotInChamberError("delta is not contained in the dominant chamber")
    verts, rays, lin = delta.generators()
    c = rs.simple_coroot_functionals
    zero = [
        i
        for i in range(len(c))
        if all(dot(c[i], g) == 0 for g in verts + rays + lin)
    ]
    return make_wall(rs, zero)
