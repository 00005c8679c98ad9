"""Command-line entry point: ``momentcut <command> ...``.

Exit codes: 0 success, 2 usage, 3 domain error, 4 certification or
containment failure.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import textio
from .errors import CertificationFailure, MomentcutError
from .exact import fmt_q

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CERT = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rationals(tokens) -> tuple:
    vals = []
    for tok in tokens:
        for part in tok.replace(",", " ").split():
            try:
                vals.append(Fraction(part))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"not a rational number: {part!r}") from None
    return tuple(vals)


def _system(name: str):
    from .lie import build_root_system

    return build_root_system(name)


def cmd_rootsys(args):
    rs = _system(args.name)
    lines = [
        f"system: {rs.name}",
        f"rank: {rs.rank}",
        f"ambient-dim: {rs.ambient_dim}",
        f"positive-roots: {len(rs.positive_roots)}",
    ]
    try:
        lines.append(f"weyl-order: {len(rs.weyl_group())}")
    except MomentcutError:
        lines.append("weyl-order: >100000")
    lines += textio._block("cartan", rs.cartan_matrix)
    lines += textio._block("simple-roots", rs.simple_roots)
    lines += textio._block("inner-product", rs.inner_product)
    lines += textio._block("lattice", rs.lattice.basis)
    lines += textio._block("positive-root-list", rs.positive_roots)
    _emit("\n".join(lines) + "\n", args.output)


def cmd_orbit_hull(args):
    from .oracle import kostant_polytope

    rs = _system(args.name)
    lam = _rationals(args.lam)
    if len(lam) != rs.ambient_dim:
        raise UsageError(f"{rs.name} needs {rs.ambient_dim} coordinates, got {len(lam)}")
    _emit(textio.dump_polyhedron(kostant_polytope(rs, lam)), args.output)


def cmd_cut(args):
    from .cuts import symplectic_cut

    m = textio.load_labeled(_read(args.polytope))
    c = textio.load_cutspec(_read(args.cutspec))
    _emit(textio.dump_cut_result(symplectic_cut(m, c)), args.output)


def cmd_project(args):
    from .polyhedra import project

    p = textio.load_polyhedron(_read(args.polytope))
    m = textio.load_matrix(_read(args.matrix))
    _emit(textio.dump_polyhedron(project(p, m)), args.output)


def cmd_local_cone(args):
    from .cones import local_moment_cone

    d = textio.load_slice_data(_read(args.slicedata))
    x = d.point if d.point is not None else (Fraction(0),) * d.ambient_dim
    _emit(textio.dump_local_cone(local_moment_cone(x, d)), args.output)


def cmd_principal_wall(args):
    from .lie import principal_wall

    rs = _system(args.name)
    p = textio.load_polyhedron(_read(args.polytope))
    _emit(principal_wall(rs, p).name + "\n", args.output)


def cmd_schur_horn(args):
    from .oracle import Spectrum, ToleranceConfig, containment_count, permutohedron, schur_horn_sample

    lam = _rationals(args.lam)
    if args.count < 1:
        raise UsageError("--count must be positive")
    spec = Spectrum(tuple(sorted((float(v) for v in lam), reverse=True)))
    cloud = schur_horn_sample(spec, args.count, args.seed)
    tol = ToleranceConfig(containment_eps=args.eps)
    k = containment_count(cloud, permutohedron(lam), tol)
    if args.output:
        _emit(textio.dump_cloud(cloud), args.output)
    sys.stdout.write(f"generator: {cloud.generator_id}\nseed: {args.seed}\ncontained: {k}/{cloud.count}\n")
    return EXIT_OK if k == cloud.count else EXIT_CERT


def cmd_certify(args):
    from .pipeline import certify_moment_set

    rs = _system(args.name)
    p = textio.load_polyhedron(_read(args.polytope))
    if not args.window:
        raise UsageError("certify needs --window")
    w = textio.load_polyhedron(_read(args.window))
    cert = certify_moment_set(rs, p, w)
    _emit(textio.dump_certificate(cert, rs.name), args.output)


def cmd_render_svg(args):
    from .svg import render_svg

    polys = [textio.load_polyhedron(_read(f)) for f in args.polytopes]
    bad = [p.dim for p in polys if p.dim != 2]
    if bad:
        raise UsageError(f"render-svg draws 2-dimensional sets only, got dimension {bad[0]}")
    if not args.output:
        raise UsageError("render-svg needs -o")
    _emit(render_svg(polys, args.polytopes), args.output)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="momentcut", description="Exact moment-polytope computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(func=fn)
        s.add_argument("-o", "--output", help="write the result here instead of stdout")
        return s

    s = add("rootsys", cmd_rootsys, "print root data")
    s.add_argument("name")
    s = add("orbit-hull", cmd_orbit_hull, "Kostant polytope of a dominant weight")
    s.add_argument("name")
    s.add_argument("lam", nargs="+")
    s = add("cut", cmd_cut, "cut a labeled polytope")
    s.add_argument("polytope")
    s.add_argument("cutspec")
    s = add("project", cmd_project, "linear image of a polyhedron")
    s.add_argument("polytope")
    s.add_argument("matrix")
    s = add("local-cone", cmd_local_cone, "local moment cone from slice data")
    s.add_argument("slicedata")
    s = add("principal-wall", cmd_principal_wall, "principal wall of a polyhedron in the chamber")
    s.add_argument("name")
    s.add_argument("polytope")
    s = add("schur-horn", cmd_schur_horn, "sample Schur-Horn diagonals and check containment")
    s.add_argument("lam", nargs="+")
    s.add_argument("--count", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--eps", type=float, default=1e-9)
    s = add("certify", cmd_certify, "certify a moment set on a window")
    s.add_argument("name")
    s.add_argument("polytope")
    s.add_argument("--window")
    s = add("render-svg", cmd_render_svg, "draw 2-dimensional polyhedra")
    s.add_argument("polytopes", nargs="+")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"momentcut: error: {exc}\n")
        return EXIT_USAGE
    except CertificationFailure as exc:
        sys.stderr.write(f"momentcut: {type(exc).__name__}: {exc}\n")
        return EXIT_CERT
    except MomentcutError as exc:
        sys.stderr.write(f"momentcut: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
