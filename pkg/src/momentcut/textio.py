"""Plain-text file formats.

A document is a list of sections.  The first section is unnamed; later ones
start with a ``[name]`` line.  Inside a section, ``key: value`` lines hold
scalars and ``key: N`` followed by ``N`` whitespace-separated rows holds a
block.  Rationals are written ``p/q`` (integers as ``p``); ``#`` starts a
comment.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import FormatError
from .exact import IntegerLattice, fmt_q

BLOCKS = {
    "halfspaces", "equalities", "vertices", "rays", "lineality", "rows",
    "subalgebra", "weights", "lift", "points", "generators", "basis", "witnesses",
}


class Section:
    def __init__(self, name: str = ""):
        self.name = name
        self.fields: dict = {}
        self.blocks: dict = {}

    def get(self, key, default=None):
        return self.fields.get(key, default)

    def need(self, key):
        if key not in self.fields:
            raise FormatError(f"missing field {key!r}" + (f" in [{self.name}]" if self.name else ""))
        return self.fields[key]

    def block(self, key) -> list:
        return list(self.blocks.get(key, []))


def parse_document(text: str) -> list:
    sections = [Section()]
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    i = 0
    while i < len(lines):
        ln = lines[i]
        i += 1
        if not ln:
            continue
        if ln.startswith("[") and ln.endswith("]"):
            sections.append(Section(ln[1:-1].strip()))
            continue
        if ":" not in ln:
            raise FormatError(f"line {i}: expected 'key: value', got {ln!r}")
        key, val = (t.strip() for t in ln.split(":", 1))
        sec = sections[-1]
        if key in BLOCKS:
            try:
                n = int(val)
            except ValueError:
                raise FormatError(f"line {i}: block {key!r} needs a row count") from None
            rows = []
            while len(rows) < n:
                if i >= len(lines):
                    raise FormatError(f"block {key!r} ends early")
                row = lines[i]
                i += 1
                if row:
                    rows.append(row.split())
            sec.blocks[key] = rows
        else:
            sec.fields[key] = val
    return sections


def q(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational number: {tok!r}") from None


def qrow(row) -> tuple:
    return tuple(q(t) for t in row)


def introw(row) -> tuple:
    out = qrow(row)
    if any(x.denominator != 1 for x in out):
        raise FormatError(f"expected integers, got {' '.join(row)}")
    return tuple(int(x) for x in out)


def fmt_row(xs) -> str:
    return " ".join(fmt_q(x) for x in xs)


def _block(key, rows) -> list:
    return [f"{key}: {len(rows)}"] + [fmt_row(r) for r in rows]


def _sections(text: str, kind: str | None):
    secs = parse_document(text)
    if kind is not None:
        t = secs[0].get("type")
        if t != kind:
            raise FormatError(f"expected a {kind!r} document, found type {t!r}")
    return secs


# -- polyhedra ------------------------------------------------------------------

def polyhedron_lines(p) -> list:
    h, v = p.hrep, p.vrep
    out = [f"dim: {p.dim}"]
    out += _block("halfspaces", [tuple(s.normal) + (s.offset,) for s in h.halfspaces])
    out += _block("equalities", [tuple(e.normal) + (e.offset,) for e in h.equalities])
    out += _block("vertices", v.vertices)
    out += _block("rays", v.rays)
    out += _block("lineality", v.lineality)
    return out


def polyhedron_from_section(sec: Section):
    from .polyhedra import HPolyhedron, Polyhedron, VPolyhedron

    try:
        dim = int(sec.need("dim"))
    except ValueError:
        raise FormatError("dim must be an integer") from None
    if dim < 1:
        raise FormatError("dim must be positive")
    for key, rows in sec.blocks.items():
        want = dim + 1 if key in ("halfspaces", "equalities") else dim
        if key in ("halfspaces", "equalities", "vertices", "rays", "lineality"):
            for r in rows:
                if len(r) != want:
                    raise FormatError(f"{key} rows need {want} entries")
    has_h = "halfspaces" in sec.blocks or "equalities" in sec.blocks
    has_v = any(k in sec.blocks for k in ("vertices", "rays", "lineality"))
    h = v = None
    if has_h:
        split = lambda rows: [(qrow(r[:-1]), q(r[-1])) for r in rows]
        h = HPolyhedron.from_rows(dim, split(sec.block("halfspaces")), split(sec.block("equalities")))
    if has_v:
        v = VPolyhedron(
            dim,
            tuple(qrow(r) for r in sec.block("vertices")),
            tuple(r for r in (qrow(r) for r in sec.block("rays")) if any(r)),
            tuple(r for r in (qrow(r) for r in sec.block("lineality")) if any(r)),
        )
    if h is None and v is None:
        return Polyhedron.universe(dim)
    p = Polyhedron(h=h, v=v)
    if not p.check_consistent():
        raise FormatError("H- and V-representations describe different sets")
    return p


def dump_polyhedron(p) -> str:
    return "\n".join(["type: polyhedron"] + polyhedron_lines(p)) + "\n"


def load_polyhedron(text: str):
    secs = _sections(text, None)
    t = secs[0].get("type", "polyhedron")
    if t not in ("polyhedron", "labeled-polytope", "cutspec"):
        raise FormatError(f"expected a polyhedron, found type {t!r}")
    return polyhedron_from_section(secs[0])


# -- labeled polytopes and cuts ---------------------------------------------------

def _labels_line(labels: dict) -> str:
    return "labels: " + " ".join(f"{k}={v}" for k, v in sorted(labels.items()))


def _parse_labels(val: str) -> dict:
    out = {}
    for tok in val.split():
        try:
            k, v = tok.split("=")
            out[int(k)] = int(v)
        except ValueError:
            raise FormatError(f"bad label entry {tok!r}") from None
    return out


def dump_labeled(m) -> str:
    return "\n".join(["type: labeled-polytope"] + polyhedron_lines(m.polytope) + [_labels_line(m.facet_labels)]) + "\n"


def load_labeled(text: str):
    from .cuts import LabeledPolytope

    secs = _sections(text, None)
    if secs[0].get("type", "polyhedron") not in ("polyhedron", "labeled-polytope"):
        raise FormatError("expected a labeled polytope")
    p = polyhedron_from_section(secs[0])
    return LabeledPolytope(p, _parse_labels(secs[0].get("labels", "")))


def dump_cutspec(c) -> str:
    lines = ["type: cutspec", f"dim: {c.dim}"]
    lines += _block("halfspaces", [tuple(s.normal) + (s.offset,) for s in c.p.halfspaces])
    lines += _block("equalities", [tuple(e.normal) + (e.offset,) for e in c.p.equalities])
    return "\n".join(lines) + "\n"


def load_cutspec(text: str):
    from .cuts import CutSpec
    from .polyhedra import HPolyhedron

    sec = _sections(text, "cutspec")[0]
    dim = int(sec.need("dim"))
    split = lambda rows: [(qrow(r[:-1]), q(r[-1])) for r in rows]
    for r in sec.block("halfspaces") + sec.block("equalities"):
        if len(r) != dim + 1:
            raise FormatError(f"cutspec rows need {dim + 1} entries")
    return CutSpec(HPolyhedron.from_rows(dim, split(sec.block("halfspaces")), split(sec.block("equalities"))))


def _lattice_lines(lat: IntegerLattice) -> list:
    return [f"ambient: {lat.ambient_dim}"] + _block("basis", lat.basis)


def dump_cut_result(r) -> str:
    lines = ["type: cut-result", f"compact: {'true' if r.compact else 'false'}", f"strata: {len(r.strata)}"]
    for k in sorted(r.metadata):
        lines.append(f"note-{k}: {r.metadata[k]}")
    lines += ["", "[cut]"] + polyhedron_lines(r.cut.polytope) + [_labels_line(r.cut.facet_labels)]
    for i, (f, lat) in enumerate(r.strata):
        lines += ["", f"[stratum {i}]"]
        lines.append("active: " + (",".join(str(a) for a in sorted(f.active_set)) or "-"))
        lines.append(f"face-dim: {f.dim}")
        lines.append("relint: " + fmt_row(f.relint_point))
        lines += _lattice_lines(lat)
    return "\n".join(lines) + "\n"


def load_cut_result(text: str):
    from .cuts import CutResult, LabeledPolytope
    from .polyhedra import FaceDescriptor

    secs = _sections(text, "cut-result")
    top = secs[0]
    byname = {s.name: s for s in secs[1:]}
    if "cut" not in byname:
        raise FormatError("cut-result without a [cut] section")
    cs = byname["cut"]
    m = LabeledPolytope(polyhedron_from_section(cs), _parse_labels(cs.get("labels", "")))
    strata = []
    for i in range(int(top.need("strata"))):
        s = byname.get(f"stratum {i}")
        if s is None:
            raise FormatError(f"missing [stratum {i}]")
        act = s.need("active")
        active = frozenset() if act == "-" else frozenset(int(a) for a in act.split(","))
        f = FaceDescriptor(active, int(s.need("face-dim")), qrow(s.need("relint").split()))
        lat = IntegerLattice(int(s.need("ambient")), tuple(introw(r) for r in s.block("basis")))
        strata.append((f, lat))
    meta = {k[5:]: v for k, v in top.fields.items() if k.startswith("note-")}
    return CutResult(m, tuple(strata), top.need("compact") == "true", meta)


# -- matrices, slice data, local cones ---------------------------------------------

def dump_matrix(rows) -> str:
    rows = [tuple(r) for r in rows]
    return "\n".join(["type: matrix", f"cols: {len(rows[0]) if rows else 0}"] + _block("rows", rows)) + "\n"


def load_matrix(text: str) -> list:
    sec = _sections(text, "matrix")[0]
    rows = [qrow(r) for r in sec.block("rows")]
    cols = int(sec.need("cols"))
    if not rows or any(len(r) != cols for r in rows):
        raise FormatError(f"matrix rows must have {cols} entries")
    return rows


def dump_slice_data(d) -> str:
    lines = ["type: slicedata", f"dim: {d.ambient_dim}", f"group-order: {d.structure_group_order}"]
    if d.point is not None:
        lines.append("point: " + fmt_row(d.point))
    lines += _block("subalgebra", d.stabilizer_subalgebra)
    lines += _block("weights", d.weights)
    lines += _block("lift", d.lift if d.stabilizer_subalgebra else [])
    return "\n".join(lines) + "\n"


def load_slice_data(text: str):
    from .cones import SliceRepData

    sec = _sections(text, "slicedata")[0]
    dim = int(sec.need("dim"))
    pt = sec.get("point")
    sub = [qrow(r) for r in sec.block("subalgebra")]
    lift = [qrow(r) for r in sec.block("lift")]
    return SliceRepData(
        dim,
        tuple(sub),
        tuple(qrow(r) for r in sec.block("weights")),
        tuple(lift),
        int(sec.get("group-order", "1")),
        qrow(pt.split()) if pt else None,
    )


def dump_local_cone(c) -> str:
    lines = ["type: local-cone", "vertex: " + fmt_row(c.vertex)]
    lines += _block("lineality", c.lineality)
    lines += _block("generators", c.generators)
    lines += ["", "[polyhedron]"] + polyhedron_lines(c.polyhedron)
    return "\n".join(lines) + "\n"


def load_local_cone(text: str):
    from .cones import LocalMomentCone

    sec = _sections(text, "local-cone")[0]
    return LocalMomentCone(
        qrow(sec.need("vertex").split()),
        tuple(introw(r) for r in sec.block("lineality")),
        tuple(introw(r) for r in sec.block("generators")),
    )


# -- clouds and certificates ---------------------------------------------------------

def dump_cloud(cloud) -> str:
    pts = np.asarray(cloud.points, dtype=float)
    lines = [
        "type: cloud",
        f"generator_id: {cloud.generator_id}",
        f"seed: {cloud.seed}",
        f"count: {pts.shape[0]}",
        f"dim: {pts.shape[1]}",
        f"points: {pts.shape[0]}",
    ]
    lines += [" ".join(repr(float(x)) for x in row) for row in pts]
    return "\n".join(lines) + "\n"


def load_cloud(text: str):
    from .oracle import SampleCloud

    sec = _sections(text, "cloud")[0]
    dim = int(sec.need("dim"))
    try:
        pts = np.array([[float(t) for t in r] for r in sec.block("points")], dtype=float).reshape(-1, dim)
    except ValueError:
        raise FormatError("cloud points must be floats") from None
    if pts.shape[0] != int(sec.need("count")):
        raise FormatError("cloud count does not match the number of points")
    return SampleCloud(pts, int(sec.need("seed")), sec.need("generator_id"))


def dump_certificate(c, system: str) -> str:
    lines = ["type: certificate", f"system: {system}", f"wall: {c.chamber_wall.name}"]
    lines.append("wall-zero-set: " + (",".join(str(i + 1) for i in sorted(c.chamber_wall.zero_set)) or "-"))
    lines += _block("witnesses", c.witnesses)
    for name, p in (("assembled", c.assembled), ("local_part", c.local_part), ("window", c.window)):
        lines += ["", f"[{name}]"] + polyhedron_lines(p)
    return "\n".join(lines) + "\n"


def load_certificate(text: str):
    from .lie import build_root_system, make_wall
    from .pipeline import MomentSetCertificate

    secs = _sections(text, "certificate")
    top = secs[0]
    rs = build_root_system(top.need("system"))
    zs = top.need("wall-zero-set")
    try:
        zero = frozenset() if zs == "-" else frozenset(int(t) - 1 for t in zs.split(","))
    except ValueError:
        raise FormatError(f"bad wall-zero-set {zs!r}") from None
    if any(not 0 <= i < rs.rank for i in zero):
        raise FormatError(f"wall-zero-set {zs!r} does not fit {rs.name}")
    polys = {s.name: polyhedron_from_section(s) for s in secs[1:]}
    missing = {"assembled", "local_part", "window"} - set(polys)
    if missing:
        raise FormatError(f"certificate lacks section [{sorted(missing)[0]}]")
    witnesses = tuple(qrow(r) for r in top.block("witnesses"))
    return MomentSetCertificate(
        make_wall(rs, zero), polys["local_part"], polys["window"], polys["assembled"], witnesses
    )
