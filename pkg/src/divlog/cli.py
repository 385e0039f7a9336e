"""Batch front end: ``divlog GROUP VERB FILE...``.

Every input is a JSON document with a ``kind`` and ``version`` field,
validated against ``schema.json``.  Results go to standard output as
canonical JSON (sorted keys, two-space indent) or as a text report.
Exit codes: 0 success, 1 domain error, 2 parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable, NamedTuple, Sequence

import jsonschema

from divlog import blowup, deform, divided, fan, fanspace, monoid
from divlog.cones import RankTooLarge
from divlog.lattice import IntMatrix

KINDS = ("monoid", "hom", "fan", "subdivision", "ideal", "rep", "space", "request")
VERSION = "1"


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str, source: str = ""):
        self.line, self.column, self.message, self.source = line, column, message, source
        super().__init__(f"{source or '<input>'}:{line}:{column}: {message}")


class ValidationError(Exception):
    def __init__(self, path: str, message: str):
        self.path, self.message = path or "/", message
        super().__init__(f"{self.path}: {message}")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Document:
    kind: str
    data: dict


# -- parsing ---------------------------------------------------------------

class _NotInteger:
    """Stand-in for non-integer numeric literals, so the schema rejects them."""

    def __init__(self, text: str):
        self.text = text

    def __repr__(self) -> str:
        return self.text


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValidationError("", f"duplicate key {k!r}")
        out[k] = v
    return out


_SCHEMA = json.loads(resources.files("divlog").joinpath("schema.json").read_text())
_VALIDATORS = {
    k: jsonschema.Draft202012Validator({"$ref": f"#/$defs/{k}", "$defs": _SCHEMA["$defs"]})
    for k in KINDS
}


def _path(parts) -> str:
    return "".join(f"/{p}" for p in parts)


def parse(text: str, source: str = "") -> Document:
    """Parse and validate one document."""
    try:
        obj = json.loads(text, parse_float=_NotInteger, parse_constant=_NotInteger,
                         object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.colno, exc.msg, source) from None
    return from_object(obj)


def from_object(obj: Any) -> Document:
    if not isinstance(obj, dict):
        raise ValidationError("", "a document must be a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ValidationError("/kind", f"unknown document kind {kind!r}")
    err = jsonschema.exceptions.best_match(_VALIDATORS[kind].iter_errors(obj))
    if err is not None:
        raise ValidationError(_path(err.absolute_path), err.message)
    _check(obj, "")
    return Document(kind, _canon(obj))


def _dims(obj: dict) -> int:
    return obj["ambient_rank"] + len(obj.get("torsion", []))


def _check_matrix(rows, nrows: int, ncols: int, path: str) -> None:
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ValidationError(path, f"matrix must have shape {nrows}x{ncols}")


def _check_fan(obj: dict, path: str) -> None:
    n = obj["ambient_rank"]
    for i, cone in enumerate(obj["max_cones"]):
        for j, ray in enumerate(cone):
            p = f"{path}/max_cones/{i}/{j}"
            if len(ray) != n:
                raise ValidationError(p, f"rays must have length {n}")
            if not any(ray):
                raise ValidationError(p, "rays must be nonzero")


def _check(obj: dict, path: str) -> None:
    kind = obj["kind"]
    if kind == "monoid":
        for i, g in enumerate(obj["generators"]):
            if len(g) != _dims(obj):
                raise ValidationError(f"{path}/generators/{i}",
                                      f"generators must have length {_dims(obj)}")
    elif kind == "fan":
        _check_fan(obj, path)
    elif kind == "hom":
        _check(obj["source"], path + "/source")
        _check(obj["target"], path + "/target")
        _check_matrix(obj["matrix"], _dims(obj["target"]), _dims(obj["source"]), path + "/matrix")
    elif kind == "ideal":
        _check(obj["monoid"], path + "/monoid")
        for i, g in enumerate(obj["generators"]):
            if len(g) != _dims(obj["monoid"]):
                raise ValidationError(f"{path}/generators/{i}",
                                      "generators must match the monoid's dimension")
    elif kind == "subdivision":
        _check(obj["base"], path + "/base")
        _check(obj["fan"], path + "/fan")
        if obj["base"]["ambient_rank"] != obj["fan"]["ambient_rank"]:
            raise ValidationError(path + "/fan", "ambient ranks differ")
    elif kind == "rep":
        for key in ("source", "source_subdivision", "target"):
            _check(obj[key], f"{path}/{key}")
        if obj["source"]["ambient_rank"] != obj["source_subdivision"]["ambient_rank"]:
            raise ValidationError(path + "/source_subdivision", "ambient ranks differ")
        _check_matrix(obj["matrix"], obj["target"]["ambient_rank"],
                      obj["source"]["ambient_rank"], path + "/matrix")
    elif kind == "space":
        charts = obj["charts"]
        for i, c in enumerate(charts):
            _check(c, f"{path}/charts/{i}")
        seen = set()
        for k, ov in enumerate(obj["overlaps"]):
            p = f"{path}/overlaps/{k}"
            i, j = ov["i"], ov["j"]
            if i >= len(charts) or j >= len(charts):
                raise ValidationError(p, "overlap refers to a missing chart")
            if (i, j) in seen:
                raise ValidationError(p, f"overlap ({i}, {j}) is listed twice")
            seen.add((i, j))
            n = charts[i]["ambient_rank"]
            _check_fan({"ambient_rank": n, "max_cones": ov["cones"]}, p)
            _check_matrix(ov["transition"], charts[j]["ambient_rank"], n, p + "/transition")
    elif kind == "request":
        for k, d in enumerate(obj["inputs"]):
            _check(d, f"{path}/inputs/{k}")


def _sorted_unique(vs) -> list:
    return sorted({tuple(v) for v in vs})


def _canon_fan_cones(cones) -> list:
    return sorted(sorted(list(r) for r in c) for c in cones)


def _canon(obj: dict) -> dict:
    """Canonical ordering wherever order carries no meaning."""
    kind = obj["kind"]
    out = dict(obj)
    if kind == "monoid":
        out["generators"] = [list(g) for g in _sorted_unique(obj["generators"])]
        out["torsion"] = list(obj.get("torsion", []))
    elif kind == "fan":
        out["max_cones"] = _canon_fan_cones(obj["max_cones"])
    elif kind == "ideal":
        out["monoid"] = _canon(obj["monoid"])
        out["generators"] = [list(g) for g in _sorted_unique(obj["generators"])]
    elif kind in ("hom", "subdivision", "rep"):
        for key in ("source", "target", "base", "fan", "source_subdivision"):
            if key in obj:
                out[key] = _canon(obj[key])
    elif kind == "space":
        out["charts"] = [_canon(c) for c in obj["charts"]]
        out["overlaps"] = sorted(
            ({**ov, "cones": _canon_fan_cones(ov["cones"])} for ov in obj["overlaps"]),
            key=lambda ov: (ov["i"], ov["j"]))
    elif kind == "request":
        out["inputs"] = [_canon(d) for d in obj["inputs"]]
        if "flags" in obj:
            flags = dict(obj["flags"])
            if "opens" in flags:
                flags["opens"] = sorted(set(flags["opens"]))
            out["flags"] = flags
    return out


def _emit(obj: Any, level: int) -> str:
    pad = "  " * level
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}  {json.dumps(k, ensure_ascii=False)}: {_emit(obj[k], level + 1)}"
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and not _is_leaf(obj):
        items = [f"{pad}  {_emit(v, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj, separators=(", ", ": "), ensure_ascii=False)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, integer arrays kept on one line."""
    return _emit(obj, 0) + "\n"


def print_document(doc: Document) -> str:
    return dumps(doc.data)


# -- documents <-> objects -------------------------------------------------

def _vec(v) -> list[int]:
    return [int(x) for x in v]


def _matrix(rows, nrows: int, ncols: int) -> IntMatrix:
    return IntMatrix.from_rows([tuple(r) for r in rows], ncols) if nrows else IntMatrix.zeros(0, ncols)


def matrix_rows(m: IntMatrix) -> list[list[int]]:
    return [list(r) for r in m.rows()]


def to_monoid(d: dict, path: str = "") -> monoid.FsMonoid:
    try:
        return monoid.FsMonoid(d["ambient_rank"], [tuple(g) for g in d["generators"]],
                               tuple(d.get("torsion", [])))
    except ValueError as exc:
        raise ValidationError(path, str(exc)) from None


def monoid_doc(m: monoid.FsMonoid) -> dict:
    return _canon({"kind": "monoid", "version": VERSION, "ambient_rank": m.ambient_rank,
                   "generators": [_vec(g) for g in m.generators], "torsion": list(m.torsion)})


def to_hom(d: dict, path: str = "") -> monoid.MonoidHom:
    s, t = to_monoid(d["source"], path + "/source"), to_monoid(d["target"], path + "/target")
    try:
        return monoid.MonoidHom(s, t, _matrix(d["matrix"], t.dim, s.dim))
    except monoid.MonoidError as exc:
        raise ValidationError(path + "/matrix", str(exc)) from None


def to_fan(d: dict, path: str = "", valid: bool = True) -> fan.Fan:
    n = d["ambient_rank"]
    _require_rank(n, path)
    cones = []
    for i, rays in enumerate(d["max_cones"]):
        try:
            cones.append(fan.Cone(n, tuple(tuple(r) for r in rays)))
        except fan.ConeError as exc:
            raise ValidationError(f"{path}/max_cones/{i}", str(exc)) from None
    f = fan.Fan(n, tuple(cones))
    if valid:
        defect = fan.validate_fan(f)
        if defect is not None:
            raise ValidationError(path + "/max_cones", defect.message)
    return f


def _require_rank(n: int, path: str) -> None:
    if n > 4:
        raise ValidationError(path + "/ambient_rank", "ambient rank above 4 is not supported")


def fan_doc(f: fan.Fan) -> dict:
    return _canon({"kind": "fan", "version": VERSION, "ambient_rank": f.ambient_rank,
                   "max_cones": f.as_lists()})


def to_subdivision(d: dict, path: str = "") -> fan.Subdivision:
    base, f = to_fan(d["base"], path + "/base"), to_fan(d["fan"], path + "/fan")
    try:
        return fan.Subdivision(base, f)
    except fan.NotASubdivision as exc:
        raise ValidationError(path + "/fan", str(exc)) from None


def subdivision_doc(s: fan.Subdivision) -> dict:
    return {"kind": "subdivision", "version": VERSION, "base": fan_doc(s.base),
            "fan": fan_doc(s.fan)}


def to_ideal(d: dict, path: str = "") -> monoid.MonoidIdeal:
    m = to_monoid(d["monoid"], path + "/monoid")
    try:
        return monoid.MonoidIdeal(m, tuple(tuple(g) for g in d["generators"]))
    except monoid.MonoidError as exc:
        raise ValidationError(path + "/generators", str(exc)) from None


def ideal_doc(i: monoid.MonoidIdeal) -> dict:
    return _canon({"kind": "ideal", "version": VERSION, "monoid": monoid_doc(i.parent),
                   "generators": [_vec(g) for g in i.generators]})


def to_rep(d: dict, path: str = "") -> divided.DividedMorphismRep:
    src = to_fan(d["source"], path + "/source")
    sub = to_fan(d["source_subdivision"], path + "/source_subdivision")
    tgt = to_fan(d["target"], path + "/target")
    try:
        return divided.DividedMorphismRep(
            src, fan.Subdivision(src, sub), tgt,
            _matrix(d["matrix"], tgt.ambient_rank, src.ambient_rank))
    except fan.FanError as exc:
        raise ValidationError(path, str(exc)) from None


def rep_doc(r: divided.DividedMorphismRep) -> dict:
    return {"kind": "rep", "version": VERSION, "source": fan_doc(r.source),
            "source_subdivision": fan_doc(r.source_subdivision.fan),
            "target": fan_doc(r.target), "matrix": matrix_rows(r.matrix)}


def to_space(d: dict, path: str = "") -> fanspace.FanSpace:
    charts = tuple(to_fan(c, f"{path}/charts/{i}") for i, c in enumerate(d["charts"]))
    overlaps, transitions = {}, {}
    for k, ov in enumerate(d["overlaps"]):
        i, j = ov["i"], ov["j"]
        p = f"{path}/overlaps/{k}"
        try:
            cones = tuple(fan.Cone(charts[i].ambient_rank, tuple(tuple(r) for r in c))
                          for c in ov["cones"])
            overlaps[i, j] = fanspace.OpenSubfan(charts[i], cones)
        except fan.FanError as exc:
            raise ValidationError(p + "/cones", str(exc)) from None
        transitions[i, j] = _matrix(ov["transition"], charts[j].ambient_rank,
                                    charts[i].ambient_rank)
    return fanspace.FanSpace(charts, overlaps, transitions)


def _cone_list(c: fan.Cone) -> list[list[int]]:
    return [_vec(r) for r in c.rays]


# -- commands ----------------------------------------------------------------

@dataclass
class Flags:
    ray: list[int] | None = None
    cone: int | None = None
    n_max: int | None = None
    deg_max: int | None = None
    opens: list[str] | None = None
    matrix: list[list[int]] | None = None

    def merged(self, other: Flags) -> Flags:
        """``other`` wins where it is set."""
        return Flags(**{k: (getattr(other, k) if getattr(other, k) is not None else v)
                        for k, v in vars(self).items()})


class Command(NamedTuple):
    kinds: tuple[str, ...]
    fn: Callable[[list[dict], Flags, list[str]], dict]


COMMANDS: dict[tuple[str, ...], Command] = {}


def command(*name: str, kinds: Sequence[str]):
    def register(fn):
        COMMANDS[name] = Command(tuple(kinds), fn)
        return fn
    return register


def _flag_matrix(flags: Flags, nrows: int, ncols: int) -> IntMatrix:
    if flags.matrix is None:
        if nrows != ncols:
            raise UsageError("--matrix is required when the ranks differ")
        return IntMatrix.identity(nrows)
    _check_matrix(flags.matrix, nrows, ncols, "/flags/matrix")
    return _matrix(flags.matrix, nrows, ncols)


def _cone_index(flags: Flags, f: fan.Fan) -> int:
    k = flags.cone or 0
    if not 0 <= k < len(f.max_cones):
        raise UsageError(f"--cone {k} is out of range")
    return k


@command("monoid", "saturate", kinds=["monoid"])
def _saturate(docs, flags, trace):
    m = to_monoid(docs[0])
    s = monoid.saturate(m)
    trace.append(f"saturated: {m.is_saturated}; saturation generators {[list(g) for g in s.generators]}")
    return monoid_doc(s)


@command("monoid", "hilbert", kinds=["monoid"])
def _hilbert(docs, flags, trace):
    m = to_monoid(docs[0])
    return {"hilbert_basis": [_vec(g) for g in m.hilbert],
            "unit_basis": [_vec(g) for g in m.unit_basis],
            "torsion_units": [{"element": _vec(g), "order": t} for g, t in m.torsion_units],
            "saturated": m.is_saturated}


@command("monoid", "sharpen", kinds=["monoid"])
def _sharpen(docs, flags, trace):
    sq = monoid.sharpen(to_monoid(docs[0]))
    return {"monoid": monoid_doc(sq.monoid), "projection": matrix_rows(sq.matrix)}


@command("monoid", "pushout", kinds=["hom", "hom"])
def _pushout(docs, flags, trace):
    f, g = to_hom(docs[0], "/inputs/0"), to_hom(docs[1], "/inputs/1")
    p = monoid.saturated_pushout(f, g)
    return {"monoid": monoid_doc(p.monoid), "left": matrix_rows(p.left.matrix),
            "right": matrix_rows(p.right.matrix)}


@command("monoid", "exact", kinds=["hom"])
def _exact(docs, flags, trace):
    return {"exact": monoid.is_exact(to_hom(docs[0]))}


@command("monoid", "kummer", kinds=["hom"])
def _kummer(docs, flags, trace):
    return {"kummer": monoid.is_kummer(to_hom(docs[0]))}


@command("monoid", "neat", kinds=["hom"])
def _neat(docs, flags, trace):
    ns = monoid.neat_splitting(to_hom(docs[0]))
    return {"retraction": matrix_rows(ns.retraction),
            "complement": [_vec(v) for v in ns.complement]}


@command("monoid", "lemma-equiv10", kinds=["hom"])
def _equiv10(docs, flags, trace):
    r = monoid.check_lemma_equiv10(to_hom(docs[0]))
    trace.append(f"pushout {r.pushout!r}")
    return {"pushout": monoid_doc(r.pushout), "sharp_quotient": monoid_doc(r.sharp_quotient),
            "rank_lhs": r.rank_lhs, "rank_rhs": r.rank_rhs,
            "rank_identity_holds": r.rank_identity_holds,
            "sharp_quotient_iso": r.sharp_quotient_iso, "units_trivial": r.units_trivial,
            "iso_detected": r.iso_detected, "theta_is_iso": r.theta_is_iso,
            "counterexample": r.counterexample}


@command("fan", "validate", kinds=["fan"])
def _validate(docs, flags, trace):
    d = docs[0]
    _require_rank(d["ambient_rank"], "")
    defect = fan.validate_fan_data(d["ambient_rank"], d["max_cones"])
    if defect is None:
        return {"valid": True, "defect": None}
    return {"valid": False, "defect": {"kind": defect.kind, "cones": list(defect.cones),
                                       "message": defect.message}}


@command("fan", "subdivision-check", kinds=["fan", "fan"])
def _subcheck(docs, flags, trace):
    a, b = to_fan(docs[0], "/inputs/0"), to_fan(docs[1], "/inputs/1")
    return {"subdivision": fan.is_subdivision(a, b)}


@command("fan", "star", kinds=["fan"])
def _star(docs, flags, trace):
    f = to_fan(docs[0])
    if flags.ray is None:
        raise UsageError("--ray is required")
    if len(flags.ray) != f.ambient_rank or not any(flags.ray):
        raise UsageError(f"--ray must be a nonzero vector of length {f.ambient_rank}")
    trace.append(f"cones containing the ray: "
                 f"{[_cone_list(c) for c in f.max_cones if c.contains(flags.ray)]}")
    return fan_doc(fan.star_subdivision(f, flags.ray))


@command("fan", "refine", kinds=["fan", "fan"])
def _refine(docs, flags, trace):
    a, b = to_fan(docs[0], "/inputs/0"), to_fan(docs[1], "/inputs/1")
    return fan_doc(fan.common_refinement(a, b))


@command("fan", "pullback", kinds=["fan", "subdivision"])
def _pullback(docs, flags, trace):
    src = to_fan(docs[0], "/inputs/0")
    s = to_subdivision(docs[1], "/inputs/1")
    m = _flag_matrix(flags, s.base.ambient_rank, src.ambient_rank)
    try:
        f = fan.FanMorphism(src, s.base, m)
    except fan.InvalidFanMorphism as exc:
        raise ValidationError("/flags/matrix", str(exc)) from None
    return subdivision_doc(fan.pullback_subdivision(f, s))


@command("fan", "cone-monoid", kinds=["fan"])
def _cone_monoid(docs, flags, trace):
    f = to_fan(docs[0])
    return monoid_doc(fan.cone_monoid(f.max_cones[_cone_index(flags, f)]))


@command("blowup", kinds=["fan", "ideal"])
def _blowup(docs, flags, trace):
    f = to_fan(docs[0], "/inputs/0")
    ideal = to_ideal(docs[1], "/inputs/1")
    res = blowup.log_blowup(f, ideal.generators, _cone_index(flags, f))
    for c, g in res.per_max_cone_generator:
        trace.append(f"cone {_cone_list(c)}: minimal generator {list(g)}")
    return subdivision_doc(fan.Subdivision(f, res.subdivision))


@command("divided", "hom", kinds=["fan", "fan"])
def _dhom(docs, flags, trace):
    a, b = to_fan(docs[0], "/inputs/0"), to_fan(docs[1], "/inputs/1")
    r = divided.make_rep(a, b, _flag_matrix(flags, b.ambient_rank, a.ambient_rank))
    if r is None:
        raise NoRepresentative("the matrix does not map the source support into the target support")
    trace.append(f"pullback subdivision {r.source_subdivision.fan.as_lists()}")
    return rep_doc(r)


class NoRepresentative(ValueError):
    pass


@command("divided", "eq", kinds=["rep", "rep"])
def _deq(docs, flags, trace):
    return {"equal": divided.eq_divided(to_rep(docs[0], "/inputs/0"), to_rep(docs[1], "/inputs/1"))}


@command("divided", "compose", kinds=["rep", "rep"])
def _dcompose(docs, flags, trace):
    return rep_doc(divided.compose_divided(to_rep(docs[0], "/inputs/0"),
                                           to_rep(docs[1], "/inputs/1")))


@command("divided", "iso", kinds=["rep"])
def _diso(docs, flags, trace):
    return {"iso": divided.is_iso_divided(to_rep(docs[0]))}


@command("divided", "exactify", kinds=["rep"])
def _dexact(docs, flags, trace):
    return rep_doc(divided.exactify(to_rep(docs[0])))


def _deformation(d: dict) -> deform.DeformationMonoid:
    ideal = to_ideal(d)
    return deform.deformation_monoid(ideal.parent, ideal)


@command("deform", "build", kinds=["ideal"])
def _dbuild(docs, flags, trace):
    dm = _deformation(docs[0])
    return {"rees": monoid_doc(dm.rees), "rees_unsaturated": monoid_doc(dm.rees_unsaturated),
            "warnings": list(dm.warnings)}


@command("deform", "generic-fiber", kinds=["ideal"])
def _dgeneric(docs, flags, trace):
    g = deform.fiber_generic(_deformation(docs[0]))
    return {"monoid": monoid_doc(g.monoid), "reference": monoid_doc(g.reference), "iso": g.iso}


@command("deform", "zero-fiber", kinds=["ideal"])
def _dzero(docs, flags, trace):
    n_max = 3 if flags.n_max is None else flags.n_max
    deg_max = 6 if flags.deg_max is None else flags.deg_max
    slices = deform.fiber_zero_pieces(_deformation(docs[0]), n_max, deg_max)
    return {"n_max": n_max, "deg_max": deg_max,
            "slices": [{"n": n, "monomials": [_vec(x) for x in s]} for n, s in enumerate(slices)]}


@command("deform", "square-check", kinds=["ideal", "ideal"])
def _dsquare(docs, flags, trace):
    i, j = to_ideal(docs[0], "/inputs/0"), to_ideal(docs[1], "/inputs/1")
    if i.parent != j.parent:
        raise ValidationError("/inputs/1/monoid", "both ideals must live in the same monoid")
    n_max = 4 if flags.n_max is None else flags.n_max
    deg_max = 6 if flags.deg_max is None else flags.deg_max
    rows = deform.deform_square_check(i.parent, i, j, n_max, deg_max)
    return {"n_max": n_max, "deg_max": deg_max, "equal": all(r.equal for r in rows),
            "degrees": [{"n": r.n, "equal": r.equal,
                         "left": [_vec(x) for x in r.left], "right": [_vec(x) for x in r.right],
                         "left_only": [_vec(x) for x in r.left_only],
                         "right_only": [_vec(x) for x in r.right_only]} for r in rows]}


def _defect_doc(d: fanspace.GluingDefect | None):
    if d is None:
        return None
    return {"condition": d.condition, "indices": list(d.indices), "message": d.message}


@command("space", "validate", kinds=["space"])
def _svalidate(docs, flags, trace):
    defect = fanspace.validate_gluing(to_space(docs[0]))
    return {"valid": defect is None, "defect": _defect_doc(defect)}


def _glued(d: dict) -> fanspace.GluedSpace:
    return fanspace.glue(to_space(d))


@command("space", "glue", kinds=["space"])
def _sglue(docs, flags, trace):
    g = _glued(docs[0])
    realized = g.as_fan()
    return {"orbits": [[{"chart": i, "cone": _cone_list(c)} for i, c in orb] for orb in g.orbits],
            "charts": [g.chart_orbits(i) for i in range(len(g.charts))],
            "fan": fan_doc(realized) if realized is not None else None}


def _opens(g: fanspace.GluedSpace, flags: Flags) -> list[tuple[int, fanspace.OpenSubfan]]:
    specs = flags.opens if flags.opens is not None else [str(i) for i in range(len(g.charts))]
    out = []
    for spec in specs:
        chart, _, cone = spec.partition(":")
        i = int(chart)
        if i >= len(g.charts):
            raise UsageError(f"open {spec!r} names a missing chart")
        f = g.charts[i]
        if cone:
            if int(cone) >= len(f.max_cones):
                raise UsageError(f"open {spec!r} names a missing cone")
            out.append((i, fanspace.OpenSubfan.affine(f, int(cone))))
        else:
            out.append((i, fanspace.OpenSubfan.whole(f)))
    return out


@command("space", "cover", kinds=["space"])
def _scover(docs, flags, trace):
    g = _glued(docs[0])
    return {"cover": fanspace.is_cover(g, _opens(g, flags))}


@command("space", "union", kinds=["space"])
def _sunion(docs, flags, trace):
    g = _glued(docs[0])
    u = fanspace.union_opens(g, _opens(g, flags))
    return {"orbits": sorted(u.orbits),
            "charts": [{"chart": i, "cones": [_cone_list(c) for c in g.cones_in(u, i).cones]}
                       for i in range(len(g.charts))]}


# -- dispatch ----------------------------------------------------------------

DOMAIN_ERRORS = (monoid.MonoidError, fan.FanError, blowup.EmptyIdeal, RankTooLarge,
                 NoRepresentative)


class RunResult(NamedTuple):
    result: dict
    exit_code: int
    trace: list[str]


def _error(kind: str, message: str, **extra) -> dict:
    return {"error": {"type": kind, "message": message, **extra}}


def run(name: Sequence[str], documents: Sequence[Document], flags: Flags | None = None) -> RunResult:
    """Run one registered command and classify the outcome."""
    flags = flags or Flags()
    trace: list[str] = []
    try:
        name = tuple(name)
        if name == ("run",):
            if len(documents) != 1 or documents[0].kind != "request":
                raise UsageError("run takes exactly one request document")
            req = documents[0].data
            inner = [Document(d["kind"], d) for d in req["inputs"]]
            return run(req["command"], inner, Flags(**req.get("flags", {})).merged(flags))
        cmd = COMMANDS.get(name)
        if cmd is None:
            raise UsageError(f"unknown command {' '.join(name)!r}")
        if len(documents) != len(cmd.kinds):
            raise UsageError(f"{' '.join(name)} takes {len(cmd.kinds)} document(s), "
                             f"got {len(documents)}")
        for k, (doc, kind) in enumerate(zip(documents, cmd.kinds)):
            if doc.kind != kind:
                raise ValidationError(f"/inputs/{k}/kind", f"expected a {kind} document, got {doc.kind}")
        result = cmd.fn([d.data for d in documents], flags, trace)
        return RunResult(result, 0, trace)
    except ValidationError as exc:
        return RunResult(_error("ValidationError", exc.message, path=exc.path), 2, trace)
    except UsageError as exc:
        return RunResult(_error("UsageError", str(exc)), 2, trace)
    except DOMAIN_ERRORS as exc:
        extra = {}
        if isinstance(exc, monoid.TorsionCokernel):
            extra["invariants"] = list(exc.invariants)
        if isinstance(exc, fanspace.GluingError):
            extra["defect"] = _defect_doc(exc.defect)
        return RunResult(_error(type(exc).__name__, str(exc), **extra), 1, trace)


# -- text output ----------------------------------------------------------

def _is_leaf(v) -> bool:
    if isinstance(v, list):
        return all(_is_leaf(x) and not isinstance(x, dict) for x in v)
    return not isinstance(v, dict)


def render_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if _is_leaf(v):
                lines.append(f"{pad}{k}: {json.dumps(v)}")
            else:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1).rstrip("\n"))
    elif isinstance(obj, list):
        for v in obj:
            if _is_leaf(v):
                lines.append(f"{pad}- {json.dumps(v)}")
            else:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1).rstrip("\n"))
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return "\n".join(lines) + "\n"


# -- argument parsing ----------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _matrix_arg(text: str) -> list[list[int]]:
    return [_int_list(row) for row in text.split(";")]


def _opens_arg(text: str) -> list[str]:
    out = [s.strip() for s in text.split(",") if s.strip()]
    for s in out:
        chart, _, cone = s.partition(":")
        if not chart.isdigit() or (cone and not cone.isdigit()):
            raise argparse.ArgumentTypeError(f"bad open {s!r}; use CHART or CHART:CONE")
    return out


def build_parser() -> argparse.ArgumentParser:
    verbs = sorted({" ".join(k) for k in COMMANDS})
    p = argparse.ArgumentParser(
        prog="divlog",
        description="Exact fan and monoid computations on JSON documents.",
        epilog="commands: " + "; ".join(verbs) + "; run REQUEST",
    )
    p.add_argument("--output", choices=["json", "text"], default="json")
    p.add_argument("--trace", action="store_true", help="print intermediate steps to stderr")
    p.add_argument("--ray", type=_int_list, help="ray for star subdivision, e.g. 1,1 (use --ray=-1,0)")
    p.add_argument("--cone", type=int, help="index of the distinguished maximal cone")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--deg-max", dest="deg_max", type=int)
    p.add_argument("--opens", type=_opens_arg, help="opens as CHART or CHART:CONE, comma separated")
    p.add_argument("--matrix", type=_matrix_arg, help="rows separated by ';', entries by ','")
    p.add_argument("words", nargs="+", metavar="COMMAND/FILE")
    return p


def _split_command(words: list[str]) -> tuple[tuple[str, ...], list[str]]:
    if words[0] in ("run", "blowup"):
        return (words[0],), words[1:]
    if len(words) < 2:
        raise UsageError(f"{words[0]!r} needs a verb")
    return (words[0], words[1]), words[2:]


def _read(path: str, stdin) -> Document:
    if path == "-":
        return parse(stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text, path)


def main(argv: Sequence[str] | None = None, stdout=None, stdin=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    stderr = stderr or sys.stderr
    args = build_parser().parse_intermixed_args(argv)
    flags = Flags(args.ray, args.cone, args.n_max, args.deg_max, args.opens, args.matrix)
    try:
        name, files = _split_command(args.words)
        expected = 1 if name == ("run",) else len(COMMANDS.get(name, Command((), None)).kinds)
        if not files and expected == 1:
            files = ["-"]
        docs = [_read(f, stdin) for f in files]
        outcome = run(name, docs, flags)
    except ParseError as exc:
        outcome = RunResult(_error("ParseError", exc.message, line=exc.line, column=exc.column,
                                   source=exc.source), 2, [])
    except ValidationError as exc:
        outcome = RunResult(_error("ValidationError", exc.message, path=exc.path), 2, [])
    except UsageError as exc:
        outcome = RunResult(_error("UsageError", str(exc)), 2, [])
    if args.trace:
        for line in outcome.trace:
            stderr.write(f"trace: {line}\n")
    if args.output == "text":
        stdout.write(render_text(outcome.result))
    else:
        stdout.write(dumps(outcome.result))
    return outcome.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
