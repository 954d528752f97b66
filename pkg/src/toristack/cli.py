"""Command-line interface: file ingestion, dispatch and reports.

Documents are JSON: {"rank", "rays", "max_cones", "levels", "characteristics"}
with levels keyed by ray index (decimal string, JSON object keys) defaulting
to 1, and characteristics defaulting to [0]. Reports are byte-deterministic:
canonical orderings everywhere, sorted keys, exact integers and rationals
(large integers as decimal strings, rationals as "p/q").

Exit codes: 0 success, 1 validation failure, 2 parse failure, 3 internal
assertion (a consistency tripwire; indicates a bug, never expected).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import charts as chartlib
from . import cones as conelib
from . import monoids as monoidlib
from . import stackyfan as fanlib
from .linalg import FiniteAbelianGroup
from .stackyfan import Fan, FanError, InvalidLevel, StackyFan

_JSON_SAFE_INT = 2 ** 53 - 1
DEGREE_BOUND_ENV = "TORISTACK_DEGREE_BOUND"
DEFAULT_DEGREE_BOUND = 6


class DocumentParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


@dataclass
class FanDocument:
    """Parsed input file describing a stacky fan over chosen characteristics."""

    rank: int
    rays: list[tuple[int, ...]]
    max_cones: list[tuple[int, ...]]
    levels: dict[int, int] = field(default_factory=dict)
    characteristics: list[int] = field(default_factory=lambda: [0])


def _expect(condition, message):
    if not condition:
        raise DocumentParseError(message)


def _int_like(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def document_from_json(text: str) -> FanDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentParseError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from e
    _expect(isinstance(raw, dict), "document must be a JSON object")
    unknown = set(raw) - {"rank", "rays", "max_cones", "levels", "characteristics"}
    _expect(not unknown, f"unknown fields: {sorted(unknown)}")
    _expect("rank" in raw and "rays" in raw and "max_cones" in raw,
            "document requires 'rank', 'rays' and 'max_cones'")
    rank = raw["rank"]
    _expect(_int_like(rank) and rank >= 1, "'rank' must be a positive integer")
    rays_raw = raw["rays"]
    _expect(isinstance(rays_raw, list), "'rays' must be a list")
    rays = []
    for r in rays_raw:
        _expect(isinstance(r, list) and len(r) == rank and all(_int_like(x) for x in r),
                f"ray {r!r} must be a list of {rank} integers")
        rays.append(tuple(r))
    cones_raw = raw["max_cones"]
    _expect(isinstance(cones_raw, list), "'max_cones' must be a list")
    max_cones = []
    for c in cones_raw:
        _expect(isinstance(c, list) and all(_int_like(i) for i in c),
                f"cone {c!r} must be a list of ray indices")
        max_cones.append(tuple(c))
    levels = {}
    for key, value in (raw.get("levels") or {}).items():
        _expect(isinstance(key, str) and key.lstrip("-").isdigit(),
                f"level key {key!r} must be a decimal ray index")
        _expect(_int_like(value), f"level for ray {key} must be an integer")
        levels[int(key)] = value
    chars = raw.get("characteristics", [0])
    _expect(isinstance(chars, list) and all(_int_like(p) for p in chars),
            "'characteristics' must be a list of integers")
    return FanDocument(rank=rank, rays=rays, max_cones=max_cones,
                       levels=levels, characteristics=list(chars))


def document_to_dict(doc: FanDocument) -> dict:
    return {
        "rank": doc.rank,
        "rays": [list(r) for r in doc.rays],
        "max_cones": [list(c) for c in doc.max_cones],
        "levels": {str(k): v for k, v in sorted(doc.levels.items())},
        "characteristics": list(doc.characteristics),
    }


def document_to_json(doc: FanDocument) -> str:
    return emit_json(document_to_dict(doc))


def validation_errors(doc: FanDocument) -> list[dict]:
    """Every document/axiom violation, as structured entries."""
    errors = []
    ok_rays = True
    for i, r in enumerate(doc.rays):
        if all(x == 0 for x in r):
            errors.append({"code": "NonPrimitiveRay", "ray": i,
                           "message": f"ray {i} = {list(r)} is the zero vector"})
            ok_rays = False
            continue
        from .linalg import primitive_vector
        prim = primitive_vector(r)
        if prim != r:
            errors.append({"code": "NonPrimitiveRay", "ray": i,
                           "message": f"ray {i} = {list(r)} is not primitive; use {list(prim)}"})
            ok_rays = False
    seen = {}
    for i, r in enumerate(doc.rays):
        if r in seen:
            errors.append({"code": "DuplicateRay", "ray": i,
                           "message": f"ray {i} duplicates ray {seen[r]}"})
            ok_rays = False
        else:
            seen[r] = i
    ok_cones = True
    for c in doc.max_cones:
        bad = [i for i in c if i < 0 or i >= len(doc.rays)]
        if bad:
            errors.append({"code": "RayIndexOutOfRange", "cone": list(c),
                           "message": f"cone {list(c)} references unknown rays {bad}"})
            ok_cones = False
    for idx, n in sorted(doc.levels.items()):
        if idx < 0 or idx >= len(doc.rays):
            errors.append({"code": "InvalidLevel", "ray": idx,
                           "message": f"level given for unknown ray {idx}"})
        elif n < 1:
            errors.append({"code": "InvalidLevel", "ray": idx,
                           "message": f"level on ray {idx} must be >= 1, got {n}"})
    for p in doc.characteristics:
        if p < 0:
            errors.append({"code": "InvalidCharacteristic",
                           "message": f"characteristic {p} must be a nonnegative integer"})
    if not (ok_rays and ok_cones):
        return errors
    try:
        fanlib.validate_fan(doc.rays, doc.max_cones, ambient_rank=doc.rank)
    except fanlib.NonSimplicial as e:
        errors.append({"code": "NonSimplicial", "cone": list(e.cone_indices),
                       "message": str(e)})
    except fanlib.IntersectionNotFace as e:
        errors.append({"code": "IntersectionNotFace",
                       "cones": [list(c) for c in e.cone_pair], "message": str(e)})
    except FanError as e:
        errors.append({"code": type(e).__name__, "message": str(e)})
    return errors


def build_stacky_fan(doc: FanDocument) -> StackyFan:
    fan = fanlib.validate_fan(doc.rays, doc.max_cones, ambient_rank=doc.rank)
    return StackyFan.build(fan, doc.levels)


# ---------------------------------------------------------------------------
# serialization

def _encode(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > _JSON_SAFE_INT else value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit_json(obj) -> str:
    return json.dumps(_encode(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def cone_id(indices: Sequence[int]) -> str:
    return ",".join(str(i) for i in indices)


def _group_dict(g: FiniteAbelianGroup) -> dict:
    return {
        "invariant_factors": list(g.invariant_factors),
        "order": g.order,
        "cartier_dual": " x ".join(f"mu_{d}" for d in g.invariant_factors) or "trivial",
    }


# ---------------------------------------------------------------------------
# reports

def report_data(doc: FanDocument) -> dict:
    sf = build_stacky_fan(doc)
    fan = sf.fan
    chars = doc.characteristics
    smooth_canonical = (all(n == 1 for n in sf.levels)
                        and all(conelib.multiplicity(fan.cone_geometry(c)) == 1
                                for c in fan.maximal_cones))
    cones_out = []
    for c in fan.cones:
        geometry = fan.cone_geometry(c)
        chart = chartlib.local_chart(sf, c)
        cones_out.append({
            "id": cone_id(c),
            "ray_indices": list(c),
            "dim": len(c),
            "multiplicity": conelib.multiplicity(geometry) if c else 1,
            "stacky_multiplicity": fanlib.stacky_multiplicity(sf, c),
            "stabilizer": _group_dict(chart.group),
        })
    charts_out = []
    for c in fan.maximal_cones:
        chart = chartlib.local_chart(sf, c)
        faces = [f for f in fan.cones if set(f) <= set(c)]
        cycle_ideals = []
        for f in faces:
            cycle_ideals.append({
                "cone": cone_id(f),
                "chart_coordinates": chartlib.cycle_ideal_in_chart(sf, f, c),
                "coarse_generators": [list(v) for v in
                                      fanlib.cycle_ideal_classical(fan, f, c)],
            })
        charts_out.append({
            "cone": cone_id(c),
            "r": chart.r,
            "torus_rank": chart.torus_rank,
            "group": _group_dict(chart.group),
            "action_weights": [list(w) for w in chart.action_weights],
            "coordinate_levels": list(chart.levels),
            "coordinate_fan_rays": list(chart.fan_rays),
            "kummer_log_etale": chartlib.is_kummer_etale_chart(chart, chars),
            "coarse_hilbert_basis": [list(v) for v in chart.coarse_generators],
            "splitting": {
                "n_prime_basis": [list(v) for v in chart.n_prime_basis],
                "n_doubleprime_basis": [list(v) for v in chart.n_doubleprime_basis],
            },
            "cycle_ideals": cycle_ideals,
        })
    boundary = []
    for entry in chartlib.boundary_divisors(sf):
        boundary.append({
            "ray": entry["ray"],
            "level": entry["level"],
            "generic_stabilizer": f"mu_{entry['level']}" if entry["level"] > 1 else "trivial",
            "chart_coordinates": {cone_id(c): i
                                  for c, i in sorted(entry["chart_coordinates"].items())},
        })
    out = {
        "document": document_to_dict(doc),
        "fan": {
            "rank": fan.ambient_rank,
            "num_rays": len(fan.rays),
            "num_cones": len(fan.cones),
            "maximal_cones": [cone_id(c) for c in fan.maximal_cones],
            "complete": fanlib.is_complete(fan),
            "tame": fanlib.is_tame(sf, chars),
            "deligne_mumford": chartlib.is_deligne_mumford(sf, chars),
            "smooth_canonical": smooth_canonical,
            "characteristics": list(chars),
        },
        "cones": cones_out,
        "charts": charts_out,
        "boundary_divisors": boundary,
    }
    if smooth_canonical:
        out["fan"]["note"] = ("all levels are 1 and every cone is nonsingular: "
                              "the stack coincides with the toric variety of the fan")
    return out


def mfr_data(doc: FanDocument, cone_selector: Sequence[int]) -> dict:
    sf = build_stacky_fan(doc)
    key = sf.fan.normalize(cone_selector)
    if not key:
        raise ValueError("the zero cone has a trivial monoid; pick a nonzero cone")
    local, res, fan_rays, n_prime, n_doubleprime = chartlib.chart_resolution(sf, key)
    degree_bound = int(os.environ.get(DEGREE_BOUND_ENV, DEFAULT_DEGREE_BOUND))
    correspondence = []
    for line in monoidlib.irreducible_ray_correspondence(res):
        correspondence.append({
            "index": line.index,
            "free_generator": [x for x in line.generator],
            "ray": list(line.ray),
            "prime_facet_rays": [list(r) for r in line.facet_rays],
            "fan_ray": fan_rays[line.index],
        })
    return {
        "cone": cone_id(key),
        "r": len(key),
        "splitting_basis": [list(v) for v in list(n_prime) + list(n_doubleprime)],
        "hilbert_basis": [list(v) for v in local.hilbert_basis],
        "cp_rays": [list(v) for v in local.defining_cone.rays],
        "denominators": list(res.denominators),
        "levels": list(res.levels),
        "free_generators": [[x for x in f] for f in res.generators],
        "realized_generators": [[x for x in g] for g in res.realized_generators],
        "cokernel": _group_dict(monoidlib.resolution_cokernel(res)),
        "saturation_check_degree_bound": degree_bound,
        "saturation_check": monoidlib.saturation_intersection_check(res, degree_bound),
        "correspondence": correspondence,
    }


def stabilizer_data(doc: FanDocument, cone_selector: Sequence[int]) -> dict:
    sf = build_stacky_fan(doc)
    key = sf.fan.normalize(cone_selector)
    group = chartlib.stabilizer(sf, key)
    return {
        "cone": cone_id(key),
        "stacky_multiplicity": fanlib.stacky_multiplicity(sf, key),
        "stabilizer": _group_dict(group),
    }


# ---------------------------------------------------------------------------
# text rendering

def _render_table(rows: list[list[str]], header: list[str]) -> list[str]:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines = [fmt.format(*header), fmt.format(*["-" * w for w in widths])]
    lines.extend(fmt.format(*[str(x) for x in r]) for r in rows)
    return lines


def render_report_text(data: dict) -> str:
    fan = data["fan"]
    lines = [
        f"stacky fan report (rank {fan['rank']}, {fan['num_rays']} rays, "
        f"{fan['num_cones']} cones)",
        f"characteristics: {fan['characteristics']}",
        f"complete: {fan['complete']}   tame: {fan['tame']}   "
        f"Deligne-Mumford: {fan['deligne_mumford']}",
    ]
    if fan.get("note"):
        lines.append(fan["note"])
    lines.append("")
    rows = [[c["id"] or "(zero)", c["dim"], c["multiplicity"],
             c["stacky_multiplicity"], c["stabilizer"]["cartier_dual"]]
            for c in data["cones"]]
    lines.extend(_render_table(rows, ["cone", "dim", "mult", "stacky mult", "stabilizer"]))
    lines.append("")
    for chart in data["charts"]:
        lines.append(f"chart over cone [{chart['cone']}]: "
                     f"[A^{chart['r']}/{chart['group']['cartier_dual']}]"
                     f" x T^{chart['torus_rank']}"
                     f"   Kummer-log-etale: {chart['kummer_log_etale']}")
        lines.append(f"  action weights: {chart['action_weights']}"
                     f"   coordinate levels: {chart['coordinate_levels']}"
                     f"   coordinate rays: {chart['coordinate_fan_rays']}")
        lines.append(f"  coarse Hilbert basis: {chart['coarse_hilbert_basis']}")
        for ci in chart["cycle_ideals"]:
            lines.append(f"  cycle [{ci['cone'] or 'zero'}]: coordinates "
                         f"{ci['chart_coordinates']} coarse {ci['coarse_generators']}")
        lines.append("")
    rows = [[b["ray"], b["level"], b["generic_stabilizer"],
             json.dumps(b["chart_coordinates"], sort_keys=True)]
            for b in data["boundary_divisors"]]
    lines.extend(_render_table(rows, ["ray", "level", "generic stab", "chart coordinate"]))
    return "\n".join(lines) + "\n"


def render_mfr_text(data: dict) -> str:
    lines = [
        f"minimal/admissible free resolution over cone [{data['cone']}]",
        f"Hilbert basis of P: {data['hilbert_basis']}",
        f"rays of C(P): {data['cp_rays']}",
        f"denominators b: {data['denominators']}   levels n: {data['levels']}",
        f"free generators: {[[str(x) for x in f] for f in data['free_generators']]}",
        f"realized generators: {[[str(x) for x in g] for g in data['realized_generators']]}",
        f"cokernel: {data['cokernel']['cartier_dual']} "
        f"(invariant factors {data['cokernel']['invariant_factors']})",
        f"saturation check (degree <= {data['saturation_check_degree_bound']}): "
        f"{data['saturation_check']}",
    ]
    rows = [[c["index"], [str(x) for x in c["free_generator"]], c["ray"],
             c["fan_ray"], c["prime_facet_rays"]] for c in data["correspondence"]]
    lines.extend(_render_table(rows, ["i", "generator", "ray of C(P)",
                                      "fan ray", "prime (facet rays)"]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# command dispatch

def _load_document(path: str) -> FanDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocumentParseError(f"cannot read {path}: {e.strerror}") from e
    return document_from_json(text)


def _parse_cone_flag(value: str) -> list[int]:
    try:
        return [int(x) for x in value.split(",") if x.strip() != ""]
    except ValueError:
        raise DocumentParseError(f"bad cone selector {value!r}; expected i,j,...")


def cmd_validate(args) -> int:
    doc = _load_document(args.file)
    errors = validation_errors(doc)
    if args.format == "json":
        sys.stdout.write(emit_json({"ok": not errors, "errors": errors}))
    else:
        if errors:
            for e in errors:
                sys.stdout.write(f"{e['code']}: {e['message']}\n")
        else:
            sys.stdout.write("OK\n")
    return 0 if not errors else 1


def _guarded(doc: FanDocument, fn, args):
    errors = validation_errors(doc)
    if errors:
        for e in errors:
            sys.stderr.write(f"{e['code']}: {e['message']}\n")
        return 1
    data = fn()
    if args.format == "json":
        sys.stdout.write(emit_json(data))
    else:
        sys.stdout.write(args.render(data))
    return 0


def cmd_report(args) -> int:
    doc = _load_document(args.file)
    args.render = render_report_text
    return _guarded(doc, lambda: report_data(doc), args)


def cmd_mfr(args) -> int:
    doc = _load_document(args.file)
    args.render = render_mfr_text
    selector = _parse_cone_flag(args.cone)
    return _guarded(doc, lambda: mfr_data(doc, selector), args)


def cmd_stabilizer(args) -> int:
    doc = _load_document(args.file)
    args.render = lambda d: (
        f"cone [{d['cone']}]: stabilizer {d['stabilizer']['cartier_dual']} "
        f"of order {d['stabilizer']['order']} "
        f"(stacky multiplicity {d['stacky_multiplicity']})\n")
    selector = _parse_cone_flag(args.cone)
    return _guarded(doc, lambda: stabilizer_data(doc, selector), args)


def cmd_complete(args) -> int:
    doc = _load_document(args.file)
    args.render = lambda d: f"complete: {d['complete']}\n"
    return _guarded(doc, lambda: {
        "complete": fanlib.is_complete(build_stacky_fan(doc).fan)}, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toristack",
        description="Exact invariants of toric algebraic stacks from stacky-fan files.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="path to a stacky-fan JSON document")
        p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("validate", help="check the document against every axiom")
    common(p)
    p.set_defaults(fn=cmd_validate)
    p = sub.add_parser("report", help="full invariant report")
    common(p)
    p.set_defaults(fn=cmd_report)
    p = sub.add_parser("mfr", help="minimal/admissible free resolution of a cone monoid")
    common(p)
    p.add_argument("--cone", required=True, help="comma-separated ray indices")
    p.set_defaults(fn=cmd_mfr)
    p = sub.add_parser("stabilizer", help="stabilizer group over a cone")
    common(p)
    p.add_argument("--cone", required=True, help="comma-separated ray indices")
    p.set_defaults(fn=cmd_stabilizer)
    p = sub.add_parser("complete", help="completeness of the fan")
    common(p)
    p.set_defaults(fn=cmd_complete)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DocumentParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 2
    except (FanError, ValueError) as e:
        sys.stderr.write(f"validation error: {e}\n")
        return 1
    except AssertionError as e:
        sys.stderr.write(f"internal assertion failed (consistency tripwire): {e}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
