"""``jacloc`` command line: JSON problem files in, canonical JSON reports out.

Exit codes: 0 ok, 2 schema violation, 3 domain error, 4 desk-scale limit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from . import __version__
from .curve import CurveGraph, LineBundleDatum, Polarization, SheafDatum
from .errors import JaclocError, ScaleLimitExceeded
from .graph import MultiGraph, oriented_circuits, totally_cyclic_orientations
from .local import RING_NAMES, gamma_of, local_report, presentation
from .stability import (
    PhiParameter,
    count_stable_line_multidegrees,
    phi_polystable,
    phi_semistable,
    phi_to_polarization,
    slope_polystable,
    slope_semistable,
    slope_to_phi,
)
from .toric import circuit_generators, invariant_monomials_upto

SCHEMA = "jacloc/1"
MAX_VERTICES = 12
MAX_EDGES = 16
MAX_PARTITION_VERTICES = 8
MAX_MONOMIAL_CANDIDATES = 2_000_000

EXIT_OK, EXIT_SCHEMA, EXIT_DOMAIN, EXIT_SCALE = 0, 2, 3, 4

_RATIONAL = re.compile(r"-?\d+(/\d+)?")
_TOP_KEYS = {"schema", "curve", "sheaf", "polarization", "line_bundle_M", "phi",
             "degree", "mode", "options"}
_OPTION_KEYS = {"degree_bound", "t_max", "presentations"}


class SchemaError(Exception):
    """Input does not follow the jacloc/1 schema."""


@dataclass
class ProblemSpec:
    curve: CurveGraph
    sheaf: SheafDatum | None = None
    polarization: Polarization | None = None
    line_bundle_M: LineBundleDatum | None = None
    d: int | None = None
    phi: PhiParameter | None = None
    mode: str = "jacobian"
    options: dict = field(default_factory=dict)


# parsing

def _reject_float(text: str):
    raise SchemaError(f"floating-point literal {text} not allowed; use \"p/q\" strings")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float,
                          parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.fullmatch(x.strip()):
        if "/" in x and int(x.split("/")[1]) == 0:
            raise SchemaError(f"zero denominator in {x!r}")
        return Fraction(x.strip())
    raise SchemaError(f"not an exact rational: {x!r}")


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{what} must be an integer, got {x!r}")
    return x


def _obj(x, what: str) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(f"{what} must be an object")
    return x


def _only(d: dict, allowed: set, what: str) -> None:
    extra = set(d) - allowed
    if extra:
        raise SchemaError(f"unknown field(s) in {what}: {sorted(extra)}")


def _vertex_map(x, vertices: tuple, what: str, convert=_int) -> dict:
    x = _obj(x, what)
    if set(x) != set(vertices):
        raise SchemaError(f"{what} must give a value for exactly the curve's vertices")
    return {v: convert(x[v], f"{what}[{v}]") if convert is _int else convert(x[v])
            for v in vertices}


def parse_curve(x) -> CurveGraph:
    x = _obj(x, "curve")
    _only(x, {"vertices", "edges"}, "curve")
    if not isinstance(x.get("vertices"), list) or not x["vertices"]:
        raise SchemaError("curve.vertices must be a nonempty list")
    ids, genera = [], {}
    for item in x["vertices"]:
        item = _obj(item, "vertex")
        _only(item, {"id", "genus"}, "vertex")
        vid = item.get("id")
        if not isinstance(vid, str):
            raise SchemaError("vertex id must be a string")
        ids.append(vid)
        genera[vid] = _int(item.get("genus", 0), f"genus of {vid}")
    edges = []
    for item in x.get("edges", []):
        item = _obj(item, "edge")
        _only(item, {"id", "source", "target"}, "edge")
        if not all(isinstance(item.get(k), str) for k in ("id", "source", "target")):
            raise SchemaError("edge id, source and target must be strings")
        edges.append((item["id"], item["source"], item["target"]))
    try:
        return CurveGraph(MultiGraph(ids, edges), genera)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def parse_problem(data) -> ProblemSpec:
    data = _obj(data, "problem")
    _only(data, _TOP_KEYS, "problem")
    if data.get("schema") != SCHEMA:
        raise SchemaError(f"schema must be {SCHEMA!r}")
    if "curve" not in data:
        raise SchemaError("missing curve")
    curve = parse_curve(data["curve"])
    vs = curve.vertices
    spec = ProblemSpec(curve)

    if "sheaf" in data:
        sh = _obj(data["sheaf"], "sheaf")
        _only(sh, {"degrees", "nonfree"}, "sheaf")
        nonfree = sh.get("nonfree", [])
        if not isinstance(nonfree, list) or not all(isinstance(e, str) for e in nonfree):
            raise SchemaError("sheaf.nonfree must be a list of edge ids")
        if len(set(nonfree)) != len(nonfree):
            raise SchemaError("sheaf.nonfree has repeated edges")
        unknown = [e for e in nonfree if not curve.graph.has_edge(e)]
        if unknown:
            raise SchemaError(f"sheaf.nonfree names unknown edges: {unknown}")
        spec.sheaf = SheafDatum(_vertex_map(sh.get("degrees"), vs, "sheaf.degrees"), nonfree)

    if "polarization" in data:
        degrees = _vertex_map(data["polarization"], vs, "polarization")
        try:
            spec.polarization = Polarization(degrees)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None

    if "line_bundle_M" in data:
        m = _obj(data["line_bundle_M"], "line_bundle_M")
        _only(m, {"degrees", "d"}, "line_bundle_M")
        spec.line_bundle_M = LineBundleDatum(_vertex_map(m.get("degrees"), vs, "line_bundle_M.degrees"))
        spec.d = _int(m["d"], "line_bundle_M.d") if "d" in m else -spec.line_bundle_M.total_degree

    if "degree" in data:
        d = _int(data["degree"], "degree")
        if spec.d is not None and spec.d != d:
            raise SchemaError("degree disagrees with line_bundle_M.d")
        spec.d = d

    if "phi" in data:
        values = _vertex_map(data["phi"], vs, "phi", convert=parse_rational)
        total = sum(values.values(), Fraction(0))
        if total.denominator != 1:
            raise SchemaError(f"phi must sum to an integer, got {total}")
        spec.phi = PhiParameter(values, int(total))

    if spec.phi is not None and spec.polarization is not None:
        raise SchemaError("supply either polarization or phi, not both")

    mode = data.get("mode", "jacobian")
    if mode not in ("jacobian", "universal"):
        raise SchemaError("mode must be 'jacobian' or 'universal'")
    spec.mode = mode

    opts = _obj(data.get("options", {}), "options")
    _only(opts, _OPTION_KEYS, "options")
    for key in ("degree_bound", "t_max"):
        if key in opts:
            if _int(opts[key], key) < 0:
                raise SchemaError(f"{key} must be nonnegative")
    if "presentations" in opts:
        names = opts["presentations"]
        if not isinstance(names, list) or any(n not in RING_NAMES for n in names):
            raise SchemaError(f"options.presentations must list names from {list(RING_NAMES)}")
    spec.options = dict(opts)
    return spec


# serialization

def rational(x: Fraction) -> str:
    """Canonical ``p/q`` string (``p`` alone when ``q == 1``)."""
    return str(Fraction(x))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _subcurve_json(c: CurveGraph, Y) -> list:
    return sorted(Y, key=c.graph.vertex_index)


def _verdict_json(c: CurveGraph, verdict, cert) -> dict:
    return {
        "status": verdict.status.value,
        "witnesses": [_subcurve_json(c, Y) for Y in verdict.witnesses],
        "polystable": cert.polystable,
        "partition": [_subcurve_json(c, W) for W in cert.partition] if cert.partition else None,
    }


def _phi_json(phi: PhiParameter) -> dict:
    return {"values": {v: rational(x) for v, x in phi.value.items()},
            "target_sum": phi.target_sum}


def _graph_json(g: MultiGraph) -> dict:
    return {"vertices": list(g.vertices),
            "edges": [{"id": e.id, "source": e.source, "target": e.target} for e in g.edges]}


def _presentation_json(p) -> dict:
    out = {
        "name": p.name,
        "variables": [{"symbol": v.symbol, "kind": v.kind} for v in p.variables],
        "relations": [str(r) for r in p.relations],
        "torus_weights": p.torus_weights,
        "variable_counts": {k: p.count(k) for k in ("X_e", "Y_e", "T_e", "W_i", "u", "v", "t")},
    }
    if p.generators is not None:
        out["generators"] = p.generators
    return out


def _report_json(r) -> dict:
    return {
        "mode": r.mode,
        "smooth": r.smooth,
        "local_dimension": r.local_dimension,
        "embedding_dimension": r.embedding_dimension,
        "multiplicity": r.multiplicity,
        "component_count": r.component_count,
        "invariant_ring_dimension": r.invariant_ring_dimension,
        "g_sigma": r.g_sigma,
        "aut_torus_rank": r.aut_torus_rank,
        "asserted_properties": {"stated_not_computed": list(r.asserted_properties)},
        "experimental": r.experimental,
    }


# commands

def _need_sheaf(spec: ProblemSpec) -> SheafDatum:
    if spec.sheaf is None:
        raise SchemaError("this command needs a sheaf")
    return spec.sheaf


def _check_scale(spec: ProblemSpec, partitions: bool = False) -> None:
    nv, ne = len(spec.curve.vertices), len(spec.curve.edges)
    if nv > MAX_VERTICES or ne > MAX_EDGES:
        raise ScaleLimitExceeded(
            f"desk-scale limit: at most {MAX_VERTICES} vertices and {MAX_EDGES} edges"
        )
    if partitions and nv > MAX_PARTITION_VERTICES:
        raise ScaleLimitExceeded(
            f"desk-scale limit: poly-stability search needs at most {MAX_PARTITION_VERTICES} vertices"
        )


def stability_json(spec: ProblemSpec) -> dict:
    c, s = spec.curve, _need_sheaf(spec)
    _check_scale(spec, partitions=True)
    if spec.phi is not None:
        out = {"parameter": "phi", "phi": _phi_json(spec.phi)}
        out.update(_verdict_json(c, phi_semistable(c, s, spec.phi), phi_polystable(c, s, spec.phi)))
        return out
    if spec.polarization is not None:
        L = spec.polarization
        out = {"parameter": "polarization"}
        out.update(_verdict_json(c, slope_semistable(c, s, L), slope_polystable(c, s, L)))
        if spec.line_bundle_M is not None:
            from .stability import twist
            phi = slope_to_phi(c, L, spec.line_bundle_M, s.total_degree)
            t = twist(s, spec.line_bundle_M)
            out["twisted"] = {"phi": _phi_json(phi),
                              **_verdict_json(c, phi_semistable(c, t, phi), phi_polystable(c, t, phi))}
        return out
    raise SchemaError("stability needs either polarization or phi")


def _parameter(spec: ProblemSpec) -> PhiParameter:
    if spec.phi is not None:
        return spec.phi
    if spec.polarization is not None:
        d = spec.d if spec.d is not None else 0
        return slope_to_phi(spec.curve, spec.polarization, spec.line_bundle_M, d)
    raise SchemaError("this command needs either polarization or phi")


def chambers_json(spec: ProblemSpec) -> dict:
    _check_scale(spec)
    phi = _parameter(spec)
    stable, semi = count_stable_line_multidegrees(spec.curve, phi)
    return {"phi": _phi_json(phi), "stable": stable, "strictly_semistable": semi,
            "counts": {"stable": len(stable), "strictly_semistable": len(semi)}}


def convert_json(spec: ProblemSpec, direction: str | None) -> dict:
    c = spec.curve
    if direction is None:
        direction = "to-phi" if spec.polarization is not None else "to-polarization"
    if direction == "to-phi":
        if spec.polarization is None:
            raise SchemaError("to-phi needs a polarization")
        d = spec.d if spec.d is not None else 0
        phi = slope_to_phi(c, spec.polarization, spec.line_bundle_M, d)
        return {"direction": direction, "phi": _phi_json(phi)}
    if direction == "to-polarization":
        if spec.phi is None:
            raise SchemaError("to-polarization needs phi")
        L, M, d = phi_to_polarization(c, spec.phi)
        return {"direction": direction, "polarization": dict(L.component_degree),
                "line_bundle_M": {"degrees": dict(M.component_degree), "d": d}}
    raise SchemaError(f"unknown direction {direction!r}")


def _target_graph(spec: ProblemSpec, use_gamma: bool) -> MultiGraph:
    if use_gamma:
        return gamma_of(spec.curve, _need_sheaf(spec))
    return spec.curve.graph


def orientations_json(spec: ProblemSpec, use_gamma: bool) -> dict:
    _check_scale(spec)
    g = _target_graph(spec, use_gamma)
    items = [{e: ("forward" if d > 0 else "backward") for e, d in o.assignment}
             for o in totally_cyclic_orientations(g)]
    return {"graph": _graph_json(g), "count": len(items), "orientations": items}


def circuits_json(spec: ProblemSpec, use_gamma: bool) -> dict:
    _check_scale(spec)
    g = _target_graph(spec, use_gamma)
    items = [{"steps": [[e, "forward" if d > 0 else "backward"] for e, d in c.steps],
              "circulation": dict(cc.flow)}
             for c, cc in zip(oriented_circuits(g), circuit_generators(g))]
    return {"graph": _graph_json(g), "count": len(items), "circuits": items}


def presentation_json(spec: ProblemSpec, name: str) -> dict:
    _check_scale(spec)
    return _presentation_json(presentation(spec.curve, _need_sheaf(spec), name))


def _candidate_count(n: int, D: int) -> int:
    # integer vectors in Z^n with l1-norm <= D
    return sum(2 ** k * comb(n, k) * comb(D, k) for k in range(min(n, D) + 1))


def invariant_monomials_json(gamma: MultiGraph, D: int, mode: str) -> dict:
    n = len(gamma.edges)
    work = _candidate_count(n, D) * (comb(n + D // 2, n) if mode == "B" else 1)
    if work > MAX_MONOMIAL_CANDIDATES:
        raise ScaleLimitExceeded(f"desk-scale limit: degree bound {D} on {n} edges is too large")
    found = invariant_monomials_upto(gamma, D, mode)
    return {"degree_bound": D, "count": len(found), "monomials": [m.to_string(gamma) for m in found]}


def analyze_json(spec: ProblemSpec) -> dict:
    c, s = spec.curve, _need_sheaf(spec)
    _check_scale(spec)
    out: dict = {"schema": SCHEMA, "gamma": _graph_json(gamma_of(c, s))}
    if spec.phi is not None or spec.polarization is not None:
        out["stability"] = stability_json(spec)
    report = local_report(c, s, spec.mode, t_max=spec.options.get("t_max"))
    out["report"] = _report_json(report)
    default = ["InvariantRing_R_I"] if spec.mode == "jacobian" else ["InvariantRing_R_XI"]
    names = spec.options.get("presentations", default)
    out["presentations"] = {n: _presentation_json(presentation(c, s, n)) for n in names}
    if "degree_bound" in spec.options:
        out["invariant_monomials"] = invariant_monomials_json(gamma_of(c, s), spec.options["degree_bound"],
                                                              "A" if spec.mode == "jacobian" else "B")
    warnings = []
    if spec.mode == "universal":
        warnings.append("universal mode assumes a stable, automorphism-free curve; "
                        "automorphisms are not checked")
        warnings.append("universal-mode multiplicity and embedding dimension are experimental")
    out["warnings"] = warnings
    return out


# text rendering

def _scalar(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True, ensure_ascii=False)
    return str(x)


def render_text(obj, indent: int = 0) -> str:
    """Aligned key/value blocks; lists of records become tables."""
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k in sorted(obj):
            v = obj[k]
            if _is_records(v) or (isinstance(v, (dict, list)) and v and not _is_short(v)):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif _is_records(obj):
        lines.append(_table(obj, pad))
    elif isinstance(obj, list):
        lines.extend(f"{pad}- {_scalar(item)}" for item in obj)
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _is_records(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(r, dict) for r in v)


def _is_short(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v) and len(v) <= 8


def _table(rows: list, pad: str = "") -> str:
    cols = list(dict.fromkeys(k for r in rows for k in r))
    cells = [[str(c) for c in cols]] + [[_scalar(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    return "\n".join(pad + "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
                     for row in cells)


# entry point

COMMANDS = ("analyze", "stability", "chambers", "convert", "orientations", "circuits", "presentation")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jacloc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"jacloc {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="problem file (JSON, schema jacloc/1); '-' for stdin")
    p.add_argument("--text", action="store_true", help="render aligned text instead of JSON")
    p.add_argument("--mode", choices=("jacobian", "universal"))
    p.add_argument("--degree-bound", type=int, dest="degree_bound")
    p.add_argument("--tmax", type=int, dest="t_max")
    p.add_argument("--name", choices=RING_NAMES, help="ring for the presentation command")
    p.add_argument("--direction", choices=("to-phi", "to-polarization"), help="for convert")
    p.add_argument("--gamma", action="store_true",
                   help="orientations/circuits of the contracted graph instead of the dual graph")
    return p


def run(command: str, spec: ProblemSpec, args: argparse.Namespace) -> dict:
    if command == "analyze":
        return analyze_json(spec)
    if command == "stability":
        return stability_json(spec)
    if command == "chambers":
        return chambers_json(spec)
    if command == "convert":
        return convert_json(spec, args.direction)
    if command == "orientations":
        return orientations_json(spec, args.gamma)
    if command == "circuits":
        return circuits_json(spec, args.gamma)
    if command == "presentation":
        if args.name is None:
            raise SchemaError("presentation needs --name")
        return presentation_json(spec, args.name)
    raise SchemaError(f"unknown command {command!r}")


def _error(name: str, message: str) -> dict:
    return {"error": name, "message": message}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        spec = parse_problem(loads(text))
        if args.mode:
            spec.mode = args.mode
        for key in ("degree_bound", "t_max"):
            if getattr(args, key) is not None:
                spec.options[key] = getattr(args, key)
        result = run(args.command, spec, args)
        code = EXIT_OK
    except (SchemaError, OSError) as exc:
        result, code = _error("SchemaError", str(exc)), EXIT_SCHEMA
    except ScaleLimitExceeded as exc:
        result, code = _error(type(exc).__name__, str(exc)), EXIT_SCALE
    except JaclocError as exc:
        result, code = _error(type(exc).__name__, str(exc)), EXIT_DOMAIN
    if args.text and code == EXIT_OK:
        sys.stdout.write(render_text(result) + "\n")
    else:
        sys.stdout.write(dumps(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
