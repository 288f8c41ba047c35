"""Command-line front end.

Each subcommand prints a short human summary, or the JSON report with --json,
and can also write the report with --report PATH. Reports carry the tool
version and a hash of the canonical input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from importlib import metadata
from pathlib import Path

from . import catalog
from .core import Complex2, ComplexError, complex_to_json, validate_complex
from .decision import (DecisionError, HypothesisViolation, Obstruction, decide, find_obstruction,
                       verify_obstruction)
from .graphs import classify_graph, is_planar
from .homology import cycle_space_dim, homology_trivial, is_prime
from .minors import MinorError, ScriptError, apply_script, script_from_json
from .rotation import euler_identity_report, local_surfaces
from .search import find_planar_rotation_system

EXIT_FOUND, EXIT_NONE, EXIT_HYPOTHESIS, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.0.0"


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def input_hash(C: Complex2) -> str:
    return hashlib.sha256(canonical_json(complex_to_json(C)).encode()).hexdigest()


def load_complex(source: str) -> Complex2:
    if source.startswith("gen:"):
        try:
            return catalog.gen(source[4:])
        except catalog.CatalogError as exc:
            raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    text = sys.stdin.read() if source == "-" else _read(source)
    try:
        return validate_complex(json.loads(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source}: invalid JSON: {exc}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _report(args, command: str, C: Complex2 | None, body: dict) -> dict:
    rep = {"tool": {"name": "twocomplex", "version": tool_version()}, "command": command}
    if C is not None:
        rep["input"] = {"source": args.input, "sha256": input_hash(C)}
    rep.update(body)
    return rep


def _emit(args, rep: dict, summary: list[str]) -> None:
    text = json.dumps(rep, sort_keys=True, indent=2)
    if getattr(args, "report", None):
        Path(args.report).write_text(text + "\n")
    if getattr(args, "json", False):
        print(text)
    else:
        for line in summary:
            print(line)


def _prime(args) -> int:
    if not is_prime(args.p):
        raise UsageError(f"--p must be prime, got {args.p}")
    return args.p


# subcommands -------------------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        C = load_complex(args.input)
    except ComplexError as exc:
        diags = [{"kind": d.kind, "cell": d.cell, "message": d.message} for d in exc.diagnostics]
        rep = _report(args, "validate", None, {"valid": False, "diagnostics": diags})
        _emit(args, rep, ["invalid"] + [f"  {d}" for d in exc.diagnostics])
        return EXIT_NONE
    body = {"valid": True, "summary": C.summary(), "threeBounded": C.is_three_bounded}
    rep = _report(args, "validate", C, body)
    _emit(args, rep, [f"valid: {len(C.vertices)} vertices, {len(C.edges)} edges, {len(C.faces)} faces",
                      f"simplicial={C.is_simplicial} reasonable={C.is_reasonable}"])
    return EXIT_FOUND


def cmd_links(args) -> int:
    C = load_complex(args.input)
    out = {}
    lines = []
    for v in C.vertices:
        L = C.links[v]
        cl = classify_graph(L)
        out[v] = {"nodes": [list(n) for n in L.nodes],
                  "links": [{"face": lid[0], "corner": lid[1], "ends": [list(a), list(b)]}
                            for lid, (a, b) in L.edges.items()],
                  "class": cl.tag, "planar": is_planar(L) if not L.has_loops() else None}
        lines.append(f"{v}: {len(L.nodes)} nodes, {len(L.edges)} links, {cl.tag}")
    _emit(args, _report(args, "links", C, {"links": out}), lines)
    return EXIT_FOUND


def _certificate(C: Complex2, rep: dict) -> dict:
    return {"complex": complex_to_json(C), "report": rep}


def cmd_decide(args) -> int:
    C = load_complex(args.input)
    p = _prime(args)
    V = decide(C, p, assume_sc=args.assume_simply_connected, minimize=args.minimize, general=args.general)
    rep = _report(args, "decide", C, {"p": p, "verdict": V.to_json()})
    if args.emit_certificate:
        Path(args.emit_certificate).write_text(json.dumps(_certificate(C, rep), sort_keys=True, indent=2) + "\n")
    lines = [f"{V.status} ({V.route}): {V.interpretation}"]
    if V.sigma is not None:
        lines.append(f"sigma {canonical_json(V.sigma.to_json())}")
    if V.obstruction is not None:
        lines.append(f"obstruction {V.obstruction.kind} {canonical_json(V.obstruction.detail)}")
    lines.append(f"H1(F_{p}) {'trivial' if V.h1_trivial[p] else 'nontrivial'}")
    _emit(args, rep, lines)
    return V.exit_code


def cmd_obstruct(args) -> int:
    C = load_complex(args.input)
    if find_planar_rotation_system(C) is not None:
        _emit(args, _report(args, "obstruct", C, {"obstruction": None}), ["no obstruction: a planar rotation system exists"])
        return EXIT_FOUND
    obs = find_obstruction(C, args.minimize)
    chk = verify_obstruction(C, obs)
    rep = _report(args, "obstruct", C, {"obstruction": obs.to_json(), "check": chk.to_json()})
    if args.emit_certificate:
        Path(args.emit_certificate).write_text(json.dumps(_certificate(C, rep), sort_keys=True, indent=2) + "\n")
    _emit(args, rep, [f"obstruction {obs.kind} {canonical_json(obs.detail)}", f"verified={chk.ok}"])
    return EXIT_NONE


def cmd_homology(args) -> int:
    C = load_complex(args.input)
    p = _prime(args)
    triv = homology_trivial(C, p)
    word = "trivial" if triv else "nontrivial"
    rep = _report(args, "homology", C, {"p": p, "h1": word, "cycleSpaceDim": cycle_space_dim(C)})
    _emit(args, rep, [word])
    return EXIT_FOUND


def cmd_local_surfaces(args) -> int:
    C = load_complex(args.input)
    S = find_planar_rotation_system(C)
    if S is None:
        _emit(args, _report(args, "local-surfaces", C, {"sigma": None}), ["no planar rotation system"])
        return EXIT_NONE
    surfs = local_surfaces(C, S)
    iota = {}
    for k, s in enumerate(surfs):
        for clone, (v, corners) in sorted(s.vertex_clones.items()):
            iota[f"{k}.{clone}"] = {"surface": k, "vertex": v, "corners": [list(c) for c in corners]}
    body = {"sigma": S.to_json(), "classes": [s.to_json() for s in surfs],
            "genera": [s.genus for s in surfs], "iota": iota,
            "euler": euler_identity_report(C, S, _prime(args)).to_json()}
    _emit(args, _report(args, "local-surfaces", C, body),
          [f"{len(surfs)} local surfaces, genera {[s.genus for s in surfs]}"])
    return EXIT_FOUND


def _load_script(path: str) -> list:
    data = json.loads(_read(path))
    if isinstance(data, dict):
        if "report" in data:
            data = data["report"]
        verdict = data.get("verdict", data)
        if "obstruction" in verdict and isinstance(verdict["obstruction"], dict):
            data = verdict["obstruction"]["script"]
        elif "script" in data:
            data = data["script"]
        else:
            raise UsageError(f"{path}: no script found")
    return script_from_json(data)


def cmd_minor(args) -> int:
    C = load_complex(args.input)
    try:
        script = _load_script(args.script)
        D, trace = apply_script(C, script)
    except (ScriptError, MinorError, KeyError, TypeError) as exc:
        raise UsageError(f"script failed: {exc}") from None
    body = {"result": complex_to_json(D), "trace": [t.to_json() for t in trace]}
    if args.check_obstruction:
        obs = _obstruction_from(args.script)
        if obs is not None:
            body["check"] = verify_obstruction(C, obs).to_json()
    _emit(args, _report(args, "minor", C, body),
          [f"{len(script)} ops: {len(D.vertices)} vertices, {len(D.edges)} edges, {len(D.faces)} faces"])
    return EXIT_FOUND


def _obstruction_from(path: str) -> Obstruction | None:
    data = json.loads(_read(path))
    if not isinstance(data, dict):
        return None
    data = data.get("report", data)
    d = data.get("verdict", data).get("obstruction")
    return Obstruction.from_json(d) if isinstance(d, dict) else None


def cmd_gen(args) -> int:
    if args.name == "list":
        for n in catalog.names():
            print(n)
        return EXIT_FOUND
    entry = args.name[4:] if args.name.startswith("gen:") else args.name
    try:
        C = catalog.gen(entry)
    except catalog.CatalogError as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    text = json.dumps(complex_to_json(C), sort_keys=True, indent=2)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return EXIT_FOUND


# parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="twocomplex", description="Embeddability of 2-complexes in 3-space.")
    ap.add_argument("--version", action="version", version=f"twocomplex {tool_version()}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(p, input_=True):
        if input_:
            p.add_argument("input", help="complex JSON file, '-' for stdin, or gen:NAME")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
        return p

    common(sub.add_parser("validate", help="check a complex description"))
    common(sub.add_parser("links", help="link graphs and their classes"))
    d = common(sub.add_parser("decide", help="decide whether a planar rotation system exists"))
    d.add_argument("--p", type=int, default=2)
    d.add_argument("--assume-simply-connected", action="store_true")
    d.add_argument("--minimize", action="store_true")
    d.add_argument("--general", action="store_true", help="force the stretching route")
    d.add_argument("--emit-certificate", metavar="PATH")
    o = common(sub.add_parser("obstruct", help="extract a verified obstruction"))
    o.add_argument("--minimize", action="store_true")
    o.add_argument("--emit-certificate", metavar="PATH")
    h = common(sub.add_parser("homology", help="first homology over F_p"))
    h.add_argument("--p", type=int, default=2)
    ls = common(sub.add_parser("local-surfaces", help="local surfaces of a planar rotation system"))
    ls.add_argument("--p", type=int, default=2)
    m = common(sub.add_parser("minor", help="apply a script or replay a certificate"))
    m.add_argument("script", help="JSON list of ops, or a certificate file")
    m.add_argument("--check-obstruction", action="store_true")
    g = sub.add_parser("gen", help="print a catalog complex, or 'list'")
    g.add_argument("name")
    g.add_argument("-o", "--output", metavar="PATH")
    return ap


COMMANDS = {"validate": cmd_validate, "links": cmd_links, "decide": cmd_decide, "obstruct": cmd_obstruct,
            "homology": cmd_homology, "local-surfaces": cmd_local_surfaces, "minor": cmd_minor, "gen": cmd_gen}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"twocomplex: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComplexError as exc:
        print(f"twocomplex: invalid complex: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisViolation as exc:
        print(f"twocomplex: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except DecisionError as exc:
        print(f"twocomplex: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
