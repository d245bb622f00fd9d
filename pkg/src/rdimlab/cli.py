"""Command-line front end: ``rdim-lab <subcommand> [options]``.

Every run produces a report holding the tool version, the echoed inputs,
their sha256 digest and the result.  ``rdim-lab replay --file report.json``
recomputes a report from its echoed inputs and checks it matches.

Exit statuses: 0 success, 1 input error, 2 inconsistency, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .commalg import (
    ZERO_MODULE,
    find_regular_sequence,
    koszul_depth,
    krull_dim_ideal,
    module_dim,
    module_from_json,
    ring_from_json,
    trial_budget,
    verify_regular_sequence,
)
from .deduce import FactDatabase, explain, narrative, propagate, replay, ship_catalog
from .descent import (
    arboreal_default_bound,
    complex_from_json,
    default_complex,
    descent_upper_bound,
    resolution_bound,
    sod_bound,
)
from .errors import Inconclusive, InputError, RdimLabError
from .gradedalg import lower_bound_from_generator, preset, problem_from_json
from .quivercat import (
    UNREACHED,
    IntervalObject,
    dynkin_classify,
    full_generator,
    generation_time,
    generation_witness,
    projective_generator,
    quiver_from_json,
    quiver_rdim,
    tree_from_json,
    tree_to_quiver,
)

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class _Outcome:
    """Result payload plus the exit status it should map to."""

    def __init__(self, result: dict, status: int = EXIT_OK):
        self.result = result
        self.status = status


# handlers: each maps echoed inputs to an _Outcome --------------------------

def _ring_dim(inp):
    rep = krull_dim_ideal(ring_from_json(inp["ring"]))
    return _Outcome(rep.to_dict())


def _module_dim(inp):
    rep = module_dim(module_from_json(inp["module"]), inp.get("method", "fitting"))
    return _Outcome(rep.to_dict())


def _budget(inp):
    b = inp.get("budget")
    return trial_budget() if b is None else b


def _reg_seq(inp):
    M = module_from_json(inp["module"])
    if inp.get("elements"):
        cert = verify_regular_sequence(inp["elements"], M)
        return _Outcome({"mode": "verify", "length": len(cert), "certificate": cert.to_dict()})
    target = inp.get("target")
    if target is None:
        rep = module_dim(M)
        if rep.dimension is ZERO_MODULE:
            raise InputError("zero module has no regular sequences", location="module")
        target = rep.dimension
    if target == 0:
        return _Outcome({"mode": "search", "target": 0, "length": 0, "certificate": {"elements": [], "checks": []}})
    try:
        cert = find_regular_sequence(M, target, _budget(inp))
    except Inconclusive as exc:
        return _Outcome({"mode": "search", "target": target, "status": "NOT_FOUND", "error": exc.to_dict()}, EXIT_INCONCLUSIVE)
    return _Outcome({"mode": "search", "target": target, "length": len(cert), "certificate": cert.to_dict()})


def _koszul_depth(inp):
    M = module_from_json(inp["module"])
    if not inp.get("elements"):
        raise InputError("koszul-depth needs --elements", location="elements")
    return _Outcome({"elements": list(inp["elements"]), "depth": koszul_depth(inp["elements"], M)})


def _problem(inp):
    if inp.get("problem") is not None:
        return problem_from_json(inp["problem"])
    return preset(inp["preset"], inp.get("params") or {})


def _lower_bound(inp):
    prob = _problem(inp)
    cert = lower_bound_from_generator(prob, method=inp.get("method", "fitting"), search=inp.get("search", True), budget=inp.get("budget"))
    out = {"problem": prob.name, "lower_bound": cert.lower_bound, "certificate": cert.to_dict()}
    if prob.meta:
        out["meta"] = prob.meta
    return _Outcome(out)


def _quiver(inp):
    if inp.get("tree") is not None:
        q = tree_to_quiver(tree_from_json(inp["tree"]))
    else:
        q = quiver_from_json(inp["quiver"])
    return _Outcome({"quiver": q.to_dict(), "type": dynkin_classify(q), "rdim": quiver_rdim(q)})


def _parse_generator(n, gen):
    if gen == "full":
        return full_generator(n)
    if gen == "projective":
        return projective_generator(n)
    if not isinstance(gen, list) or not gen:
        raise InputError("generator must be 'full', 'projective' or a list of [i, j] intervals", location="generator")
    return IntervalObject(n, tuple(tuple(s) for s in gen))


def _an_oracle(inp):
    n = inp["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer", location="n")
    gen = _parse_generator(n, inp.get("generator", "full"))
    times = generation_time(gen, n, inp.get("max_level", 8))
    witness = generation_witness(times)
    out = {
        "n": n,
        "generator": gen.to_dict(),
        "levels": {f"M[{i},{j}]": v for (i, j), v in sorted(times.items())},
        "generation_witness": witness,
    }
    return _Outcome(out, EXIT_INCONCLUSIVE if witness == UNREACHED else EXIT_OK)


def _skeleton_bound(inp):
    if inp.get("complex") is not None:
        s = complex_from_json(inp["complex"], close_faces=inp.get("close_faces", False))
        rep = descent_upper_bound(s)
        return _Outcome(rep.to_dict())
    n = inp.get("n")
    rep = descent_upper_bound(default_complex(n))
    out = rep.to_dict()
    out["closed_form"] = arboreal_default_bound(n)
    return _Outcome(out)


def _sod(inp):
    return _Outcome({"parts": list(inp["parts"]), "bound": sod_bound(inp["parts"])})


def _resolution(inp):
    return _Outcome({"length": inp["length"], "bound": resolution_bound(inp["length"])})


def _deduce_db(inp):
    user = inp.get("database")
    if inp.get("with_catalog"):
        return ship_catalog().extended(user) if user is not None else ship_catalog()
    return FactDatabase.from_dict(user) if user is not None else FactDatabase()


def _run_deduction(db, inp):
    res = propagate(db)
    out = res.to_dict()
    out["narrative"] = narrative(res)
    queries = inp.get("explain") or []
    out["explanations"] = []
    for q in queries:
        ent, _, quantity = q.rpartition(":") if ":" in q else (q, "", "rdim")
        ex = explain(res, ent, quantity or "rdim")
        out["explanations"].append(
            {
                "entity": ent,
                "quantity": ex["quantity"],
                "interval": ex["interval"].to_list(),
                "rules": [t.rule for t in ex["steps"]],
                "steps": [t.to_dict() for t in ex["steps"]],
            }
        )
    return out


def _deduce(inp):
    return _Outcome(_run_deduction(_deduce_db(inp), inp))


def _catalog(inp):
    db = ship_catalog()
    out = _run_deduction(db, inp)
    out["database"] = db.to_dict()
    return _Outcome(out)


def _trace_replay(inp):
    db = _deduce_db(inp)
    res = replay(db, inp["trace"])
    return _Outcome({"intervals": res.intervals_dict(), "steps": len(res.trace)})


HANDLERS = {
    "ring-dim": _ring_dim,
    "module-dim": _module_dim,
    "reg-seq": _reg_seq,
    "koszul-depth": _koszul_depth,
    "lower-bound": _lower_bound,
    "quiver": _quiver,
    "an-oracle": _an_oracle,
    "skeleton-bound": _skeleton_bound,
    "sod": _sod,
    "resolution": _resolution,
    "deduce": _deduce,
    "catalog": _catalog,
    "trace-replay": _trace_replay,
}


# argument parsing -----------------------------------------------------------

def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}", location=path) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc.msg} (line {exc.lineno})", location=path) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rdim-lab", description="Certified bounds on Rouquier dimensions.")
    p.add_argument("--version", action="version", version=f"rdim-lab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--output", help="write the report here instead of stdout")
        return sp

    sp = cmd("ring-dim", "Krull dimension of k[vars]/I")
    sp.add_argument("--file", required=True, help="ring JSON file")

    for name in ("module-dim", "reg-seq", "koszul-depth"):
        sp = cmd(name, {"module-dim": "Krull dimension of a module", "reg-seq": "verify or search a regular sequence",
                        "koszul-depth": "depth along given elements via Koszul homology"}[name])
        sp.add_argument("--file", required=True, help="module JSON file")
        if name == "module-dim":
            sp.add_argument("--method", choices=("fitting", "annihilator"), default="fitting")
        else:
            sp.add_argument("--elements", nargs="+", help="ring elements in the polynomial grammar")
        if name == "reg-seq":
            sp.add_argument("--target", type=int)
            sp.add_argument("--budget", type=int)

    sp = cmd("lower-bound", "rdim lower bound from a subring acting on Hom(G, G)")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset")
    src.add_argument("--file", help="problem JSON file")
    sp.add_argument("--n", type=int)
    sp.add_argument("--family")
    sp.add_argument("--params", help="preset parameters as a JSON object")
    sp.add_argument("--method", choices=("fitting", "annihilator"), default="fitting")
    sp.add_argument("--no-search", action="store_true", help="skip the regular-sequence search")
    sp.add_argument("--budget", type=int)

    sp = cmd("quiver", "Dynkin type and rdim of a quiver or tree")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="quiver JSON file")
    src.add_argument("--tree", help="rooted signed tree JSON file")

    sp = cmd("an-oracle", "generation times in D^b(k[A_n])")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--generator", default="full", help="'full', 'projective' or JSON list of [i, j] intervals")
    sp.add_argument("--max-level", type=int, default=8)

    sp = cmd("skeleton-bound", "descent upper bound for a labeled skeleton")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="complex JSON file")
    src.add_argument("--default-labels", action="store_true", help="worst-case complex of dimension n")
    sp.add_argument("--n", type=int)
    sp.add_argument("--close-faces", action="store_true")

    sp = cmd("sod", "semi-orthogonal decomposition bound")
    sp.add_argument("--parts", type=int, nargs="+", required=True)

    sp = cmd("resolution", "bound from a resolution of the diagonal")
    sp.add_argument("--length", type=int, required=True)

    sp = cmd("deduce", "propagate bounds through a fact database")
    sp.add_argument("--file", help="database JSON file")
    sp.add_argument("--with-catalog", action="store_true")
    sp.add_argument("--explain", action="append", metavar="ENTITY[:QUANTITY]")

    sp = cmd("catalog", "propagate the shipped catalog")
    sp.add_argument("--explain", action="append", metavar="ENTITY[:QUANTITY]")

    sp = cmd("trace-replay", "replay a deduction trace against its database")
    sp.add_argument("--file", help="database JSON file")
    sp.add_argument("--with-catalog", action="store_true")
    sp.add_argument("--trace", required=True, help="report JSON file holding a trace")

    sp = cmd("replay", "recompute a report from its echoed inputs")
    sp.add_argument("--file", required=True, help="report JSON file")
    return p


def inputs_from_args(args) -> dict:
    c = args.command
    if c == "ring-dim":
        return {"ring": _load_json(args.file)}
    if c == "module-dim":
        return {"module": _load_json(args.file), "method": args.method}
    if c == "reg-seq":
        return {"module": _load_json(args.file), "elements": args.elements, "target": args.target, "budget": args.budget}
    if c == "koszul-depth":
        return {"module": _load_json(args.file), "elements": args.elements}
    if c == "lower-bound":
        inp = {"method": args.method, "search": not args.no_search, "budget": args.budget}
        if args.file:
            inp["problem"] = _load_json(args.file)
            return inp
        params = {}
        if args.params:
            try:
                params = json.loads(args.params)
            except json.JSONDecodeError as exc:
                raise InputError(f"--params is not valid JSON: {exc.msg}", location="params") from None
            if not isinstance(params, dict):
                raise InputError("--params must be a JSON object", location="params")
        if args.n is not None:
            params["n"] = args.n
        if args.family is not None:
            params["family"] = args.family
        inp.update({"preset": args.preset, "params": params})
        return inp
    if c == "quiver":
        return {"tree": _load_json(args.tree)} if args.tree else {"quiver": _load_json(args.file)}
    if c == "an-oracle":
        gen = args.generator
        if gen not in ("full", "projective"):
            try:
                gen = json.loads(gen)
            except json.JSONDecodeError:
                raise InputError("--generator must be 'full', 'projective' or a JSON list", location="generator") from None
        return {"n": args.n, "generator": gen, "max_level": args.max_level}
    if c == "skeleton-bound":
        if args.file:
            return {"complex": _load_json(args.file), "close_faces": args.close_faces}
        if args.n is None:
            raise InputError("--default-labels needs --n", location="n")
        return {"n": args.n}
    if c == "sod":
        return {"parts": args.parts}
    if c == "resolution":
        return {"length": args.length}
    if c == "deduce":
        if not args.file and not args.with_catalog:
            raise InputError("deduce needs --file or --with-catalog", location="file")
        return {"database": _load_json(args.file) if args.file else None, "with_catalog": args.with_catalog, "explain": args.explain or []}
    if c == "catalog":
        return {"explain": args.explain or []}
    if c == "trace-replay":
        rep = _load_json(args.trace)
        trace = rep.get("result", rep).get("trace") if isinstance(rep, dict) else None
        if not isinstance(trace, list):
            raise InputError("trace file holds no trace", location="trace")
        return {"database": _load_json(args.file) if args.file else None, "with_catalog": args.with_catalog, "trace": trace}
    raise InputError(f"unknown command {c!r}")


def digest(command: str, inputs: dict) -> str:
    blob = json.dumps({"command": command, "input": inputs}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def run(command: str, inputs: dict) -> tuple:
    """Run one subcommand on echoed inputs; returns (exit status, report)."""
    report = {"tool": "rdim-lab", "version": __version__, "command": command, "input": inputs,
              "input_digest": digest(command, inputs)}
    try:
        handler = HANDLERS.get(command)
        if handler is None:
            raise InputError(f"unknown command {command!r}", location="command")
        out = handler(inputs)
    except RdimLabError as exc:
        report["status"] = "error"
        report["error"] = exc.to_dict()
        if getattr(exc, "trace", None):
            report["error"]["trace"] = exc.trace
        return exc.exit_status, report
    report["status"] = "ok" if out.status == EXIT_OK else "inconclusive"
    report["result"] = out.result
    return out.status, report


def replay_report(report: dict) -> tuple:
    if not isinstance(report, dict) or "command" not in report or "input" not in report:
        raise InputError("not a rdim-lab report", location="report")
    status, fresh = run(report["command"], report["input"])
    keys = ("status", "result", "error", "input_digest")
    same = all(fresh.get(k) == report.get(k) for k in keys)
    return status, {"tool": "rdim-lab", "version": __version__, "command": "replay", "replayed": report["command"],
                    "input_digest": report.get("input_digest"), "identical": same, "status": "ok" if same else "mismatch",
                    "result": fresh.get("result"), "error": fresh.get("error")}


def _text(report: dict) -> str:
    lines = [f"rdim-lab {report.get('version')} {report.get('command')}  [{report.get('status')}]"]
    if report.get("error"):
        e = report["error"]
        lines.append(f"error {e.get('code')}: {e.get('message')}" + (f" (at {e['location']})" if e.get("location") else ""))
        return "\n".join(lines)
    res = report.get("result") or {}
    if "narrative" in res:
        lines.append("intervals:")
        for ent, qs in res["intervals"].items():
            lines.append("  " + ent + ": " + ", ".join(f"{q} [{a}, {b}]" for q, (a, b) in qs.items()))
        lines.append("derivation:")
        lines.extend("  " + ln for ln in res["narrative"].splitlines())
        for ex in res.get("explanations", []):
            lines.append(f"explain {ex['quantity']}({ex['entity']}) = {ex['interval']}: " + " -> ".join(ex["rules"]))
        return "\n".join(lines)
    for k, v in res.items():
        if k == "certificate" and isinstance(v, dict):
            seq = v.get("regular_sequence") if "elements" not in v else v
            if isinstance(seq, dict) and "elements" in seq:
                lines.append("elements: " + ", ".join(seq["elements"]))
            continue
        if k in ("trace", "certificate", "components") and not isinstance(v, (int, str)):
            continue
        lines.append(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    if isinstance(res.get("trace"), list):
        lines.extend("  " + str(t) for t in res["trace"])
    if "identical" in report:
        lines.append(f"identical: {report['identical']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    try:
        if args.command == "replay":
            status, report = replay_report(_load_json(args.file))
            if not report["identical"] and status == EXIT_OK:
                status = EXIT_INCONSISTENT
        else:
            status, report = run(args.command, inputs_from_args(args))
    except RdimLabError as exc:
        status = exc.exit_status
        report = {"tool": "rdim-lab", "version": __version__, "command": args.command, "status": "error", "error": exc.to_dict()}
    text = json.dumps(report, indent=2, sort_keys=True) if fmt == "json" else _text(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if report.get("error"):
        print(f"rdim-lab: {report['error']['code']}: {report['error']['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
