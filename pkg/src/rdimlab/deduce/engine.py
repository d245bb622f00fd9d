"""Fact database and monotone bound propagation.

Every tracked quantity is an interval [lower, upper] of naturals with the
sentinels NONE (no lower bound known) and INF (no upper bound known).
Facts are compiled into rule instances.  Each instance reads some interval
endpoints and proposes a bound for one endpoint; lowers only go up and
uppers only go down, so chaotic iteration reaches the same least fixed
point whatever order the instances fire in.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable

from ..descent import arboreal_default_bound
from ..errors import InconsistencyError, InputError

NONE = "NONE"
INF = "INF"

QUANTITIES = ("rdim", "lef", "intersection")
ENTITY_KINDS = ("liouville", "pair", "sector", "category", "variety")

# kind -> (entity-valued fields, integer-valued fields, optional fields)
FACT_SCHEMA = {
    "rdim_bound": (("subject",), (), ("lower", "upper")),
    "lef_crit_count": (("subject",), ("value",), ("weinstein_fibers",)),
    "intersection_count": (("subject",), ("value",), ()),
    "krull_lower": (("subject",), ("value",), ()),
    "point_like_dim": (("subject",), ("value",), ()),
    "embedding": (("inner", "outer"), (), ()),
    "quotient": (("of", "target"), (), ("by",)),
    "polarized_weinstein_dim": (("subject",), ("value",), ()),
    "nonzero_category": (("subject",), (), ()),
    "zero_category": (("subject",), (), ()),
    "proper_module": (("subject",), (), ()),
    "generalized_cocore": (("subject",), (), ()),
    "mirror_equivalence": (("variety", "pair"), (), ("variety_dim",)),
}

RULES = {
    "FACT": "bound stated directly by a fact",
    "ZERO": "the zero category has rdim 0",
    "R1": "Lefschetz: Lef_w >= rdim + 1; k critical points give rdim <= k - 1",
    "R2": "intersection: |c cap phi(c)| >= rdim + 1 for skeleta with generalized cocores",
    "R3": "embedding: rdim(inner) <= rdim(outer)",
    "R4": "quotient: rdim(quotient) <= rdim(source)",
    "R5": "point-like object of an n-torus type: rdim >= n",
    "R6": "Krull dimension of a central action: rdim >= krull_lower",
    "R7": "polarized arboreal upper bound: rdim <= n if n <= 3 else 2n - 3",
    "R8": "nonzero proper module: |c cap phi(c)| >= 2",
    "R9": "mirror transfer and the coherent floor rdim D^b Coh(Y) >= dim Y",
}


@dataclass(frozen=True)
class BoundInterval:
    lower: object = NONE
    upper: object = INF

    def __post_init__(self):
        for v, s in ((self.lower, NONE), (self.upper, INF)):
            if v != s and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
                raise InputError(f"interval endpoints must be naturals or sentinels, got {v!r}")

    @property
    def consistent(self) -> bool:
        return self.lower == NONE or self.upper == INF or self.lower <= self.upper

    @property
    def is_exact(self) -> bool:
        return self.lower != NONE and self.lower == self.upper

    def contains(self, value: int) -> bool:
        lo = 0 if self.lower == NONE else self.lower
        return lo <= value and (self.upper == INF or value <= self.upper)

    def to_list(self) -> list:
        return [self.lower, self.upper]

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


@dataclass(frozen=True)
class Entity:
    id: str
    kind: str
    label: str = ""


@dataclass(frozen=True)
class Fact:
    id: str
    kind: str
    args: tuple  # sorted (key, value) pairs

    def get(self, key, default=None):
        return dict(self.args).get(key, default)

    @property
    def subjects(self) -> list:
        return [self.get(k) for k in FACT_SCHEMA[self.kind][0]]

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, **dict(self.args)}


class FactDatabase:
    """Entities plus facts; references are resolved at construction."""

    def __init__(self, entities=(), facts=()):
        self.entities: dict = {}
        self.facts: list = []
        for e in entities:
            self.add_entity(e)
        for f in facts:
            self.add_fact(f)

    def add_entity(self, e) -> Entity:
        if isinstance(e, dict):
            if "id" not in e:
                raise InputError("entity needs an id", location="entities")
            e = Entity(str(e["id"]), e.get("kind", "liouville"), e.get("label", ""))
        if e.kind not in ENTITY_KINDS:
            raise InputError(f"unknown entity kind {e.kind!r}", location=f"entities/{e.id}")
        if e.id in self.entities:
            raise InputError(f"duplicate entity {e.id!r}", location=f"entities/{e.id}")
        self.entities[e.id] = e
        return e

    def add_fact(self, f) -> Fact:
        if isinstance(f, Fact):
            f = f.to_dict()
        if not isinstance(f, dict) or "kind" not in f:
            raise InputError("fact needs a kind", location="facts")
        kind = f["kind"]
        loc = f"facts/{len(self.facts)}"
        if kind not in FACT_SCHEMA:
            raise InputError(f"unknown fact kind {kind!r}", location=loc)
        refs, ints, optional = FACT_SCHEMA[kind]
        args = {}
        for k in refs:
            if k not in f:
                raise InputError(f"{kind} fact needs {k!r}", location=loc)
            if f[k] not in self.entities:
                raise InputError(f"dangling reference {f[k]!r}", location=f"{loc}/{k}")
            args[k] = f[k]
        for k in ints:
            if k not in f:
                raise InputError(f"{kind} fact needs {k!r}", location=loc)
            args[k] = _natural(f[k], f"{loc}/{k}")
        for k in optional:
            if k in f and f[k] is not None:
                args[k] = f[k]
        extra = set(f) - set(refs) - set(ints) - set(optional) - {"kind", "id", "note"}
        if extra:
            raise InputError(f"unexpected field(s) {sorted(extra)} on {kind}", location=loc)
        if kind == "rdim_bound":
            if "lower" not in args and "upper" not in args:
                raise InputError("rdim_bound needs lower or upper", location=loc)
            for k in ("lower", "upper"):
                if k in args:
                    args[k] = _natural(args[k], f"{loc}/{k}")
        if kind == "polarized_weinstein_dim" and args["value"] < 1:
            raise InputError("polarized dimension must be at least 1", location=f"{loc}/value")
        if kind == "lef_crit_count" and not isinstance(args.get("weinstein_fibers", True), bool):
            raise InputError("weinstein_fibers must be a boolean", location=loc)
        if kind == "mirror_equivalence":
            if self.entities[args["variety"]].kind != "variety":
                raise InputError("mirror_equivalence variety must be a variety entity", location=f"{loc}/variety")
            if "variety_dim" in args:
                args["variety_dim"] = _natural(args["variety_dim"], f"{loc}/variety_dim")
        if "note" in f:
            args["note"] = str(f["note"])
        fid = str(f.get("id", f"f{len(self.facts)}"))
        if any(g.id == fid for g in self.facts):
            raise InputError(f"duplicate fact id {fid!r}", location=loc)
        fact = Fact(fid, kind, tuple(sorted(args.items())))
        self.facts.append(fact)
        return fact

    def to_dict(self) -> dict:
        return {
            "entities": [{"id": e.id, "kind": e.kind, **({"label": e.label} if e.label else {})} for e in self.entities.values()],
            "facts": [f.to_dict() for f in self.facts],
        }

    @classmethod
    def from_dict(cls, obj) -> "FactDatabase":
        if not isinstance(obj, dict):
            raise InputError("database must be a JSON object")
        return cls(obj.get("entities", []), obj.get("facts", []))

    def extended(self, obj) -> "FactDatabase":
        """Copy of self with the entities and facts of a JSON database added; references may point into self."""
        if not isinstance(obj, dict):
            raise InputError("database must be a JSON object")
        db = self.merged(FactDatabase())
        for e in obj.get("entities", []):
            db.add_entity(e)
        for f in obj.get("facts", []):
            db.add_fact(f)
        return db

    def merged(self, other: "FactDatabase") -> "FactDatabase":
        db = FactDatabase(list(self.entities.values()) + [e for e in other.entities.values() if e.id not in self.entities])
        for f in self.facts + other.facts:
            d = f.to_dict()
            d.pop("id")
            db.add_fact(d)
        return db


def _natural(v, loc) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise InputError(f"expected a non-negative integer, got {v!r}", location=loc)
    return v


# rule instances -----------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    id: str
    rule: str
    facts: tuple
    target: tuple  # (entity, quantity, side)
    inputs: tuple  # of (entity, quantity, side)
    fn: Callable = field(compare=False)


def _lo(v):
    return 0 if v == NONE else v


def compile_rules(db: FactDatabase) -> list:
    out: list = []

    def add(rule, facts, target, inputs, fn):
        out.append(Instance(f"i{len(out)}", rule, tuple(facts), target, tuple(inputs), fn))

    by_kind: dict = {}
    for f in db.facts:
        by_kind.setdefault(f.kind, []).append(f)
    flags = {k: {f.get("subject"): f for f in by_kind.get(k, [])} for k in ("nonzero_category", "generalized_cocore", "zero_category")}

    for f in by_kind.get("rdim_bound", []):
        x = f.get("subject")
        if f.get("lower") is not None:
            add("FACT", [f.id], (x, "rdim", "lower"), [], lambda v=f.get("lower"): v)
        if f.get("upper") is not None:
            add("FACT", [f.id], (x, "rdim", "upper"), [], lambda v=f.get("upper"): v)
    for x, f in flags["zero_category"].items():
        if x in flags["nonzero_category"]:
            raise InconsistencyError(f"{x} is declared both zero and nonzero", location=x)
        add("ZERO", [f.id], (x, "rdim", "lower"), [], lambda: 0)
        add("ZERO", [f.id], (x, "rdim", "upper"), [], lambda: 0)
    for f in by_kind.get("intersection_count", []):
        add("FACT", [f.id], (f.get("subject"), "intersection", "upper"), [], lambda v=f.get("value"): v)
    # R1
    for f in by_kind.get("lef_crit_count", []):
        if not f.get("weinstein_fibers", True):
            continue
        x, k = f.get("subject"), f.get("value")
        add("R1", [f.id], (x, "lef", "upper"), [], lambda k=k: k)
        add("R1", [f.id], (x, "rdim", "upper"), [], lambda k=k: max(k - 1, 0))
    for x, f in flags["nonzero_category"].items():
        add("R1", [f.id], (x, "lef", "lower"), [(x, "rdim", "lower")], lambda r: _lo(r) + 1)
    # R2
    for x, f in flags["generalized_cocore"].items():
        nz = flags["nonzero_category"].get(x)
        if nz is not None:
            add("R2", [f.id, nz.id], (x, "intersection", "lower"), [(x, "rdim", "lower")], lambda r: _lo(r) + 1)
            add("R2", [f.id, nz.id], (x, "rdim", "upper"), [(x, "intersection", "upper")], lambda u: INF if u == INF else max(u - 1, 0))
    # R3
    for f in by_kind.get("embedding", []):
        a, b = f.get("inner"), f.get("outer")
        add("R3", [f.id], (a, "rdim", "upper"), [(b, "rdim", "upper")], lambda u: u)
        add("R3", [f.id], (b, "rdim", "lower"), [(a, "rdim", "lower")], lambda r: r)
    # R4
    for f in by_kind.get("quotient", []):
        src, tgt = f.get("of"), f.get("target")
        add("R4", [f.id], (tgt, "rdim", "upper"), [(src, "rdim", "upper")], lambda u: u)
        add("R4", [f.id], (src, "rdim", "lower"), [(tgt, "rdim", "lower")], lambda r: r)
    for f in by_kind.get("point_like_dim", []):
        add("R5", [f.id], (f.get("subject"), "rdim", "lower"), [], lambda v=f.get("value"): v)
    for f in by_kind.get("krull_lower", []):
        add("R6", [f.id], (f.get("subject"), "rdim", "lower"), [], lambda v=f.get("value"): v)
    for f in by_kind.get("polarized_weinstein_dim", []):
        add("R7", [f.id], (f.get("subject"), "rdim", "upper"), [], lambda n=f.get("value"): arboreal_default_bound(n))
    # R8 lives under the same skeleton hypotheses as R2
    for f in by_kind.get("proper_module", []):
        x = f.get("subject")
        if x in flags["generalized_cocore"]:
            add("R8", [f.id, flags["generalized_cocore"][x].id], (x, "intersection", "lower"), [], lambda: 2)
    # R9
    for f in by_kind.get("mirror_equivalence", []):
        y, p = f.get("variety"), f.get("pair")
        for a, b in ((y, p), (p, y)):
            add("R9", [f.id], (a, "rdim", "lower"), [(b, "rdim", "lower")], lambda r: r)
            add("R9", [f.id], (a, "rdim", "upper"), [(b, "rdim", "upper")], lambda u: u)
        if f.get("variety_dim") is not None:
            add("R9", [f.id], (y, "rdim", "lower"), [], lambda d=f.get("variety_dim"): d)
    return out


# propagation --------------------------------------------------------------

@dataclass
class TraceEntry:
    step: int
    instance: str
    rule: str
    facts: list
    inputs: list  # [{"entity", "quantity", "side", "value", "from_step"}]
    entity: str
    quantity: str
    side: str
    value: object

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "instance": self.instance,
            "rule": self.rule,
            "facts": list(self.facts),
            "inputs": [dict(i) for i in self.inputs],
            "entity": self.entity,
            "quantity": self.quantity,
            "side": self.side,
            "value": self.value,
        }


class _State:
    def __init__(self):
        self.vals: dict = {}
        self.setter: dict = {}

    def get(self, key):
        ent, q, side = key
        return self.vals.get(key, NONE if side == "lower" else INF)

    def improves(self, key, v) -> bool:
        if v is None:
            return False
        cur = self.get(key)
        if key[2] == "lower":
            return v != NONE and (cur == NONE or v > cur)
        return v != INF and (cur == INF or v < cur)


@dataclass
class DeductionResult:
    db: FactDatabase
    intervals: dict  # (entity, quantity) -> BoundInterval
    trace: list
    setter: dict  # (entity, quantity, side) -> step

    def interval(self, entity: str, quantity: str = "rdim") -> BoundInterval:
        if entity not in self.db.entities:
            raise InputError(f"unknown entity {entity!r}", location=entity)
        if quantity not in QUANTITIES:
            raise InputError(f"unknown quantity {quantity!r}")
        return self.intervals.get((entity, quantity), BoundInterval())

    def intervals_dict(self) -> dict:
        out = {}
        for e in self.db.entities:
            out[e] = {q: self.interval(e, q).to_list() for q in QUANTITIES if (e, q) in self.intervals}
        return out

    def to_dict(self) -> dict:
        return {"intervals": self.intervals_dict(), "trace": [t.to_dict() for t in self.trace]}


def _apply(state: _State, inst: Instance, trace: list, db: FactDatabase) -> bool:
    args = [state.get(k) for k in inst.inputs]
    v = inst.fn(*args)
    if not state.improves(inst.target, v):
        return False
    entry = TraceEntry(
        len(trace),
        inst.id,
        inst.rule,
        list(inst.facts),
        [
            {"entity": k[0], "quantity": k[1], "side": k[2], "value": a, "from_step": state.setter.get(k)}
            for k, a in zip(inst.inputs, args)
        ],
        inst.target[0],
        inst.target[1],
        inst.target[2],
        v,
    )
    trace.append(entry)
    state.vals[inst.target] = v
    state.setter[inst.target] = entry.step
    ent, q, _ = inst.target
    lo, up = state.get((ent, q, "lower")), state.get((ent, q, "upper"))
    if lo != NONE and up != INF and lo > up:
        partial = DeductionResult(db, _intervals(state), trace, dict(state.setter))
        chain = explain(partial, ent, q)
        raise InconsistencyError(
            f"{q}({ent}) has lower {lo} > upper {up}", location=ent, trace=[t.to_dict() for t in chain["steps"]]
        )
    return True


def _intervals(state: _State) -> dict:
    out = {}
    keys = {(e, q) for e, q, _ in state.vals}
    for e, q in sorted(keys):
        out[(e, q)] = BoundInterval(state.get((e, q, "lower")), state.get((e, q, "upper")))
    return out


def propagate(db: FactDatabase, order: list | None = None, seed: int | None = None, max_sweeps: int = 10_000) -> DeductionResult:
    """Run every rule instance to a fixed point.

    ``order`` is a permutation of instance indices; ``seed`` shuffles them.
    The resulting intervals do not depend on either.
    """
    insts = compile_rules(db)
    if seed is not None:
        insts = list(insts)
        random.Random(seed).shuffle(insts)
    elif order is not None:
        insts = [insts[i] for i in order]
    state = _State()
    trace: list = []
    for _ in range(max_sweeps):
        changed = False
        for inst in insts:
            changed |= _apply(state, inst, trace, db)
        if not changed:
            break
    else:
        raise InconsistencyError("propagation did not converge", trace=[t.to_dict() for t in trace[-20:]])
    for e in db.entities:
        state.vals.setdefault((e, "rdim", "lower"), NONE)
    ints = _intervals(state)
    return DeductionResult(db, ints, trace, dict(state.setter))


def replay(db: FactDatabase, trace: list) -> DeductionResult:
    """Re-run a recorded trace, recomputing every step from its rule instance."""
    insts = {i.id: i for i in compile_rules(db)}
    state = _State()
    out: list = []
    for k, raw in enumerate(trace):
        t = raw.to_dict() if isinstance(raw, TraceEntry) else raw
        inst = insts.get(t.get("instance"))
        if inst is None or inst.rule != t.get("rule"):
            raise InputError(f"trace step {k} names an unknown rule instance", location=f"trace/{k}")
        if (inst.target[0], inst.target[1], inst.target[2]) != (t["entity"], t["quantity"], t["side"]):
            raise InputError(f"trace step {k} does not match its instance target", location=f"trace/{k}")
        if not _apply(state, inst, out, db) or out[-1].value != t["value"]:
            raise InconsistencyError(f"trace step {k} does not replay", location=f"trace/{k}", trace=[t])
    for e in db.entities:
        state.vals.setdefault((e, "rdim", "lower"), NONE)
    return DeductionResult(db, _intervals(state), out, dict(state.setter))


def explain(result: DeductionResult, entity: str, quantity: str = "rdim") -> dict:
    """Steps that justify the current lower and upper bound of one quantity."""
    iv = result.interval(entity, quantity)
    roots = [result.setter.get((entity, quantity, s)) for s in ("lower", "upper")]
    need: set = set()
    stack = [r for r in roots if r is not None]
    while stack:
        s = stack.pop()
        if s in need:
            continue
        need.add(s)
        for inp in result.trace[s].inputs:
            if inp["from_step"] is not None:
                stack.append(inp["from_step"])
    steps = [result.trace[s] for s in sorted(need)]
    return {"entity": entity, "quantity": quantity, "interval": iv, "steps": steps}


def narrative(result: DeductionResult, entity: str | None = None) -> str:
    lines = []
    for t in result.trace:
        if entity is not None and t.entity != entity:
            continue
        rel = ">=" if t.side == "lower" else "<="
        src = ", ".join(f"{i['quantity']}({i['entity']}).{i['side']}={i['value']}" for i in t.inputs)
        via = f" from {src}" if src else ""
        lines.append(f"[{t.step}] {t.rule}: {t.quantity}({t.entity}) {rel} {t.value}{via} (facts {', '.join(t.facts)})")
    return "\n".join(lines)


def database_from_json(obj) -> FactDatabase:
    return FactDatabase.from_dict(obj)


def dumps_result(result: DeductionResult) -> str:
    return json.dumps(result.to_dict(), sort_keys=True)
