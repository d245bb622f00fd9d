"""Upper bounds from covers and decompositions.

A stratified skeleton arrives as a simplicial complex whose simplices carry
rooted signed trees (the local arboreal models).  The face poset of the
complex plays the role of the star cover: a simplex of dimension d sits at
height d + 1, and the bound is sum over levels of (local rdim + 1), minus 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InputError
from .quivercat import RootedSignedTree, quiver_rdim, tree_from_json, tree_to_quiver

DEFAULT = "DEFAULT"
ADE_TREE_SIZE = 4  # every tree on at most 4 vertices is a path or a star, hence ADE


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    simplices: tuple  # of frozensets

    def __post_init__(self):
        if not isinstance(self.vertex_count, int) or self.vertex_count < 0:
            raise InputError("vertex count must be a non-negative integer", location="vertices")
        simps = []
        seen = set()
        for k, s in enumerate(self.simplices):
            fs = frozenset(int(v) for v in s)
            if not fs:
                raise InputError("empty simplex", location=f"simplices/{k}")
            if len(fs) != len(tuple(s)):
                raise InputError("simplex repeats a vertex", location=f"simplices/{k}")
            if any(not (0 <= v < self.vertex_count) for v in fs):
                raise InputError(f"simplex {sorted(fs)} uses a vertex outside 0..{self.vertex_count - 1}", location=f"simplices/{k}")
            if fs in seen:
                raise InputError(f"simplex {sorted(fs)} listed twice", location=f"simplices/{k}")
            seen.add(fs)
            simps.append(fs)
        for s in simps:
            for face in _proper_faces(s):
                if face not in seen:
                    raise InputError(f"face {sorted(face)} of {sorted(s)} is missing", location="simplices")
        object.__setattr__(self, "simplices", tuple(sorted(simps, key=_simplex_key)))

    @classmethod
    def closure(cls, vertex_count: int, simplices) -> "SimplicialComplex":
        """Complex generated by the given simplices and all of their faces."""
        out = set()
        for s in simplices:
            s = frozenset(s)
            out.add(s)
            out.update(_proper_faces(s))
        return cls(vertex_count, tuple(out))

    @property
    def dimension(self) -> int:
        if not self.simplices:
            raise InputError("empty complex")
        return max(len(s) for s in self.simplices) - 1

    def components(self) -> list:
        """Vertex sets of the connected components."""
        used = sorted({v for s in self.simplices for v in s})
        parent = {v: v for v in used}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for s in self.simplices:
            vs = sorted(s)
            for w in vs[1:]:
                parent[find(w)] = find(vs[0])
        groups = {}
        for v in used:
            groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def restrict(self, verts) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_count, tuple(s for s in self.simplices if s <= verts))


def _proper_faces(s: frozenset):
    for k in range(1, len(s)):
        for f in itertools.combinations(sorted(s), k):
            yield frozenset(f)


def _simplex_key(s):
    return (len(s), sorted(s))


def star_poset_depth(k: SimplicialComplex) -> int:
    """Longest chain of stars: 1 + the top simplex dimension."""
    return k.dimension + 1


def simplex_label_rdim(label, n: int, dim: int) -> int:
    """Local rdim of the stalk quiver attached to a simplex of dimension ``dim``."""
    if label == DEFAULT:
        size = n - dim + 1
        return 0 if size <= ADE_TREE_SIZE else 1
    return quiver_rdim(tree_to_quiver(label))


@dataclass(frozen=True)
class StratLabeledComplex:
    complex: SimplicialComplex
    ambient_half_dim: int
    labels: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        n = self.ambient_half_dim
        if not isinstance(n, int) or n < 1:
            raise InputError("ambient half dimension n must be a positive integer", location="n")
        if not self.complex.simplices:
            raise InputError("empty complex", location="simplices")
        labels = {frozenset(k): v for k, v in self.labels.items()}
        extra = set(labels) - set(self.complex.simplices)
        if extra:
            raise InputError(f"label on unknown simplex {sorted(next(iter(extra)))}", location="simplices")
        for s in self.complex.simplices:
            d = len(s) - 1
            lab = labels.setdefault(s, DEFAULT)
            if d > n:
                raise InputError(f"simplex {sorted(s)} has dimension {d} > n = {n}", location=_loc(s))
            if lab == DEFAULT:
                continue
            if not isinstance(lab, RootedSignedTree):
                raise InputError(f"label of {sorted(s)} must be DEFAULT or a tree", location=_loc(s))
            if lab.size - 1 > n - d:
                raise InputError(
                    f"tree on {lab.size} vertices is too large for a {d}-simplex when n = {n}", location=_loc(s)
                )
        object.__setattr__(self, "labels", labels)

    def label(self, s) -> object:
        return self.labels[frozenset(s)]

    def local_rdim(self, s) -> int:
        s = frozenset(s)
        return simplex_label_rdim(self.labels[s], self.ambient_half_dim, len(s) - 1)

    def restrict(self, verts) -> "StratLabeledComplex":
        sub = self.complex.restrict(verts)
        return StratLabeledComplex(sub, self.ambient_half_dim, {s: self.labels[s] for s in sub.simplices})


def _loc(s) -> str:
    return "simplices/" + "-".join(str(v) for v in sorted(s))


def level_rdim(s: StratLabeledComplex, level: int) -> int:
    depth = star_poset_depth(s.complex)
    if not isinstance(level, int) or not (1 <= level <= depth):
        raise InputError(f"level must lie in 1..{depth}, got {level!r}", location="level")
    return max(s.local_rdim(x) for x in s.complex.simplices if len(x) == level)


@dataclass(frozen=True)
class CoverBoundReport:
    depth: int
    per_level_rdim: list
    bound: int
    trace: list
    realizers: list = field(default_factory=list)
    components: list = field(default_factory=list)
    chain_bound: int | None = None

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "per_level_rdim": list(self.per_level_rdim),
            "bound": self.bound,
            "realizers": [sorted(r) for r in self.realizers],
            "trace": list(self.trace),
            "components": [c.to_dict() for c in self.components],
            "experimental_chain_bound": self.chain_bound,
            "experimental_chain_bound_certified": False,
        }


def _chain_bound(s: StratLabeledComplex) -> int:
    # max over maximal flags of the flag-local sum; not certified
    best = {}
    for x in s.complex.simplices:
        r = s.local_rdim(x) + 1
        sub = [best[f] for f in _proper_faces(x) if len(f) == len(x) - 1]
        best[x] = r + (max(sub) if sub else 0)
    return max(best.values()) - 1


def _connected_bound(s: StratLabeledComplex) -> CoverBoundReport:
    depth = star_poset_depth(s.complex)
    per_level = []
    realizers = []
    trace = []
    for lvl in range(1, depth + 1):
        cells = [x for x in s.complex.simplices if len(x) == lvl]
        r = max(s.local_rdim(x) for x in cells)
        arg = next(x for x in cells if s.local_rdim(x) == r)
        per_level.append(r)
        realizers.append(arg)
        trace.append(f"level {lvl}: {len(cells)} simplices of dimension {lvl - 1}, max local rdim {r} at {sorted(arg)}")
    bound = sum(r + 1 for r in per_level) - 1
    trace.append(f"bound = sum(rdim_l + 1) - 1 = {bound}")
    return CoverBoundReport(depth, per_level, bound, trace, realizers, [], _chain_bound(s))


def descent_upper_bound(s: StratLabeledComplex) -> CoverBoundReport:
    """Homotopy-colimit bound; disjoint pieces are orthogonal, so take the max."""
    comps = s.complex.components()
    if len(comps) == 1:
        return _connected_bound(s)
    reports = [_connected_bound(s.restrict(c)) for c in comps]
    top = max(range(len(reports)), key=lambda i: reports[i].bound)
    r = reports[top]
    trace = [f"{len(comps)} connected components are mutually orthogonal; bound is the max"]
    trace += [f"component {sorted(c)}: bound {rep.bound}" for c, rep in zip(comps, reports)]
    chain = max(rep.chain_bound for rep in reports)
    return CoverBoundReport(r.depth, r.per_level_rdim, r.bound, trace + r.trace, r.realizers, reports, chain)


def default_complex(n: int) -> StratLabeledComplex:
    """The worst case: one n-simplex with all of its faces, DEFAULT labels."""
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer", location="n")
    k = SimplicialComplex.closure(n + 1, [range(n + 1)])
    return StratLabeledComplex(k, n)


def arboreal_default_bound(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer", location="n")
    return n if n <= 3 else 2 * n - 3


def sod_bound(parts) -> int:
    parts = list(parts)
    if not parts:
        raise InputError("semi-orthogonal decomposition needs at least one piece")
    if any(not isinstance(r, int) or isinstance(r, bool) or r < 0 for r in parts):
        raise InputError("piece dimensions must be non-negative integers")
    return sum(r + 1 for r in parts) - 1


def resolution_bound(length: int) -> int:
    if not isinstance(length, int) or isinstance(length, bool) or length < 0:
        raise InputError("resolution length must be a non-negative integer")
    if length == 0:
        raise InputError("resolution of length 0: zero category or contradiction", location="length")
    return length - 1


def complex_from_json(obj, close_faces: bool = False) -> StratLabeledComplex:
    if not isinstance(obj, dict):
        raise InputError("complex file must be a JSON object")
    for key in ("n", "vertices", "simplices"):
        if key not in obj:
            raise InputError(f"complex file needs {key!r}", location=key)
    labels = {}
    simps = []
    for k, entry in enumerate(obj["simplices"]):
        if isinstance(entry, list):
            entry = {"verts": entry}
        if not isinstance(entry, dict) or "verts" not in entry:
            raise InputError("simplex entries need 'verts'", location=f"simplices/{k}")
        verts = frozenset(entry["verts"])
        lab = entry.get("label", DEFAULT)
        if lab != DEFAULT:
            if not isinstance(lab, dict):
                raise InputError("label must be \"DEFAULT\" or a tree object", location=f"simplices/{k}/label")
            lab = tree_from_json(lab)
        simps.append(tuple(entry["verts"]))
        labels[verts] = lab
    if close_faces:
        cx = SimplicialComplex.closure(obj["vertices"], simps)
    else:
        cx = SimplicialComplex(obj["vertices"], tuple(simps))
    return StratLabeledComplex(cx, obj["n"], labels)
