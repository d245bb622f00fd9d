"""Quivers, Dynkin classification and the tree-to-quiver stalk rule."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..errors import InputError

ADE_TYPES = ("A", "D", "E6", "E7", "E8")


@dataclass(frozen=True)
class Quiver:
    """Vertices are 1..vertex_count; arrows are (source, target) pairs."""

    vertex_count: int
    arrows: tuple

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 1:
            raise InputError(f"vertex count must be a positive integer, got {n!r}")
        arrows = tuple((int(a), int(b)) for a, b in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        seen = set()
        for a, b in arrows:
            if not (1 <= a <= n and 1 <= b <= n):
                raise InputError(f"arrow ({a},{b}) uses a vertex outside 1..{n}", location="arrows")
            if a == b:
                raise InputError(f"loop at vertex {a}", location="arrows")
            edge = frozenset((a, b))
            if edge in seen:
                raise InputError(f"multiple edges between {a} and {b}", location="arrows")
            seen.add(edge)
        if len(arrows) != n - 1 or not _connected(n, arrows):
            if not _connected(n, arrows):
                raise InputError("quiver is not connected", location="arrows")
            raise InputError("underlying graph has a cycle", location="arrows")

    def neighbours(self) -> dict:
        adj = {v: [] for v in range(1, self.vertex_count + 1)}
        for a, b in self.arrows:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows]}


def _connected(n, arrows) -> bool:
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in arrows:
        adj[a].add(b)
        adj[b].add(a)
    stack, seen = [1], {1}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def quiver_from_json(obj) -> Quiver:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise InputError("quiver file needs 'vertices' and 'arrows'")
    arrows = obj.get("arrows", [])
    if not isinstance(arrows, list) or not all(isinstance(a, list) and len(a) == 2 for a in arrows):
        raise InputError("arrows must be a list of [from, to] pairs", location="arrows")
    return Quiver(obj["vertices"], tuple(tuple(a) for a in arrows))


def branch_lengths(q: Quiver) -> tuple:
    """Sorted branch lengths at the unique branch vertex ((n-1,) for a path)."""
    adj = q.neighbours()
    deg = {v: len(ws) for v, ws in adj.items()}
    branch = [v for v, d in deg.items() if d >= 3]
    if not branch:
        return (q.vertex_count - 1,)
    if len(branch) > 1 or deg[branch[0]] > 3:
        return ()
    c = branch[0]
    lens = []
    for start in adj[c]:
        prev, cur, length = c, start, 1
        while deg[cur] == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        lens.append(length)
    return tuple(sorted(lens))


def dynkin_classify(q: Quiver) -> str:
    """'A<n>', 'D<n>', 'E6', 'E7', 'E8' or 'NonDynkin' (underlying graph only)."""
    n = q.vertex_count
    br = branch_lengths(q)
    if len(br) == 1:
        return f"A{n}"
    if len(br) != 3:
        return "NonDynkin"
    p, r, s = br
    if p == 1 and r == 1:
        return f"D{s + 3}"
    if (p, r) == (1, 2) and s in (2, 3, 4):
        return f"E{s + 4}"
    return "NonDynkin"


def is_ade(kind: str) -> bool:
    return kind != "NonDynkin"


def quiver_rdim(q: Quiver) -> int:
    return 0 if is_ade(dynkin_classify(q)) else 1


@dataclass(frozen=True)
class RootedSignedTree:
    """Undirected tree with a root and signs on the edges away from the root."""

    edges: tuple
    root: object
    signs: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        verts = {v for e in edges for v in e} | {self.root}
        if any(len(e) != 2 or e[0] == e[1] for e in edges):
            raise InputError("tree edges must join two distinct vertices", location="edges")
        if len({frozenset(e) for e in edges}) != len(edges):
            raise InputError("tree has repeated edges", location="edges")
        if len(edges) != len(verts) - 1:
            raise InputError("edges do not form a tree", location="edges")
        adj = {v: set() for v in verts}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {self.root}, [self.root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != verts:
            raise InputError("tree is not connected", location="edges")
        need = {frozenset(e) for e in edges if self.root not in e}
        got = {}
        for k, v in self.signs.items():
            parts = str(k).split("-")
            if len(parts) != 2:
                raise InputError(f"bad sign key {k!r}", location="signs")
            e = frozenset(_coerce_vertex(p, verts) for p in parts)
            if v not in ("+", "-"):
                raise InputError(f"sign of {k} must be '+' or '-'", location="signs")
            got[e] = v
        if set(got) != need:
            raise InputError("signs must be given exactly on the edges not adjacent to the root", location="signs")
        object.__setattr__(self, "_signs", got)

    @classmethod
    def with_default_signs(cls, edges, root):
        signs = {f"{a}-{b}": "+" for a, b in edges if root not in (a, b)}
        return cls(tuple(edges), root, signs)

    @property
    def vertices(self) -> list:
        return sorted({v for e in self.edges for v in e} | {self.root}, key=lambda v: (str(type(v)), v))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "root": self.root, "signs": dict(self.signs)}


def _coerce_vertex(text, verts):
    for v in verts:
        if str(v) == text:
            return v
    raise InputError(f"sign refers to unknown vertex {text!r}", location="signs")


def tree_from_json(obj) -> RootedSignedTree:
    if not isinstance(obj, dict) or "edges" not in obj or "root" not in obj:
        raise InputError("tree needs 'edges' and 'root'")
    return RootedSignedTree(tuple(tuple(e) for e in obj["edges"]), obj["root"], dict(obj.get("signs", {})))


def tree_to_quiver(t: RootedSignedTree) -> Quiver:
    """Orient every edge toward the root; signs do not matter.

    Vertices are renumbered 1..N in sorted order of their labels.
    """
    verts = t.vertices
    idx = {v: i + 1 for i, v in enumerate(verts)}
    adj = {v: [] for v in verts}
    for a, b in t.edges:
        adj[a].append(b)
        adj[b].append(a)
    arrows = []
    stack, seen = [t.root], {t.root}
    while stack:
        v = stack.pop()
        for w in sorted(adj[v], key=lambda u: idx[u]):
            if w not in seen:
                seen.add(w)
                arrows.append((idx[w], idx[v]))
                stack.append(w)
    return Quiver(len(verts), tuple(sorted(arrows)))


# shape constructors used by tests and the catalog

def path_quiver(n: int) -> Quiver:
    return Quiver(n, tuple((i, i + 1) for i in range(1, n)))


def star_quiver(branches) -> Quiver:
    """Centre 1 with arms of the given lengths (arrows pointing inward)."""
    arrows = []
    nxt = 2
    for length in branches:
        prev = 1
        for _ in range(length):
            arrows.append((nxt, prev))
            prev = nxt
            nxt += 1
    return Quiver(nxt - 1, tuple(arrows))


def degree_sequence(q: Quiver) -> tuple:
    c = Counter()
    for a, b in q.arrows:
        c[a] += 1
        c[b] += 1
    return tuple(sorted((c[v] for v in range(1, q.vertex_count + 1)), reverse=True))
