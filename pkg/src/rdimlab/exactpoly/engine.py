"""Dict-level Groebner machinery shared by ideals and submodules.

A vector is a dict mapping labels ``(pos, exps)`` to nonzero coefficients;
polynomials are the rank-one case with every ``pos`` equal to 0.
"""

from __future__ import annotations

import heapq
import threading
from collections import OrderedDict


class _Rev:
    """Heap wrapper that inverts comparisons (heapq is a min-heap)."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k


def label_key(order, pot: bool):
    okey = order.key
    if pot:
        return lambda lab: (-lab[0], okey(lab[1]))
    return lambda lab: (okey(lab[1]), -lab[0])


def _div(a, b, p):
    if p:
        return a * pow(b, -1, p) % p
    return a / b


def _divides(small, big) -> bool:
    for a, b in zip(small, big):
        if a > b:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def leading(vec: dict, key):
    lab = max(vec, key=key)
    return lab, vec[lab]


class Reducer:
    """Leading-term index of a fixed list of vectors."""

    def __init__(self, basis: list, key, p: int):
        self.key = key
        self.p = p
        self.by_pos: dict = {}
        for g in basis:
            if not g:
                continue
            (pos, exps), lc = leading(g, key)
            self.by_pos.setdefault(pos, []).append((exps, lc, g))

    def find(self, lab):
        pos, exps = lab
        for gexps, lc, g in self.by_pos.get(pos, ()):
            if _divides(gexps, exps):
                return gexps, lc, g
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Remainder of ``f``; with ``full=False`` only the head is reduced."""
        if not f or not self.by_pos:
            return dict(f)
        key, p = self.key, self.p
        f = dict(f)
        heap = [(_Rev(key(lab)), lab) for lab in f]
        heapq.heapify(heap)
        queued = set(f)
        rem = {}
        while heap:
            _, lab = heapq.heappop(heap)
            queued.discard(lab)
            c = f.get(lab)
            if not c:
                continue
            hit = self.find(lab)
            if hit is None:
                rem[lab] = f.pop(lab)
                if not full:
                    rem.update(f)
                    return rem
                continue
            gexps, lc, g = hit
            q = _div(c, lc, p)
            shift = tuple(a - b for a, b in zip(lab[1], gexps))
            for (gp, ge), gc in g.items():
                nl = (gp, tuple(a + b for a, b in zip(ge, shift)))
                v = f.get(nl, 0) - q * gc
                if p:
                    v %= p
                if v:
                    f[nl] = v
                    if nl not in queued:
                        queued.add(nl)
                        heapq.heappush(heap, (_Rev(key(nl)), nl))
                else:
                    f.pop(nl, None)
        return rem


def _monic(vec: dict, key, p: int) -> dict:
    _, lc = leading(vec, key)
    return {lab: _div(c, lc, p) for lab, c in vec.items()}


def _spoly(f, g, key, p):
    (pf, ef), cf = leading(f, key)
    (_, eg), cg = leading(g, key)
    m = _lcm(ef, eg)
    sf = tuple(a - b for a, b in zip(m, ef))
    sg = tuple(a - b for a, b in zip(m, eg))
    out: dict = {}
    icf = _div(1, cf, p)
    icg = _div(1, cg, p)
    for (pos, e), c in f.items():
        lab = (pos, tuple(a + b for a, b in zip(e, sf)))
        out[lab] = out.get(lab, 0) + c * icf
    for (pos, e), c in g.items():
        lab = (pos, tuple(a + b for a, b in zip(e, sg)))
        out[lab] = out.get(lab, 0) - c * icg
    if p:
        return {k: v % p for k, v in out.items() if v % p}
    return {k: v for k, v in out.items() if v}


def groebner(gens: list, order, *, pot: bool = True, p: int = 0, polynomial: bool = False) -> list:
    """Reduced Groebner basis (monic, sorted by descending leading term).

    ``polynomial`` enables the coprime-leading-term criterion, which is only
    valid for ideals (rank one).
    """
    key = label_key(order, pot)
    basis: list = []
    leads: list = []
    pairs: set = set()

    def add(h):
        idx = len(basis)
        basis.append(h)
        leads.append(leading(h, key)[0])
        for i in range(idx):
            if leads[i][0] == leads[idx][0]:
                pairs.add((i, idx))

    for g in gens:
        g = {k: v for k, v in g.items() if v}
        if not g:
            continue
        red = Reducer(basis, key, p).reduce(g) if basis else g
        if red:
            add(_monic(red, key, p))

    def pair_key(ij):
        i, j = ij
        m = _lcm(leads[i][1], leads[j][1])
        return (key((leads[i][0], m)), ij)

    reducer = Reducer(basis, key, p)
    while pairs:
        ij = min(pairs, key=pair_key)
        pairs.discard(ij)
        i, j = ij
        (pos, ei), (_, ej) = leads[i], leads[j]
        m = _lcm(ei, ej)
        if polynomial and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        skip = False
        for k in range(len(basis)):
            if k in ij or leads[k][0] != pos or not _divides(leads[k][1], m):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], key, p)
        h = reducer.reduce(s)
        if h:
            add(_monic(h, key, p))
            reducer = Reducer(basis, key, p)
    return _finalize(basis, key, p)


def _finalize(basis, key, p):
    leads = [leading(g, key)[0] for g in basis]
    keep = []
    for i, (pos, e) in enumerate(leads):
        dominated = False
        for j, (pos2, e2) in enumerate(leads):
            if i == j or pos2 != pos or not _divides(e2, e):
                continue
            if e2 != e or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(basis[i])
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = Reducer(others, key, p).reduce(g)
        out.append(_monic(r, key, p))
    out.sort(key=lambda g: key(leading(g, key)[0]), reverse=True)
    return out


class _Cache:
    """Small thread-safe LRU keyed on frozen inputs."""

    def __init__(self, size=512):
        self.size = size
        self.data: OrderedDict = OrderedDict()
        self.lock = threading.Lock()

    def get(self, k):
        with self.lock:
            if k in self.data:
                self.data.move_to_end(k)
                return self.data[k]
        return None

    def put(self, k, v):
        with self.lock:
            self.data[k] = v
            self.data.move_to_end(k)
            while len(self.data) > self.size:
                self.data.popitem(last=False)


_CACHE = _Cache()


def cached_groebner(gens: list, order, *, pot=True, p=0, polynomial=False) -> list:
    k = (tuple(frozenset(g.items()) for g in gens), order, pot, p, polynomial)
    hit = _CACHE.get(k)
    if hit is not None:
        return [dict(g) for g in hit]
    res = groebner(gens, order, pot=pot, p=p, polynomial=polynomial)
    _CACHE.put(k, [dict(g) for g in res])
    return res
