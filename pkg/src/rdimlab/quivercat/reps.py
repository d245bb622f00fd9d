"""Brute-force representation theory of the linearly oriented A_n quiver
1 -> 2 -> ... -> n over Q, used as an oracle for the closed-form tables.

A representation is a list of vertex dimensions plus matrices
``maps[i]: V_i -> V_{i+1}`` stored as lists of rows of Fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b, inner=None):
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)] for i in range(len(a))]


def rank(m) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    rows = [list(r) for r in m if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][c]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rk])]
        rk += 1
        if rk == len(rows):
            break
    return rk


def nullspace(m, ncols) -> list:
    """Basis of {v : m v = 0} as a list of vectors."""
    rows = [list(r) for r in m]
    pivots = []
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][c]
        rows[rk] = [x / p for x in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rk])]
        pivots.append(c)
        rk += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


@dataclass
class Rep:
    dims: list
    maps: list  # maps[i] has shape dims[i+1] x dims[i]

    @property
    def n(self) -> int:
        return len(self.dims)

    def composite(self, i: int, j: int):
        """Matrix of V_i -> V_j (0-based, i <= j)."""
        m = identity(self.dims[i])
        for k in range(i, j):
            m = matmul(self.maps[k], m, self.dims[k]) if self.dims[k] else zeros(self.dims[k + 1], self.dims[i])
        return m


def interval_rep(n: int, a: int, b: int) -> Rep:
    """M[a,b] (1-based, a <= b): Q on vertices a..b, identities between them."""
    dims = [1 if a <= v <= b else 0 for v in range(1, n + 1)]
    maps = []
    for i in range(n - 1):
        if dims[i] and dims[i + 1]:
            maps.append([[Fraction(1)]])
        else:
            maps.append(zeros(dims[i + 1], dims[i]))
    return Rep(dims, maps)


def direct_sum(reps) -> Rep:
    reps = list(reps)
    n = reps[0].n
    dims = [sum(r.dims[v] for r in reps) for v in range(n)]
    maps = []
    for i in range(n - 1):
        m = zeros(dims[i + 1], dims[i])
        ro = co = 0
        for r in reps:
            blk = r.maps[i]
            for x in range(r.dims[i + 1]):
                for y in range(r.dims[i]):
                    m[ro + x][co + y] = blk[x][y]
            ro += r.dims[i + 1]
            co += r.dims[i]
        maps.append(m)
    return Rep(dims, maps)


def sum_of_intervals(n: int, intervals) -> Rep:
    intervals = list(intervals)
    if not intervals:
        return Rep([0] * n, [zeros(0, 0) for _ in range(n - 1)])
    return direct_sum(interval_rep(n, a, b) for a, b in intervals)


def _hom_system(V: Rep, W: Rep):
    """Linear constraints on the block vector (f_1, ..., f_n) of a morphism."""
    n = V.n
    offsets = []
    total = 0
    for v in range(n):
        offsets.append(total)
        total += W.dims[v] * V.dims[v]

    def var(v, r, c):
        return offsets[v] + r * V.dims[v] + c

    eqs = []
    for i in range(n - 1):
        # W_i f_i = f_{i+1} V_i as maps V_i -> W_{i+1}
        for r in range(W.dims[i + 1]):
            for c in range(V.dims[i]):
                row = [Fraction(0)] * total
                for k in range(W.dims[i]):
                    if W.maps[i][r][k]:
                        row[var(i, k, c)] += W.maps[i][r][k]
                for k in range(V.dims[i + 1]):
                    if V.maps[i][k][c]:
                        row[var(i + 1, r, k)] -= V.maps[i][k][c]
                eqs.append(row)
    return eqs, total, offsets


def hom_dim(V: Rep, W: Rep) -> int:
    eqs, total, _ = _hom_system(V, W)
    return total - rank(eqs) if total else 0


def hom_basis(V: Rep, W: Rep) -> list:
    """Basis of Hom(V, W); each element is a list of matrices f_v: V_v -> W_v."""
    eqs, total, offsets = _hom_system(V, W)
    if not total:
        return []
    out = []
    for vec in nullspace(eqs, total):
        f = []
        for v in range(V.n):
            blk = [[vec[offsets[v] + r * V.dims[v] + c] for c in range(V.dims[v])] for r in range(W.dims[v])]
            f.append(blk)
        out.append(f)
    return out


def euler_form(x, y) -> int:
    """<x, y> = sum x_v y_v - sum over arrows i -> i+1 of x_i y_{i+1}."""
    return sum(a * b for a, b in zip(x, y)) - sum(x[i] * y[i + 1] for i in range(len(x) - 1))


def ext1_dim(V: Rep, W: Rep) -> int:
    return hom_dim(V, W) - euler_form(V.dims, W.dims)


def decompose_by_ranks(n: int, r) -> dict:
    """Interval multiplicities from a rank function r(i, j) (1-based, i <= j)."""

    def R(i, j):
        if i < 1 or j > n or i > j:
            return 0
        return r(i, j)

    out = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = R(i, j) - R(i - 1, j) - R(i, j + 1) + R(i - 1, j + 1)
            if m:
                out[(i, j)] = m
    return out


def decompose(V: Rep) -> dict:
    return decompose_by_ranks(V.n, lambda i, j: rank(V.composite(i - 1, j - 1)) if V.dims[i - 1] else 0)


def _stack_cols(blocks, nrows):
    out = [[] for _ in range(nrows)]
    for b in blocks:
        for r in range(nrows):
            out[r].extend(b[r] if b else [])
    return out


def _transpose(m, ncols):
    return [[m[r][c] for r in range(len(m))] for c in range(ncols)]


def kernel_rep(V: Rep, f: list) -> dict:
    """Interval decomposition of ker(f: V -> W)."""
    n = V.n
    bases = []
    for v in range(n):
        bases.append(nullspace(f[v], V.dims[v]) if V.dims[v] else [])

    def r(i, j):
        K = bases[i - 1]
        if not K:
            return 0
        comp = V.composite(i - 1, j - 1)
        imgs = [[sum((comp[a][b] * k[b] for b in range(len(k))), Fraction(0)) for a in range(V.dims[j - 1])] for k in K]
        return rank(imgs)

    return decompose_by_ranks(n, r)


def cokernel_rep(W: Rep, f: list, V: Rep) -> dict:
    """Interval decomposition of coker(f: V -> W)."""
    n = W.n

    def image_cols(j):
        # columns spanning im f_j inside W_j, returned as row vectors
        if not V.dims[j - 1] or not W.dims[j - 1]:
            return []
        return _transpose(f[j - 1], V.dims[j - 1])

    def r(i, j):
        if not W.dims[i - 1] or not W.dims[j - 1]:
            return 0
        comp = W.composite(i - 1, j - 1)
        pushed = _transpose(comp, W.dims[i - 1])
        im = image_cols(j)
        return rank(pushed + im) - rank(im)

    return decompose_by_ranks(n, r)


def extension_rep(C: Rep, K: Rep, h: list) -> Rep:
    """E = C (+) K with maps [[c_i, h_i], [0, k_i]]; h_i: K_i -> C_{i+1}."""
    n = C.n
    dims = [C.dims[v] + K.dims[v] for v in range(n)]
    maps = []
    for i in range(n - 1):
        m = zeros(dims[i + 1], dims[i])
        for a in range(C.dims[i + 1]):
            for b in range(C.dims[i]):
                m[a][b] = C.maps[i][a][b]
            for b in range(K.dims[i]):
                m[a][C.dims[i] + b] = h[i][a][b]
        for a in range(K.dims[i + 1]):
            for b in range(K.dims[i]):
                m[C.dims[i + 1] + a][C.dims[i] + b] = K.maps[i][a][b]
        maps.append(m)
    return Rep(dims, maps)


def rep_from_decomposition(n: int, dec: dict) -> Rep:
    ints = [iv for iv, m in sorted(dec.items()) for _ in range(m)]
    return sum_of_intervals(n, ints)


def extension_choices(C: Rep, K: Rep, max_ones: int = 2):
    """Gluing maps h with 0/1 entries and at most ``max_ones`` ones."""
    n = C.n
    slots = [(i, a, b) for i in range(n - 1) for a in range(C.dims[i + 1]) for b in range(K.dims[i])]
    for k in range(0, min(max_ones, len(slots)) + 1):
        for chosen in itertools.combinations(slots, k):
            h = [zeros(C.dims[i + 1], K.dims[i]) for i in range(n - 1)]
            for i, a, b in chosen:
                h[i][a][b] = Fraction(1)
            yield h
