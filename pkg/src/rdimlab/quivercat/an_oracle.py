"""Interval objects in the bounded derived category of k[A_n] (linear
orientation 1 -> ... -> n), closed-form Hom/Ext tables and generation times.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from ..errors import InputError
from . import reps

UNREACHED = "UNREACHED"


@dataclass(frozen=True)
class IntervalObject:
    """Finite direct sum of shifted interval modules M[i, j][shift]."""

    n: int
    summands: tuple  # of (i, j, shift)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError("n must be a positive integer")
        norm = []
        for s in self.summands:
            if len(s) == 2:
                s = (s[0], s[1], 0)
            i, j, sh = (int(x) for x in s)
            if not (1 <= i <= j <= self.n):
                raise InputError(f"interval [{i},{j}] is outside 1..{self.n}")
            norm.append((i, j, sh))
        object.__setattr__(self, "summands", tuple(sorted(norm)))

    @classmethod
    def of(cls, n, *intervals):
        return cls(n, tuple(intervals))

    def intervals(self) -> set:
        return {(i, j) for i, j, _ in self.summands}

    def __add__(self, other: "IntervalObject") -> "IntervalObject":
        if other.n != self.n:
            raise InputError("objects over different A_n cannot be summed")
        return IntervalObject(self.n, self.summands + other.summands)

    def to_dict(self) -> dict:
        return {"n": self.n, "summands": [list(s) for s in self.summands]}


def all_intervals(n: int) -> list:
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def full_generator(n: int) -> IntervalObject:
    return IntervalObject(n, tuple(all_intervals(n)))


def projective_generator(n: int) -> IntervalObject:
    """P_i = M[i, n] for the orientation 1 -> ... -> n."""
    return IntervalObject(n, tuple((i, n) for i in range(1, n + 1)))


def hom_interval(a, b, c, d) -> int:
    """dim Hom(M[a,b], M[c,d])."""
    return int(c <= a <= d <= b)


def ext1_interval(a, b, c, d) -> int:
    """dim Ext^1(M[a,b], M[c,d])."""
    return int(a < c <= b + 1 <= d)


def derived_hom(a, b, c, d, k) -> int:
    """dim Hom(M[a,b], M[c,d][k]) in the derived category (hereditary)."""
    if k == 0:
        return hom_interval(a, b, c, d)
    if k == 1:
        return ext1_interval(a, b, c, d)
    return 0


def an_hom_total(x: IntervalObject, y: IntervalObject, *, all_shifts: bool = False) -> int:
    """Total dim Hom(x, y); with ``all_shifts`` sum over every relative shift."""
    if x.n != y.n:
        raise InputError(f"objects live over A_{x.n} and A_{y.n}")
    total = 0
    for a, b, s in x.summands:
        for c, d, t in y.summands:
            if all_shifts:
                total += hom_interval(a, b, c, d) + ext1_interval(a, b, c, d)
            else:
                total += derived_hom(a, b, c, d, t - s)
    return total


def hom_cone_pieces(y, x) -> list:
    """Interval summands of ker and coker of a nonzero map M[y] -> M[x]."""
    a, b = y
    c, d = x
    out = []
    if d < b:
        out.append((d + 1, b))
    if c < a:
        out.append((c, a - 1))
    return out


def ext_middle(y, x) -> list:
    """Middle term of the nonsplit extension 0 -> M[x] -> E -> M[y] -> 0."""
    a, b = y
    c, d = x
    out = [(a, d)]
    if c <= b:
        out.append((c, b))
    return out


def pullback_kernel(y1, y2, x) -> list:
    """ker of a map M[y1] (+) M[y2] -> M[x] that is nonzero on both summands."""
    (a1, b1), (a2, b2), (_, d) = y1, y2, x
    out = [(max(a1, a2), max(b1, b2))]
    if d + 1 <= min(b1, b2):
        out.append((d + 1, min(b1, b2)))
    return out


def pushout_cokernel(y, x1, x2) -> list:
    """coker of a map M[y] -> M[x1] (+) M[x2] that is nonzero on both summands."""
    (a, _), (c1, d1), (c2, d2) = y, x1, x2
    out = [(min(c1, c2), min(d1, d2))]
    if max(c1, c2) <= a - 1:
        out.append((max(c1, c2), a - 1))
    return out


def _cone_pieces(small: set, big: set) -> set:
    """Summands of extensions 0 -> C -> E -> K -> 0 where C is a cokernel and
    K a kernel of maps from ``small`` to ``big`` with at most two summands
    on either side of a single target or source."""
    cok = set(big)
    ker = set(small)
    for y in small:
        for x in big:
            if hom_interval(*y, *x):
                a, b = y
                c, d = x
                if d < b:
                    ker.add((d + 1, b))
                if c < a:
                    cok.add((c, a - 1))
    for x in big:
        srcs = sorted(y for y in small if hom_interval(*y, *x))
        for y1, y2 in itertools.combinations_with_replacement(srcs, 2):
            ker.update(pullback_kernel(y1, y2, x))
    for y in small:
        dsts = sorted(x for x in big if hom_interval(*y, *x))
        for x1, x2 in itertools.combinations_with_replacement(dsts, 2):
            cok.update(pushout_cokernel(y, x1, x2))
    out = cok | ker
    for k in ker:
        for c in cok:
            if ext1_interval(*k, *c):
                out.update(ext_middle(k, c))
    return out


def _one_step(level1: set, levelm: set) -> set:
    return set(levelm) | _cone_pieces(level1, levelm) | _cone_pieces(levelm, level1)


def generation_time(generator: IntervalObject, n: int | None = None, max_level: int = 8) -> dict:
    """Minimal level of every indecomposable M[i,j] (up to shift), or UNREACHED.

    Level 1 holds the interval summands of the generator; level m+1 adds the
    summands of cones between a level-1 and a level-m interval, using the
    closed-form kernel/cokernel/extension rules.
    """
    n = generator.n if n is None else n
    if n != generator.n:
        raise InputError("generator lives over a different A_n")
    if not generator.summands:
        raise InputError("generator must be nonempty")
    if max_level < 1:
        raise InputError("max_level must be positive")
    level1 = generator.intervals()
    levels = {iv: 1 for iv in level1}
    current = set(level1)
    for m in range(2, max_level + 1):
        nxt = _one_step(level1, current)
        for iv in nxt - current:
            levels[iv] = m
        if nxt == current:
            break
        current = nxt
    return {iv: levels.get(iv, UNREACHED) for iv in all_intervals(n)}


def generation_witness(times: dict) -> object:
    """Level - 1 of the slowest indecomposable, or UNREACHED."""
    vals = list(times.values())
    if any(v == UNREACHED for v in vals):
        return UNREACHED
    return max(vals) - 1


# brute-force cross-check --------------------------------------------------

def _multisets(items, max_size):
    items = sorted(items)
    for k in range(0, max_size + 1):
        yield from itertools.combinations_with_replacement(items, k)


def _map_choices(V, W, coeffs=(0, 1), limit=64):
    basis = reps.hom_basis(V, W)
    count = 0
    for cs in itertools.product(coeffs, repeat=len(basis)):
        f = [reps.zeros(W.dims[v], V.dims[v]) for v in range(V.n)]
        for c, g in zip(cs, basis):
            if c:
                for v in range(V.n):
                    for r in range(W.dims[v]):
                        for s in range(V.dims[v]):
                            f[v][r][s] += c * g[v][r][s]
        yield f
        count += 1
        if count >= limit:
            return


def brute_force_step(n: int, level1: set, levelm: set, max_size: int = 2, max_ones: int = 2) -> set:
    """Indecomposable summands of extensions 0 -> C -> E -> K -> 0 with
    C = coker(B1 -> A1) and K = ker(B2 -> A2), where (B, A) range over
    (add level1, add levelm) and (add levelm, add level1), enumerated with
    bounded multiplicities and 0/1 coefficients."""
    found = set()
    for small, big in ((level1, levelm), (levelm, level1)):
        cokernels = {}
        kernels = {}
        for B in _multisets(small, max_size):
            VB = reps.sum_of_intervals(n, B)
            for A in _multisets(big, max_size):
                VA = reps.sum_of_intervals(n, A)
                for f in _map_choices(VB, VA):
                    c = reps.cokernel_rep(VA, f, VB)
                    cokernels[tuple(sorted(c.items()))] = c
                    k = reps.kernel_rep(VB, f)
                    kernels[tuple(sorted(k.items()))] = k
        for cdec in cokernels.values():
            C = reps.rep_from_decomposition(n, cdec)
            for kdec in kernels.values():
                K = reps.rep_from_decomposition(n, kdec)
                for h in reps.extension_choices(C, K, max_ones):
                    found.update(reps.decompose(reps.extension_rep(C, K, h)))
    return found


def brute_force_generation_time(generator: IntervalObject, max_level: int = 4, **kw) -> dict:
    n = generator.n
    level1 = generator.intervals()
    levels = {iv: 1 for iv in level1}
    current = set(level1)
    for m in range(2, max_level + 1):
        nxt = brute_force_step(n, level1, current, **kw) | current
        for iv in nxt - current:
            levels[iv] = m
        if nxt == current:
            break
        current = nxt
    return {iv: levels.get(iv, UNREACHED) for iv in all_intervals(n)}


def brute_force_hom_tables(n: int) -> dict:
    """{(a,b,c,d): (hom, ext1)} from explicit representation linear algebra."""
    out = {}
    for (a, b), (c, d) in itertools.product(all_intervals(n), repeat=2):
        V = reps.interval_rep(n, a, b)
        W = reps.interval_rep(n, c, d)
        out[(a, b, c, d)] = (reps.hom_dim(V, W), reps.ext1_dim(V, W))
    return out


def multiset_counter(obj: IntervalObject) -> Counter:
    return Counter((i, j) for i, j, _ in obj.summands)
