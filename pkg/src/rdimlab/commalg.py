"""Krull dimension, Fitting ideals, annihilators, regular sequences and
Koszul depth for finitely presented modules over k[vars]/I.

A module is ``coker A`` for a matrix whose columns are given as vectors in
R^r. All computations lift to the polynomial ring by appending g*e_j for
every generator g of a Groebner basis of I.
"""

from __future__ import annotations

import itertools
import math
import os
import re
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError, NotFound, RdimLabError
from .exactpoly import (
    DEGREVLEX,
    FreeModuleVector,
    Polynomial,
    PolyRing,
    buchberger,
    module_groebner,
    syzygy_basis,
)


class _ZeroModule:
    """Sentinel dimension of the zero module (never confused with 0)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO_MODULE"

    def __reduce__(self):
        return (_ZeroModule, ())


ZERO_MODULE = _ZeroModule()

DEFAULT_TRIAL_BUDGET = 200


class RingPresentation:
    """R = k[variables] / (relations)."""

    def __init__(self, poly_ring: PolyRing, relations: Iterable[Polynomial] = ()):
        rels = tuple(relations)
        for f in rels:
            if not isinstance(f, Polynomial) or f.ring != poly_ring:
                raise InputError(f"relation {f!r} does not live in {poly_ring!r}")
        self.poly_ring = poly_ring
        self.relations = tuple(f for f in rels if not f.is_zero())
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def from_strings(cls, variables: Sequence[str], relations: Sequence[str] = (), characteristic: int = 0):
        ring = PolyRing(tuple(variables), characteristic)
        return cls(ring, [ring.parse(r) for r in relations])

    @property
    def variables(self) -> tuple:
        return self.poly_ring.names

    def gb(self):
        if self._gb is None:
            gb = buchberger(self.relations, DEGREVLEX, self.poly_ring)
            with self._lock:
                self._gb = gb
        return self._gb

    def element(self, f) -> Polynomial:
        if isinstance(f, str):
            return self.poly_ring.parse(f)
        if isinstance(f, int):
            return self.poly_ring.const(f)
        if not isinstance(f, Polynomial) or f.ring != self.poly_ring:
            raise InputError(f"{f!r} is not an element of {self.poly_ring!r}")
        return f

    def reduce(self, f) -> Polynomial:
        return self.gb().reduce(self.element(f))

    def is_zero_ring(self) -> bool:
        return self.gb().is_unit_ideal()

    def to_dict(self) -> dict:
        return {"variables": list(self.variables), "relations": [str(f) for f in self.relations]}

    def __eq__(self, other):
        return isinstance(other, RingPresentation) and self.poly_ring == other.poly_ring and self.relations == other.relations

    def __hash__(self):
        return hash((self.poly_ring, self.relations))

    def __repr__(self):
        return f"RingPresentation({self.to_dict()})"


class FPModule:
    """coker(A) for A: R^m -> R^r; ``relations`` are the columns of A."""

    def __init__(self, ring: RingPresentation, free_rank: int, relations: Iterable[FreeModuleVector] = ()):
        if not isinstance(free_rank, int) or free_rank < 1:
            raise InputError(f"free_rank must be a positive integer, got {free_rank!r}")
        rels = tuple(relations)
        for v in rels:
            if v.rank != free_rank:
                raise InputError(f"relation of length {v.rank} in a module of free rank {free_rank}")
            if v.ring != ring.poly_ring:
                raise InputError("relation vector lives in the wrong ring")
        self.ring = ring
        self.free_rank = free_rank
        self.relations = rels
        self._gb = None
        self._lock = threading.Lock()

    @classmethod
    def free(cls, ring: RingPresentation, rank: int = 1) -> "FPModule":
        return cls(ring, rank, ())

    @classmethod
    def from_strings(cls, ring: RingPresentation, free_rank: int, columns: Sequence[Sequence[str]]):
        cols = []
        for k, col in enumerate(columns):
            if len(col) != free_rank:
                raise InputError(f"relation column {k} has length {len(col)}, expected {free_rank}", location=f"/relations/{k}")
            cols.append(FreeModuleVector([ring.element(c) for c in col], ring.poly_ring))
        return cls(ring, free_rank, cols)

    @property
    def poly_ring(self) -> PolyRing:
        return self.ring.poly_ring

    def unit(self, j: int) -> FreeModuleVector:
        return FreeModuleVector.unit(self.poly_ring, self.free_rank, j)

    def lifted_relations(self) -> list:
        cols = [v for v in self.relations if not v.is_zero()]
        for g in self.ring.gb().generators:
            for j in range(self.free_rank):
                cols.append(self.unit(j).scale(g))
        return cols

    def submodule_gb(self):
        if self._gb is None:
            gb = module_groebner(self.lifted_relations(), DEGREVLEX, ring=self.poly_ring, rank=self.free_rank)
            with self._lock:
                self._gb = gb
        return self._gb

    def contains(self, v: FreeModuleVector) -> bool:
        """Whether v lies in im A (i.e. v is zero in M)."""
        return self.submodule_gb().contains(v)

    def is_zero(self) -> bool:
        return all(self.contains(self.unit(j)) for j in range(self.free_rank))

    def quotient_by(self, xs: Sequence) -> "FPModule":
        """M / (xs) M."""
        cols = list(self.relations)
        for x in xs:
            x = self.ring.element(x)
            for j in range(self.free_rank):
                cols.append(self.unit(j).scale(x))
        return FPModule(self.ring, self.free_rank, cols)

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.to_dict(),
            "free_rank": self.free_rank,
            "relations": [[str(c) for c in v] for v in self.relations],
        }

    def __repr__(self):
        return f"FPModule({self.to_dict()})"


@dataclass(frozen=True)
class DimensionReport:
    dimension: object
    witness_independent_set: tuple = ()
    method: str = "ideal"
    ideal: tuple = ()

    @property
    def is_zero_module(self) -> bool:
        return self.dimension is ZERO_MODULE

    def to_dict(self) -> dict:
        return {
            "dimension": "ZERO_MODULE" if self.is_zero_module else self.dimension,
            "witness_independent_set": list(self.witness_independent_set),
            "method": self.method,
            "ideal": [str(f) for f in self.ideal],
        }


def _max_independent_set(nvars: int, lead_monomials: Sequence) -> tuple:
    supports = {frozenset(i for i, a in enumerate(e) if a) for e in lead_monomials}
    masks = sorted({sum(1 << i for i in s) for s in supports})
    masks = [m for m in masks if not any(o != m and (o & m) == o for o in masks)]
    best = [-1, 0]

    def ok(mask):
        return not any((m & mask) == m for m in masks)

    def rec(i, mask, size):
        if size + (nvars - i) <= best[0]:
            return
        if i == nvars:
            best[0], best[1] = size, mask
            return
        with_i = mask | (1 << i)
        if ok(with_i):
            rec(i + 1, with_i, size + 1)
        rec(i + 1, mask, size)

    rec(0, 0, 0)
    return tuple(i for i in range(nvars) if best[1] >> i & 1)


def dim_of_quotient(poly_ring: PolyRing, gens: Sequence[Polynomial], method: str = "ideal") -> DimensionReport:
    """dim k[vars]/(gens), with a maximal independent set as witness."""
    gens = tuple(g for g in gens if not g.is_zero())
    gb = buchberger(gens, DEGREVLEX, poly_ring)
    if gb.is_unit_ideal():
        return DimensionReport(ZERO_MODULE, (), method, gens)
    idx = _max_independent_set(poly_ring.nvars, gb.leading_monomials())
    return DimensionReport(len(idx), tuple(poly_ring.names[i] for i in idx), method, gens)


def krull_dim_ideal(ring: RingPresentation) -> DimensionReport:
    """Krull dimension of R via leading-term independent sets."""
    return dim_of_quotient(ring.poly_ring, ring.relations)


def _det(matrix: list, rows: tuple, cols: tuple, memo: dict):
    """Laplace expansion along the first row; memoized on (row count, columns)."""
    k = len(cols)
    key = cols
    if key in memo:
        return memo[key]
    if k == 1:
        val = matrix[rows[-1]][cols[0]]
    else:
        r = rows[len(rows) - k]
        ring = matrix[r][cols[0]].ring
        val = ring.zero()
        for t, c in enumerate(cols):
            a = matrix[r][c]
            if a.is_zero():
                continue
            sub = _det(matrix, rows, cols[:t] + cols[t + 1:], memo)
            if sub.is_zero():
                continue
            term = a * sub
            val = val + term if t % 2 == 0 else val - term
    memo[key] = val
    return val


def fitting_ideal_0(M: FPModule) -> list:
    """All maximal (free_rank x free_rank) minors of the presentation matrix."""
    r = M.free_rank
    cols = [v for v in M.relations]
    if len(cols) < r:
        return []
    matrix = [[cols[c][i] for c in range(len(cols))] for i in range(r)]
    memo: dict = {}
    rows = tuple(range(r))
    out = []
    seen = set()
    for subset in itertools.combinations(range(len(cols)), r):
        d = _det(matrix, rows, subset, memo)
        d = M.ring.reduce(d)
        if not d.is_zero() and d not in seen:
            seen.add(d)
            out.append(d)
    return out


def annihilator(M: FPModule) -> list:
    """Generators of Ann_R(M), as polynomials reduced modulo I.

    One syzygy computation: the column (e_1; e_2; ...; e_r) in R^(r*r)
    against a block-diagonal copy of the lifted relations, projected onto
    the first coordinate.
    """
    r = M.free_rank
    pr = M.poly_ring
    big = r * r
    one = pr.one()
    zero = pr.zero()
    u = [zero] * big
    for j in range(r):
        u[j * r + j] = one
    cols = [FreeModuleVector(u, pr)]
    for j in range(r):
        for v in M.lifted_relations():
            comps = [zero] * big
            comps[j * r:(j + 1) * r] = list(v.components)
            cols.append(FreeModuleVector(comps, pr))
    syz = syzygy_basis(cols, DEGREVLEX, ring=pr, rank=big)
    out = []
    seen = set()
    for s in syz:
        f = M.ring.reduce(s[0])
        if not f.is_zero() and f not in seen:
            seen.add(f)
            out.append(f)
    if M.is_zero() and not out:
        out = [pr.one()]
    return buchberger(out, DEGREVLEX, pr).generators if out else []


def in_radical(f: Polynomial, gens: Sequence[Polynomial]) -> bool:
    """Rabinowitsch test: f in rad(gens) iff 1 in (gens, 1 - t*f)."""
    pr = f.ring
    name = "_t"
    while name in pr.names:
        name += "_"
    big = pr.extend([name])
    t = big.gen(name)
    lifted = [g.to_ring(big) for g in gens] + [big.one() - t * f.to_ring(big)]
    return buchberger(lifted, DEGREVLEX, big).is_unit_ideal()


def module_dim(M: FPModule, method: str = "fitting") -> DimensionReport:
    """dim R/Fitt_0(M) (or R/Ann(M)); ZERO_MODULE iff M = 0."""
    if method not in ("fitting", "annihilator"):
        raise InputError(f"unknown method {method!r}; expected fitting or annihilator")
    if M.is_zero():
        return DimensionReport(ZERO_MODULE, (), method, ())
    ideal = fitting_ideal_0(M) if method == "fitting" else annihilator(M)
    rep = dim_of_quotient(M.poly_ring, list(M.ring.relations) + list(ideal), method)
    return DimensionReport(rep.dimension, rep.witness_independent_set, method, tuple(ideal))


@dataclass(frozen=True)
class NZDResult:
    regular: bool
    witness: FreeModuleVector | None = None
    colon_generators: tuple = ()

    def __bool__(self):
        return self.regular


def is_nonzerodivisor(x, M: FPModule) -> NZDResult:
    """Decide injectivity of multiplication by x on M.

    The first r components of the syzygies of [x*e_1..x*e_r | relations]
    generate (im A : x); x is regular iff each of them already lies in im A.
    """
    x = M.ring.element(x)
    r = M.free_rank
    pr = M.poly_ring
    cols = [M.unit(j).scale(x) for j in range(r)] + M.lifted_relations()
    syz = syzygy_basis(cols, DEGREVLEX, ring=pr, rank=r)
    colon = []
    for s in syz:
        v = FreeModuleVector(s.components[:r], pr)
        if v.is_zero():
            continue
        colon.append(v)
        if not M.contains(v):
            return NZDResult(False, M.submodule_gb().reduce(v), tuple(colon))
    return NZDResult(True, None, tuple(colon))


class RegularSequenceFailure(RdimLabError):
    """FAILS_AT(k): the k-th element (1-based) breaks regularity or properness."""

    code = "fails_at"
    exit_status = 1

    def __init__(self, index: int, reason: str, witness=None):
        super().__init__(f"regular sequence fails at position {index}: {reason}", location=f"/elements/{index - 1}")
        self.index = index
        self.reason = reason
        self.witness = witness

    def to_dict(self) -> dict:
        d = super().to_dict()
        d.update({"index": self.index, "reason": self.reason})
        if self.witness is not None:
            d["witness"] = [str(c) for c in self.witness]
        return d


@dataclass(frozen=True)
class RegularSequenceCertificate:
    elements: tuple
    module: FPModule = field(compare=False, repr=False)
    checks: tuple = ()

    def __len__(self):
        return len(self.elements)

    def replay(self) -> bool:
        verify_regular_sequence(self.elements, self.module)
        return True

    def to_dict(self) -> dict:
        return {"elements": [str(e) for e in self.elements], "checks": list(self.checks)}


def _check_step(M: FPModule, prefix: list, x: Polynomial, k: int) -> dict:
    quot = M.quotient_by(prefix)
    res = is_nonzerodivisor(x, quot)
    if not res.regular:
        raise RegularSequenceFailure(k, "zero-divisor on the previous quotient", res.witness)
    nxt = quot.quotient_by([x])
    nonzero_at = next((j for j in range(M.free_rank) if not nxt.contains(nxt.unit(j))), None)
    if nonzero_at is None:
        raise RegularSequenceFailure(k, "quotient module is zero (improper)")
    return {
        "position": k,
        "element": str(x),
        "colon_generators": [[str(c) for c in v] for v in res.colon_generators],
        "nonzero_generator": nonzero_at,
    }


def verify_regular_sequence(xs: Sequence, M: FPModule) -> RegularSequenceCertificate:
    if not xs:
        raise InputError("regular sequence must be nonempty")
    elems = [M.ring.element(x) for x in xs]
    checks = []
    for k, x in enumerate(elems, start=1):
        checks.append(_check_step(M, elems[: k - 1], x, k))
    return RegularSequenceCertificate(tuple(elems), M, tuple(checks))


def trial_budget(default: int = DEFAULT_TRIAL_BUDGET) -> int:
    raw = os.environ.get("RDIMLAB_TRIAL_BUDGET")
    if raw is None or raw == "":
        return default
    try:
        val = int(raw)
    except ValueError:
        raise InputError(f"RDIMLAB_TRIAL_BUDGET must be an integer, got {raw!r}") from None
    if val < 1:
        raise InputError("RDIMLAB_TRIAL_BUDGET must be positive")
    return val


def candidate_elements(poly_ring: PolyRing, max_support: int | None = None):
    """Variables, then primitive integer combinations (coefficients in -2..2),
    with variable +- constant offsets slotted in after the two-term sums."""
    gens = poly_ring.gens()
    n = len(gens)
    yield from gens
    max_support = n if max_support is None else min(max_support, n)
    coeffs = [1, -1, 2, -2]
    for size in range(2, max_support + 1):
        for idx in itertools.combinations(range(n), size):
            for cs in itertools.product(coeffs, repeat=size):
                if cs[0] < 0 or math.gcd(*cs) != 1:
                    continue
                f = poly_ring.zero()
                for i, c in zip(idx, cs):
                    f = f + gens[i].scale(c)
                yield f
        if size == 2:
            for g in gens:
                for c in (1, -1, 2, -2):
                    yield g + c
    if max_support < 2:
        for g in gens:
            for c in (1, -1, 2, -2):
                yield g + c


def find_regular_sequence(M: FPModule, target: int, budget: int | None = None) -> RegularSequenceCertificate:
    """Bounded depth-first search for an M-regular sequence of length ``target``.

    ``budget`` caps the number of candidate regularity checks (defaults to
    RDIMLAB_TRIAL_BUDGET or 200). Raises NotFound when it runs out.
    """
    if target < 1:
        raise InputError("target must be a positive integer")
    if M.is_zero():
        raise InputError("zero module has no regular sequences", location="module")
    budget = trial_budget() if budget is None else budget
    pr = M.poly_ring
    used = [0]
    base_rels = list(M.ring.relations)

    def search(prefix: list, quot: FPModule):
        if len(prefix) == target:
            return prefix
        ideal_gb = buchberger(base_rels + prefix, DEGREVLEX, pr) if (base_rels or prefix) else None
        seen = set()
        for c in candidate_elements(pr):
            red = ideal_gb.reduce(c) if ideal_gb is not None else c
            if red.is_zero() or red in seen:
                continue
            seen.add(red)
            if used[0] >= budget:
                return None
            used[0] += 1
            nxt = quot.quotient_by([c])
            if nxt.is_zero() or not is_nonzerodivisor(c, quot).regular:
                continue
            found = search(prefix + [c], nxt)
            if found is not None:
                return found
            if used[0] >= budget:
                return None
        return None

    found = search([], M)
    if found is None:
        raise NotFound(f"no regular sequence of length {target} within {budget} candidate checks", location="find_regular_sequence")
    return verify_regular_sequence(found, M)


def _koszul_differential(xs, i, r, pr):
    """Columns of d_i: K_i -> K_{i-1} on the lifted free module (R^r)."""
    s = len(xs)
    src = list(itertools.combinations(range(s), i))
    dst = {J: n for n, J in enumerate(itertools.combinations(range(s), i - 1))}
    rank = len(dst) * r
    cols = []
    for J in src:
        for j in range(r):
            comps = [pr.zero()] * rank
            for k, a in enumerate(J):
                rest = J[:k] + J[k + 1:]
                pos = dst[rest] * r + j
                term = xs[a] if k % 2 == 0 else -xs[a]
                comps[pos] = comps[pos] + term
            cols.append(FreeModuleVector(comps, pr))
    return cols, len(src) * r, rank


def _block_relations(rel_cols, blocks, r, pr):
    rank = blocks * r
    out = []
    for b in range(blocks):
        for v in rel_cols:
            comps = [pr.zero()] * rank
            comps[b * r:(b + 1) * r] = list(v.components)
            out.append(FreeModuleVector(comps, pr))
    return out


def koszul_homology_vanishes(xs: Sequence, M: FPModule, i: int) -> bool:
    """Whether H_i(xs; M) = 0, computed on lifts to the polynomial ring."""
    pr = M.poly_ring
    xs = [M.ring.element(x) for x in xs]
    s = len(xs)
    r = M.free_rank
    rels = M.lifted_relations()
    if i == 0:
        return M.quotient_by(xs).is_zero()
    if i > s:
        return True
    d_i, src_rank, dst_rank = _koszul_differential(xs, i, r, pr)
    n_prev = _block_relations(rels, math.comb(s, i - 1), r, pr)
    syz = syzygy_basis(d_i + n_prev, DEGREVLEX, ring=pr, rank=dst_rank)
    cycles = [FreeModuleVector(z.components[:src_rank], pr) for z in syz]
    cycles = [z for z in cycles if not z.is_zero()]
    if not cycles:
        return True
    bounds = _block_relations(rels, math.comb(s, i), r, pr)
    if i < s:
        bounds += _koszul_differential(xs, i + 1, r, pr)[0]
    if not bounds:
        return False
    gb = module_groebner(bounds, DEGREVLEX, ring=pr, rank=src_rank)
    return all(gb.contains(z) for z in cycles)


def koszul_depth(xs: Sequence, M: FPModule) -> int:
    """Depth of M along (xs): s - max{i : H_i(xs; M) != 0}.

    Koszul homology is rigid (once H_i vanishes so do all higher ones), so
    the scan runs upward and stops at the first vanishing index.
    """
    if not xs:
        raise InputError("koszul_depth needs a nonempty list of elements")
    if M.is_zero():
        raise InputError("zero module has no depth", location="module")
    s = len(xs)
    if koszul_homology_vanishes(xs, M, 0):
        raise InputError("(xs)M = M, so the depth along (xs) is infinite", location="elements")
    for i in range(1, s + 1):
        if koszul_homology_vanishes(xs, M, i):
            return s - i + 1
    return 0


# JSON helpers -----------------------------------------------------------

def ring_from_json(obj, characteristic: int = 0) -> RingPresentation:
    if not isinstance(obj, dict):
        raise InputError("ring must be a JSON object", location="ring")
    variables = obj.get("variables", [])
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise InputError("ring.variables must be a list of names", location="ring/variables")
    for v in variables:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", v):
            raise InputError(f"invalid variable name {v!r}", location="ring/variables")
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise InputError("ring.relations must be a list", location="ring/relations")
    return RingPresentation.from_strings(variables, rels, obj.get("characteristic", characteristic))


def module_from_json(obj) -> FPModule:
    if not isinstance(obj, dict):
        raise InputError("module must be a JSON object", location="module")
    if "ring" not in obj:
        raise InputError("module needs a ring", location="module/ring")
    ring = ring_from_json(obj["ring"])
    rank = obj.get("free_rank", 1)
    cols = obj.get("relations", [])
    if not isinstance(cols, list):
        raise InputError("module.relations must be a list of columns", location="module/relations")
    return FPModule.from_strings(ring, rank, cols)
