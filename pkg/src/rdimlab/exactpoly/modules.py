"""Submodules of free modules: vectors, module Groebner bases, syzygies."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import InputError, RingMismatchError
from . import engine
from .orders import DEGREVLEX, MonomialOrder
from .ring import Polynomial, PolyRing


class FreeModuleVector:
    """Fixed-length tuple of polynomials over a common ring."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Polynomial], ring: PolyRing | None = None):
        comps = tuple(components)
        if ring is None:
            if not comps:
                raise InputError("rank-zero vector needs an explicit ring")
            ring = comps[0].ring
        for c in comps:
            if c.ring != ring:
                raise RingMismatchError(f"component {c} is not in {ring!r}")
        self.ring = ring
        self.components = comps

    @classmethod
    def zero(cls, ring, rank):
        return cls([ring.zero()] * rank, ring)

    @classmethod
    def unit(cls, ring, rank, i):
        return cls([ring.one() if j == i else ring.zero() for j in range(rank)], ring)

    @property
    def rank(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other):
        if self.ring != other.ring or self.rank != other.rank:
            raise RingMismatchError("vectors differ in ring or rank")

    def __add__(self, other):
        self._check(other)
        return FreeModuleVector([a + b for a, b in zip(self, other)], self.ring)

    def __sub__(self, other):
        self._check(other)
        return FreeModuleVector([a - b for a, b in zip(self, other)], self.ring)

    def __neg__(self):
        return FreeModuleVector([-a for a in self], self.ring)

    def scale(self, f) -> "FreeModuleVector":
        if not isinstance(f, Polynomial):
            f = self.ring.const(f)
        return FreeModuleVector([f * a for a in self], self.ring)

    def dot(self, other) -> Polynomial:
        self._check(other)
        total = self.ring.zero()
        for a, b in zip(self, other):
            total = total + a * b
        return total

    def __eq__(self, other):
        return isinstance(other, FreeModuleVector) and self.ring == other.ring and self.components == other.components

    def __hash__(self):
        return hash((self.ring, self.components))

    def to_vec(self, offset: int = 0) -> dict:
        out = {}
        for i, c in enumerate(self.components):
            for e, v in c.items():
                out[(i + offset, e)] = v
        return out

    @classmethod
    def from_vec(cls, ring, rank, vec: dict, offset: int = 0):
        comps = [dict() for _ in range(rank)]
        for (pos, e), c in vec.items():
            comps[pos - offset][e] = c
        return cls([Polynomial(ring, d) for d in comps], ring)

    def to_strings(self, order=None) -> list:
        return [c.to_str(order) for c in self.components]

    def __repr__(self):
        return f"FreeModuleVector({self.to_strings()})"


def _check_vectors(vectors, ring=None, rank=None):
    vectors = list(vectors)
    if vectors:
        ring = ring or vectors[0].ring
        rank = vectors[0].rank if rank is None else rank
    if ring is None or rank is None:
        raise InputError("need at least one vector or an explicit ring and rank")
    for v in vectors:
        if v.ring != ring or v.rank != rank:
            raise RingMismatchError("vectors must share ring and rank")
    return vectors, ring, rank


@dataclass(frozen=True)
class ModuleGroebnerBasis:
    ring: PolyRing
    rank: int
    generators: tuple
    order: MonomialOrder
    pot: bool = True
    _reducer: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        key = engine.label_key(self.order, self.pot)
        vecs = [g.to_vec() for g in self.generators]
        object.__setattr__(self, "_reducer", engine.Reducer(vecs, key, self.ring.characteristic))

    def reduce(self, v: FreeModuleVector) -> FreeModuleVector:
        if v.ring != self.ring or v.rank != self.rank:
            raise RingMismatchError("vector does not match the module basis")
        return FreeModuleVector.from_vec(self.ring, self.rank, self._reducer.reduce(v.to_vec()))

    def contains(self, v: FreeModuleVector) -> bool:
        return self.reduce(v).is_zero()

    def leading_labels(self) -> list:
        key = engine.label_key(self.order, self.pot)
        return [engine.leading(g.to_vec(), key)[0] for g in self.generators]


def module_groebner(vectors, order: MonomialOrder = DEGREVLEX, *, ring=None, rank=None, pot: bool = True) -> ModuleGroebnerBasis:
    vectors, ring, rank = _check_vectors(vectors, ring, rank)
    vecs = [v.to_vec() for v in vectors]
    res = engine.cached_groebner(vecs, order, pot=pot, p=ring.characteristic)
    gens = tuple(FreeModuleVector.from_vec(ring, rank, g) for g in res)
    return ModuleGroebnerBasis(ring, rank, gens, order, pot)


def module_normal_form(v: FreeModuleVector, basis: ModuleGroebnerBasis) -> FreeModuleVector:
    return basis.reduce(v)


def syzygy_basis(vectors, order: MonomialOrder = DEGREVLEX, *, ring=None, rank=None) -> list:
    """Generators of the kernel of R^m -> R^r sending e_i to ``vectors[i]``.

    Uses the graph trick: a POT Groebner basis of the columns (v_i, e_i) in
    R^(r+m); elements with vanishing first r components project to syzygies.
    """
    vectors, ring, rank = _check_vectors(vectors, ring, rank)
    m = len(vectors)
    if m == 0:
        return []
    vecs = []
    for i, v in enumerate(vectors):
        d = v.to_vec()
        d[(rank + i, (0,) * ring.nvars)] = ring.coerce(1)
        vecs.append(d)
    res = engine.cached_groebner(vecs, order, pot=True, p=ring.characteristic)
    out = []
    for g in res:
        if all(pos >= rank for pos, _ in g):
            out.append(FreeModuleVector.from_vec(ring, m, g, offset=rank))
    return out


def apply_columns(vectors, coeffs: FreeModuleVector) -> FreeModuleVector:
    """Sum of coeffs[i] * vectors[i]."""
    vectors = list(vectors)
    if len(vectors) != coeffs.rank:
        raise InputError("coefficient vector length must match the number of columns")
    acc = None
    for v, c in zip(vectors, coeffs):
        t = v.scale(c)
        acc = t if acc is None else acc + t
    return acc
