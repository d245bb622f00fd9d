"""Groebner bases of polynomial ideals, normal forms and elimination."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, RingMismatchError
from . import engine
from .orders import DEGREVLEX, MonomialOrder, elimination
from .ring import Polynomial, PolyRing


def _to_vec(f: Polynomial) -> dict:
    return {(0, e): c for e, c in f.items()}


def _from_vec(ring: PolyRing, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    generators: tuple
    order: MonomialOrder
    reduced: bool = True
    _reducer: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        vecs = [_to_vec(g) for g in self.generators]
        key = engine.label_key(self.order, True)
        object.__setattr__(self, "_reducer", engine.Reducer(vecs, key, self.ring.characteristic))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def leading_monomials(self) -> list:
        return [g.leading(self.order)[0] for g in self.generators]

    def to_strings(self) -> list:
        return [g.to_str(self.order) for g in self.generators]


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` on division by ``basis`` (fully reduced)."""
    if f.ring != basis.ring:
        raise RingMismatchError(f"polynomial ring {f.ring!r} differs from basis ring {basis.ring!r}")
    return _from_vec(f.ring, basis._reducer.reduce(_to_vec(f)))


def _common_ring(gens, ring):
    gens = list(gens)
    if ring is None:
        if not gens:
            raise InputError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if not isinstance(g, Polynomial):
            raise InputError(f"expected a Polynomial, got {type(g).__name__}")
        if g.ring != ring:
            raise RingMismatchError(f"generator {g} lies in {g.ring!r}, expected {ring!r}")
    return gens, ring


def buchberger(gens, order: MonomialOrder = DEGREVLEX, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens, ring = _common_ring(gens, ring)
    vecs = [_to_vec(g) for g in gens]
    res = engine.cached_groebner(vecs, order, pot=True, p=ring.characteristic, polynomial=True)
    return GroebnerBasis(ring, tuple(_from_vec(ring, v) for v in res), order)


def ideal_contains(gens, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> bool:
    gens = list(gens)
    if not gens:
        return f.is_zero()
    return buchberger(gens, order, f.ring).contains(f)


def elimination_ideal(gens, keep, ring: PolyRing | None = None) -> list:
    """Generators of I ∩ k[keep]; ``keep`` holds variable names or indices.

    Returned polynomials live in the original ring.
    """
    gens, ring = _common_ring(gens, ring)
    keep_idx = {ring.index(v) if isinstance(v, str) else int(v) for v in keep}
    if any(i < 0 or i >= ring.nvars for i in keep_idx):
        raise InputError(f"keep set {sorted(keep)} is not a subset of the ring variables")
    drop = [i for i in range(ring.nvars) if i not in keep_idx]
    if not drop:
        return list(buchberger(gens, DEGREVLEX, ring).generators) if gens else []
    if not gens:
        return []
    gb = buchberger(gens, elimination(drop), ring)
    return [g for g in gb.generators if not (g.variables() & set(drop))]


def restrict_ring(f: Polynomial, keep_names) -> Polynomial:
    """View a polynomial that only uses ``keep_names`` in the smaller ring."""
    sub = PolyRing(tuple(keep_names), f.ring.characteristic)
    bad = {f.ring.names[i] for i in f.variables()} - set(sub.names)
    if bad:
        raise InputError(f"polynomial uses variables {sorted(bad)} outside {list(sub.names)}")
    return f.to_ring(sub)
