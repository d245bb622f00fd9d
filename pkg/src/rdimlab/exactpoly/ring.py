"""Polynomial rings over Q (or a prime field) and their immutable elements."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import InputError, RingMismatchError

Exps = tuple  # tuple[int, ...]


def _coerce(c, p: int):
    if p:
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, p) % p
        return int(c) % p
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    return Fraction(c)


@dataclass(frozen=True)
class PolyRing:
    """k[x_1..x_n]; ``characteristic`` is 0 (rationals) or a prime p < 2**31."""

    names: tuple
    characteristic: int = 0

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        p = self.characteristic
        if p and (p < 2 or p >= 2**31 or any(p % q == 0 for q in range(2, int(p**0.5) + 1))):
            raise InputError(f"characteristic must be 0 or a prime below 2^31, got {p}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}; ring has {list(self.names)}") from None

    def coerce(self, c):
        return _coerce(c, self.characteristic)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.coerce(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.coerce(1)})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise InputError(f"bad exponent vector {exps} for ring {self.names}")
        c = self.coerce(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_dict(self, terms: Mapping) -> "Polynomial":
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise InputError(f"exponent vector {e} has wrong length for {self.names}")
            c = self.coerce(c)
            if c:
                out[e] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    def extend(self, new_names: Sequence[str], *, front: bool = False) -> "PolyRing":
        names = tuple(new_names) + self.names if front else self.names + tuple(new_names)
        return PolyRing(names, self.characteristic)

    def __repr__(self):
        k = "QQ" if not self.characteristic else f"GF({self.characteristic})"
        return f"{k}[{', '.join(self.names)}]"


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_coeff(self):
        return self._terms.get((0,) * self.ring.nvars, self.ring.coerce(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def variables(self) -> set:
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if p:
                s %= p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {e: (-c) % p for e, c in self._terms.items()})
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.ring.characteristic
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if p:
                    s %= p
                out[e] = s
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self._terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exps, coeff=1) -> "Polynomial":
        c = self.ring.coerce(coeff)
        p = self.ring.characteristic
        out = {}
        for e, v in self._terms.items():
            w = v * c
            if p:
                w %= p
            if w:
                out[tuple(a + b for a, b in zip(e, exps))] = w
        return Polynomial(self.ring, out)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError(f"exponent must be a non-negative integer, got {k!r}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def leading(self, order) -> tuple:
        """(exponents, coefficient) of the leading term under ``order``."""
        if not self._terms:
            raise InputError("zero polynomial has no leading term")
        e = max(self._terms, key=order.key)
        return e, self._terms[e]

    def monic(self, order) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading(order)
        if self.ring.characteristic:
            return self.scale(pow(c, -1, self.ring.characteristic))
        return self.scale(1 / c)

    def substitute(self, images: Sequence, target_ring=None):
        """Evaluate at ``images`` (one per variable); images may live in any algebra
        supporting ``+``, ``*`` and ``**`` with a ``one`` provided by ``target_ring``."""
        if len(images) != self.ring.nvars:
            raise InputError("substitution needs one image per variable")
        if target_ring is None:
            target_ring = images[0].ring if images else self.ring
        total = target_ring.zero()
        cache: dict = {}
        for e, c in self._terms.items():
            term = target_ring.const(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = images[i] ** a
                    term = term * cache[key]
            total = total + term
        return total

    def to_ring(self, ring: PolyRing, mapping: Sequence[int] | None = None) -> "Polynomial":
        """Re-embed into ``ring``; ``mapping[i]`` is the target index of variable i
        (defaults to matching by name)."""
        if mapping is None:
            mapping = [ring.index(n) for n in self.ring.names]
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    ne[mapping[i]] += a
            out[tuple(ne)] = ring.coerce(c)
        return Polynomial(ring, out)

    def sorted_terms(self, order=None) -> list:
        from .orders import DEGREVLEX

        order = order or DEGREVLEX
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def to_str(self, order=None) -> str:
        if not self._terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
            neg = (c < 0) if not self.ring.characteristic else False
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r} in {self.ring!r})"


def polys_in_ring(polys: Iterable[Polynomial], ring: PolyRing) -> list:
    out = list(polys)
    for f in out:
        if f.ring != ring:
            raise RingMismatchError(f"polynomial {f} is not in {ring!r}")
    return out
