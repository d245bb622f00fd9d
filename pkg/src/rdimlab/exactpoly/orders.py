"""Monomial orders, represented by sort keys on exponent tuples.

A larger key means a larger monomial. All orders here are total
well-orders compatible with multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError


def _drl(e):
    return (sum(e), tuple(-a for a in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    block: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "elimination"):
            raise InputError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "block", tuple(sorted(set(self.block))))
        if self.kind == "elimination" and not self.block:
            raise InputError("elimination order needs a nonempty block of variables")

    def key(self, e):
        if self.kind == "degrevlex":
            return _drl(e)
        if self.kind == "lex":
            return e
        blk = self.block
        inside = tuple(e[i] for i in blk)
        outside = tuple(a for i, a in enumerate(e) if i not in blk)
        return (_drl(inside), _drl(outside))

    def describe(self) -> str:
        if self.kind == "elimination":
            return f"elimination{list(self.block)}"
        return self.kind


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def elimination(block) -> MonomialOrder:
    """Block order eliminating the variable indices in ``block``."""
    return MonomialOrder("elimination", tuple(block))


def order_from_name(name: str, ring=None) -> MonomialOrder:
    if name in ("lex", "degrevlex"):
        return MonomialOrder(name)
    if name.startswith("elimination"):
        inner = name[len("elimination"):].strip("()[] ")
        parts = [p.strip() for p in inner.split(",") if p.strip()]
        if ring is not None:
            idx = [ring.index(p) if not p.isdigit() else int(p) for p in parts]
        else:
            idx = [int(p) for p in parts]
        return elimination(idx)
    raise InputError(f"unknown monomial order {name!r}")
