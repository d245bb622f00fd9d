"""Graded-commutative presentations, algebra morphisms, Kunneth products and
the Krull-dimension lower-bound pipeline, together with the shipped presets.

A graded-commutative algebra is modelled as k[even generators] tensor an
exterior algebra on the odd generators, modulo parity-homogeneous relations.
Elements are dicts keyed by ``(even exponents, sorted odd indices)``.
"""

from __future__ import annotations

import itertools
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .commalg import (
    ZERO_MODULE,
    DimensionReport,
    FPModule,
    RingPresentation,
    find_regular_sequence,
    module_dim,
)
from .errors import InputError, NotFound, VanishingCategory
from .exactpoly import (
    DEGREVLEX,
    FreeModuleVector,
    Polynomial,
    PolyRing,
    elimination,
    parse_expression,
    syzygy_basis,
)
from .exactpoly import engine

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    parity: str  # "even" | "odd"

    def to_dict(self) -> dict:
        return {"name": self.name, "degree": self.degree, "parity": self.parity}


def _odd_mul(s: tuple, t: tuple):
    """Product of sorted odd monomials: (sign, merged) or None when zero."""
    if set(s) & set(t):
        return None
    inv = sum(1 for a in s for b in t if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(s + t))


class SuperElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: "GradedPresentation", terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}

    def _lift(self, other):
        if isinstance(other, SuperElement):
            if other.alg is not self.alg and other.alg != self.alg:
                raise InputError("elements of different algebras cannot be combined")
            return other
        if isinstance(other, (int, Fraction)):
            return self.alg.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SuperElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (e1, o1), c1 in self.terms.items():
            for (e2, o2), c2 in other.terms.items():
                hit = _odd_mul(o1, o2)
                if hit is None:
                    continue
                sign, o = hit
                k = (tuple(a + b for a, b in zip(e1, e2)), o)
                out[k] = out.get(k, 0) + sign * c1 * c2
        return SuperElement(self.alg, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("exponent must be a non-negative integer")
        res = self.alg.const(1)
        for _ in range(k):
            res = res * self
        return res

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {self.alg.monomial_degree(k) for k in self.terms}

    def parities(self) -> set:
        return {len(o) % 2 for (_, o) in self.terms}

    def __eq__(self, other):
        return isinstance(other, SuperElement) and self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return self.alg.format(self)

    def __repr__(self):
        return f"SuperElement({self})"


class GradedPresentation:
    """Graded-commutative algebra by generators and relations.

    ``grading_mode`` is ``"Z"`` (integer degrees, parity = degree mod 2) or
    ``"Z/2"`` (degrees are parities).
    """

    def __init__(self, generators: Sequence[Generator], relations: Sequence[str] = (), grading_mode: str = "Z"):
        if grading_mode not in ("Z", "Z/2"):
            raise InputError(f"grading_mode must be 'Z' or 'Z/2', got {grading_mode!r}")
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate generator names {names}")
        for g in gens:
            if not _NAME.fullmatch(g.name):
                raise InputError(f"invalid generator name {g.name!r}")
            if g.parity not in ("even", "odd"):
                raise InputError(f"parity of {g.name} must be even or odd")
            want = "odd" if g.degree % 2 else "even"
            if want != g.parity:
                raise InputError(f"generator {g.name}: parity {g.parity} does not match degree {g.degree}")
        self.generators = gens
        self.grading_mode = grading_mode
        self.even = tuple(g for g in gens if g.parity == "even")
        self.odd = tuple(g for g in gens if g.parity == "odd")
        self.even_ring = PolyRing(tuple(g.name for g in self.even))
        self._index = {g.name: ("even", i) for i, g in enumerate(self.even)}
        self._index.update({g.name: ("odd", i) for i, g in enumerate(self.odd)})
        self.relation_strings = tuple(relations)
        self.relations = tuple(self.parse(r) for r in self.relation_strings)
        for r, s in zip(self.relations, self.relation_strings):
            if len(r.parities()) > 1:
                raise InputError(f"relation {s!r} is not parity-homogeneous")
        self._ideal = None
        self._lock = threading.Lock()

    @classmethod
    def polynomial(cls, names_degrees: Sequence[tuple], relations=(), grading_mode="Z"):
        gens = [Generator(n, d, "odd" if d % 2 else "even") for n, d in names_degrees]
        return cls(gens, relations, grading_mode)

    @classmethod
    def trivial(cls, grading_mode="Z"):
        return cls((), (), grading_mode)

    def __eq__(self, other):
        return (
            isinstance(other, GradedPresentation)
            and self.generators == other.generators
            and self.relation_strings == other.relation_strings
            and self.grading_mode == other.grading_mode
        )

    def __hash__(self):
        return hash((self.generators, self.relation_strings, self.grading_mode))

    @property
    def names(self) -> tuple:
        return tuple(g.name for g in self.generators)

    def const(self, c) -> SuperElement:
        c = Fraction(c)
        return SuperElement(self, {((0,) * len(self.even), ()): c} if c else {})

    def gen(self, name: str) -> SuperElement:
        if name not in self._index:
            raise InputError(f"unknown generator {name!r}")
        kind, i = self._index[name]
        if kind == "even":
            e = [0] * len(self.even)
            e[i] = 1
            return SuperElement(self, {(tuple(e), ()): Fraction(1)})
        return SuperElement(self, {((0,) * len(self.even), (i,)): Fraction(1)})

    def parse(self, text) -> SuperElement:
        variables = {n: self.gen(n) for n in self.names}
        return parse_expression(text, self, variables)

    def monomial_degree(self, key) -> int:
        e, o = key
        d = sum(a * g.degree for a, g in zip(e, self.even)) + sum(self.odd[i].degree for i in o)
        return d % 2 if self.grading_mode == "Z/2" else d

    def generator_degree(self, name) -> int:
        g = self.generators[self.names.index(name)]
        return g.degree % 2 if self.grading_mode == "Z/2" else g.degree

    def format(self, x: SuperElement) -> str:
        if not x.terms:
            return "0"
        parts = []
        for (e, o), c in sorted(x.terms.items(), key=lambda t: (-sum(t[0][0]) - len(t[0][1]), t[0]), reverse=False):
            factors = [self.odd[i].name for i in o]
            factors += [g.name if a == 1 else f"{g.name}^{a}" for g, a in zip(self.even, e) if a]
            mono = "*".join(factors)
            neg = c < 0
            mag = -c if neg else c
            body = (mono if mag == 1 else f"{mag}*{mono}") if mono else str(mag)
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    # exterior basis bookkeeping
    def odd_basis(self) -> list:
        q = len(self.odd)
        return [t for k in range(q + 1) for t in itertools.combinations(range(q), k)]

    def to_vector(self, x: SuperElement, ring: PolyRing | None = None, embed=None) -> FreeModuleVector:
        """Coordinates over k[even] in the exterior basis e_S."""
        ring = ring or self.even_ring
        basis = self.odd_basis()
        pos = {s: i for i, s in enumerate(basis)}
        comps = [dict() for _ in basis]
        for (e, o), c in x.terms.items():
            key = embed(e) if embed else e
            comps[pos[o]][key] = comps[pos[o]].get(key, 0) + c
        return FreeModuleVector([ring.from_dict(d) for d in comps], ring)

    def ideal_vectors(self, ring=None, embed=None) -> list:
        out = []
        for r in self.relations:
            for t in self.odd_basis():
                mono = SuperElement(self, {((0,) * len(self.even), t): Fraction(1)})
                v = mono * r
                if not v.is_zero():
                    out.append(self.to_vector(v, ring, embed))
        return out

    def ideal_gb(self):
        if self._ideal is None:
            from .exactpoly import module_groebner

            vecs = self.ideal_vectors()
            gb = module_groebner(vecs, ring=self.even_ring, rank=len(self.odd_basis())) if vecs else None
            with self._lock:
                self._ideal = (gb,)
        return self._ideal[0]

    def is_zero(self, x: SuperElement) -> bool:
        """Whether x vanishes in the presented algebra."""
        if x.is_zero():
            return True
        gb = self.ideal_gb()
        return gb is not None and gb.contains(self.to_vector(x))

    def to_dict(self) -> dict:
        return {
            "generators": [g.to_dict() for g in self.generators],
            "relations": list(self.relation_strings),
            "grading_mode": self.grading_mode,
        }

    def __repr__(self):
        return f"GradedPresentation({self.to_dict()})"


def presentation_from_json(obj) -> GradedPresentation:
    if not isinstance(obj, dict):
        raise InputError("algebra must be a JSON object")
    mode = obj.get("grading_mode", "Z")
    gens = []
    for k, g in enumerate(obj.get("generators", [])):
        if not isinstance(g, dict) or "name" not in g:
            raise InputError("generator entries need a name", location=f"generators/{k}")
        deg = g.get("degree", 0)
        if not isinstance(deg, int):
            raise InputError("generator degree must be an integer", location=f"generators/{k}")
        parity = g.get("parity", "odd" if deg % 2 else "even")
        gens.append(Generator(g["name"], deg, parity))
    return GradedPresentation(gens, obj.get("relations", []), mode)


class AlgebraMorphism:
    """Degree-preserving algebra map; relations are checked to map to zero."""

    def __init__(self, source: GradedPresentation, target: GradedPresentation, images: dict):
        if source.grading_mode != target.grading_mode:
            raise InputError("source and target grading modes differ")
        missing = [n for n in source.names if n not in images]
        if missing:
            raise InputError(f"no image given for generators {missing}")
        extra = [n for n in images if n not in source.names]
        if extra:
            raise InputError(f"images given for unknown generators {extra}")
        self.source = source
        self.target = target
        self.images = {}
        for n in source.names:
            img = images[n]
            img = target.parse(img) if isinstance(img, (str, int)) else img
            if not isinstance(img, SuperElement) or img.alg != target:
                raise InputError(f"image of {n} is not an element of the target")
            want = source.generator_degree(n)
            degs = img.degrees()
            if degs and degs != {want}:
                raise InputError(f"image of {n} has degree(s) {sorted(degs)}, expected {want}", location=f"images/{n}")
            self.images[n] = img
        for s in source.relation_strings:
            val = parse_expression(s, target, self.images)
            if not target.is_zero(val):
                raise InputError(f"relation {s!r} does not map to zero (image {val})", location="relations")

    def __call__(self, expr) -> SuperElement:
        return parse_expression(expr, self.target, self.images)

    def to_dict(self) -> dict:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "images": {n: str(v) for n, v in self.images.items()},
        }


def _rename_map(name_lists: Sequence[Sequence[str]]) -> list:
    """Suffix names that occur in more than one factor with the factor index."""
    counts: dict = {}
    for names in name_lists:
        for n in set(names):
            counts[n] = counts.get(n, 0) + 1
    taken = {n for names in name_lists for n in names if counts[n] == 1}
    out = []
    for k, names in enumerate(name_lists, start=1):
        m = {}
        for n in names:
            if counts[n] == 1:
                m[n] = n
                continue
            new = f"{n}{k}"
            while new in taken:
                new += "_"
            taken.add(new)
            m[n] = new
        out.append(m)
    return out


def _rename_expr(text: str, mapping: dict) -> str:
    return _NAME.sub(lambda m: mapping.get(m.group(0), m.group(0)), text)


def kunneth_tensor(A: GradedPresentation, B: GradedPresentation) -> GradedPresentation:
    """Tensor product; clashing generator names get factor-index suffixes."""
    if A.grading_mode != B.grading_mode:
        raise InputError("cannot tensor presentations with different grading modes")
    ma, mb = _rename_map([A.names, B.names])
    gens = [Generator(ma[g.name], g.degree, g.parity) for g in A.generators]
    gens += [Generator(mb[g.name], g.degree, g.parity) for g in B.generators]
    rels = [_rename_expr(r, ma) for r in A.relation_strings] + [_rename_expr(r, mb) for r in B.relation_strings]
    return GradedPresentation(gens, rels, A.grading_mode)


# subring / module problems ----------------------------------------------

@dataclass
class SubringModuleProblem:
    subring: RingPresentation
    module: FPModule | None = None
    morphism: AlgebraMorphism | None = None
    generator_labels: tuple = ()
    name: str = "problem"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.module is None and self.morphism is None:
            raise InputError("a problem needs a module or a morphism to push forward")
        if self.morphism is not None:
            for g in self.morphism.source.generators:
                if g.parity != "even":
                    raise InputError(f"subring generator {g.name} must have even degree")
        if self.module is not None and self.module.ring != self.subring:
            raise InputError("module is not defined over the declared subring")

    def to_dict(self) -> dict:
        d = {"name": self.name, "subring": self.subring.to_dict()}
        if self.module is not None:
            d["module"] = self.module.to_dict()
        if self.morphism is not None:
            d["morphism"] = self.morphism.to_dict()
        if self.generator_labels:
            d["generator_labels"] = list(self.generator_labels)
        if self.meta:
            d["meta"] = dict(self.meta)
        return d


def subring_of(source: GradedPresentation) -> RingPresentation:
    if source.odd:
        raise InputError("the subring must be generated in even degrees")
    ring = source.even_ring
    return RingPresentation(ring, [ring.parse(r) for r in source.relation_strings])


def pushforward(morphism: AlgebraMorphism) -> tuple:
    """Present the target as a module over the (even, commutative) source.

    Returns ``(FPModule, generator_labels)``. Raises InputError when the
    target is not finitely generated over the source.
    """
    src, tgt = morphism.source, morphism.target
    R = subring_of(src)
    xs = list(src.even_ring.names)
    ys = list(tgt.even_ring.names)
    ren = _rename_map([ys, xs])
    ynames = [ren[0][y] for y in ys]
    xnames = [ren[1][x] for x in xs]
    S = PolyRing(tuple(ynames + xnames))
    ny = len(ys)
    nx = len(xs)
    basis = tgt.odd_basis()
    rank = len(basis)
    pad = (0,) * nx

    def embed(e):
        return tuple(e) + pad

    gens = tgt.ideal_vectors(S, embed)
    for i in range(nx):
        xe = [0] * (ny + nx)
        xe[ny + i] = 1
        xpoly = S.monomial(xe)
        img = morphism.images[xs[i]]
        for t in basis:
            et = SuperElement(tgt, {((0,) * ny, t): Fraction(1)})
            v = tgt.to_vector(img * et, S, embed)
            unit = FreeModuleVector.unit(S, rank, basis.index(t)).scale(xpoly)
            gens.append(unit - v)
    order = elimination(range(ny)) if ny else DEGREVLEX
    vecs = [g.to_vec() for g in gens if not g.is_zero()]
    res = engine.cached_groebner(vecs, order, pot=False) if vecs else []
    key = engine.label_key(order, False)
    xfree = []
    for g in res:
        (pos, e), _ = engine.leading(g, key)
        if not any(e[ny:]):
            xfree.append((pos, e[:ny]))

    def divisible(pos, e):
        return any(p == pos and all(a <= b for a, b in zip(le, e)) for p, le in xfree)

    std = []
    frontier = [(p, (0,) * ny) for p in range(rank)]
    seen = set(frontier)
    limit = 4096
    while frontier:
        pos, e = frontier.pop(0)
        if divisible(pos, e):
            continue
        std.append((pos, e))
        if len(std) > limit:
            raise InputError("target is not finitely generated over the subring", location="morphism")
        for j in range(ny):
            ne = list(e)
            ne[j] += 1
            lab = (pos, tuple(ne))
            if lab not in seen:
                seen.add(lab)
                frontier.append(lab)
    std.sort(key=lambda lab: (sum(lab[1]) + len(basis[lab[0]]), lab[0], tuple(-a for a in lab[1])))

    labels = []
    cols = []
    for pos, e in std:
        mono = SuperElement(tgt, {(e, basis[pos]): Fraction(1)})
        labels.append(str(mono))
        cols.append(FreeModuleVector.unit(S, rank, pos).scale(S.monomial(tuple(e) + pad)))
    m = len(cols)
    syz = syzygy_basis(cols + gens, ring=S, rank=rank)
    kernel = [FreeModuleVector(z.components[:m], S) for z in syz]
    kernel = [k for k in kernel if not k.is_zero()]
    rels = []
    if kernel and ny:
        kvecs = [k.to_vec() for k in kernel]
        kres = engine.cached_groebner(kvecs, elimination(range(ny)), pot=False)
        for g in kres:
            if all(not any(e[:ny]) for (_, e) in g):
                v = FreeModuleVector.from_vec(S, m, g)
                rels.append(FreeModuleVector([_drop(c, ny, R.poly_ring) for c in v], R.poly_ring))
    elif kernel:
        rels = [FreeModuleVector([_drop(c, 0, R.poly_ring) for c in k], R.poly_ring) for k in kernel]
    return FPModule(R, m, rels), tuple(labels)


def _drop(f: Polynomial, ny: int, ring: PolyRing) -> Polynomial:
    return ring.from_dict({e[ny:]: c for e, c in f.items()})


def flatten_to_module(problem: SubringModuleProblem) -> FPModule:
    """The ungraded FPModule over the subring (pushing forward if needed)."""
    if problem.module is None:
        mod, labels = pushforward(problem.morphism)
        problem.module = mod
        problem.generator_labels = labels
    return problem.module


@dataclass(frozen=True)
class LowerBoundCertificate:
    lower_bound: int
    dimension: DimensionReport
    regular_sequence: object = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "dimension_report": self.dimension.to_dict(),
            "regular_sequence": self.regular_sequence.to_dict() if self.regular_sequence is not None else None,
            "note": self.note,
        }


def lower_bound_from_generator(problem: SubringModuleProblem, *, method: str = "fitting", search: bool = True, budget: int | None = None) -> LowerBoundCertificate:
    """dim_R of the endomorphism module: a certified lower bound for rdim."""
    M = flatten_to_module(problem)
    rep = module_dim(M, method)
    if rep.dimension is ZERO_MODULE:
        raise VanishingCategory("vanishing category: the endomorphism module is zero", location=problem.name)
    seq = None
    note = ""
    if search and rep.dimension > 0:
        try:
            seq = find_regular_sequence(M, rep.dimension, budget)
        except NotFound as exc:
            note = f"no regular sequence found ({exc.message}); the bound rests on the dimension report"
    return LowerBoundCertificate(rep.dimension, rep, seq, note)


# products ---------------------------------------------------------------

def tensor_problems(problems: Sequence[SubringModuleProblem], name: str | None = None) -> SubringModuleProblem:
    """Kunneth product: tensor of subrings, modules presented as coker(A x 1, 1 x A')."""
    problems = list(problems)
    if not problems:
        raise InputError("product needs at least one factor")
    mods = [flatten_to_module(p) for p in problems]
    maps = _rename_map([p.subring.variables for p in problems])
    names = [maps[k][v] for k, p in enumerate(problems) for v in p.subring.variables]
    big = PolyRing(tuple(names))

    def lift(f: Polynomial, k: int) -> Polynomial:
        return f.to_ring(big, [big.index(maps[k][v]) for v in f.ring.names])

    rels = [lift(f, k) for k, p in enumerate(problems) for f in p.subring.relations]
    ring = RingPresentation(big, rels)
    rank = 1
    cols: list = []
    labels = [""]
    for k, (p, M) in enumerate(zip(problems, mods)):
        r2 = M.free_rank
        new_cols = []
        for c in cols:
            for j in range(r2):
                comps = [big.zero()] * (rank * r2)
                for i in range(rank):
                    comps[i * r2 + j] = c[i]
                new_cols.append(FreeModuleVector(comps, big))
        for a in M.relations:
            for i in range(rank):
                comps = [big.zero()] * (rank * r2)
                for j in range(r2):
                    comps[i * r2 + j] = lift(a[j], k)
                new_cols.append(FreeModuleVector(comps, big))
        plabels = list(p.generator_labels) or [f"e{j}" for j in range(r2)]
        plabels = [_rename_expr(lbl, maps[k]) for lbl in plabels]
        labels = [_join_label(a, b) for a in labels for b in plabels]
        cols = new_cols
        rank *= r2
    module = FPModule(ring, rank, cols)
    name = name or "product(" + ", ".join(p.name for p in problems) + ")"
    return SubringModuleProblem(ring, module, None, tuple(labels), name, {"factors": [p.name for p in problems]})


def _join_label(a: str, b: str) -> str:
    if a in ("", "1"):
        return b
    if b == "1":
        return a
    return f"{a}*{b}"


# presets ----------------------------------------------------------------

LIE_GROUP_SPHERES = {
    "G2": (3, 11),
    "F4": (3, 11, 15, 23),
    "E6": (3, 9, 11, 15, 17, 23),
    "E7": (3, 11, 15, 19, 23, 27, 35),
    "E8": (3, 15, 23, 27, 35, 39, 47, 59),
}


def lie_group_spheres(family: str, n: int | None = None) -> tuple:
    """Odd sphere dimensions of the rational homotopy type (one per rank)."""
    fam = family.replace(" ", "")
    if fam in LIE_GROUP_SPHERES:
        return LIE_GROUP_SPHERES[fam]
    if not isinstance(n, int):
        raise InputError(f"lie_group {family} needs an integer parameter n")
    if fam == "Sp":
        if n < 1:
            raise InputError("Sp(n) needs n >= 1")
        return tuple(4 * i - 1 for i in range(1, n + 1))
    if fam == "SU":
        if n < 3:
            raise InputError("SU(n) needs n >= 3")
        return tuple(2 * i - 1 for i in range(2, n + 1))
    if fam == "Spin":
        if n < 7:
            raise InputError("Spin(n) needs n >= 7")
        m = n // 2
        if n % 2:
            return tuple(4 * i - 1 for i in range(1, m + 1))
        return tuple(sorted([4 * i - 1 for i in range(1, m)] + [2 * m - 1]))
    raise InputError(f"unknown Lie group family {family!r}")


def lie_group_rank(family: str, n: int | None = None) -> int:
    return len(lie_group_spheres(family, n))


def _odd_sphere(n: int) -> SubringModuleProblem:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise InputError(f"odd_sphere needs an odd n >= 3, got {n!r}")
    src = GradedPresentation.polynomial([("x", n - 1)])
    tgt = GradedPresentation.polynomial([("v", n - 1)])
    mor = AlgebraMorphism(src, tgt, {"x": "v"})
    return SubringModuleProblem(subring_of(src), None, mor, (), f"odd_sphere({n})")


def _even_sphere(n: int) -> SubringModuleProblem:
    if not isinstance(n, int) or n < 2 or n % 2:
        raise InputError(f"even_sphere needs an even n >= 2, got {n!r}")
    src = GradedPresentation.polynomial([("x", 2 * n - 2)])
    tgt = GradedPresentation.polynomial([("v", n - 1), ("w", 2 * n - 2)])
    mor = AlgebraMorphism(src, tgt, {"x": "w"})
    return SubringModuleProblem(subring_of(src), None, mor, (), f"even_sphere({n})")


def _cp(n: int) -> SubringModuleProblem:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"cp needs n >= 1, got {n!r}")
    src = GradedPresentation.polynomial([("y", 2 * n)])
    tgt = GradedPresentation.polynomial([("e", 1), ("v", 2 * n)])
    mor = AlgebraMorphism(src, tgt, {"y": "v"})
    return SubringModuleProblem(subring_of(src), None, mor, (), f"cp({n})")


def _torus(n: int) -> SubringModuleProblem:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"torus needs n >= 1, got {n!r}")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ts = [f"t{i}" for i in range(1, n + 1)]
    ring = RingPresentation.from_strings(xs + ts, [f"x{i}*t{i} - 1" for i in range(1, n + 1)])
    return SubringModuleProblem(ring, FPModule.free(ring), None, ("1",), f"torus({n})")


def _sphere(n: int) -> SubringModuleProblem:
    return _odd_sphere(n) if n % 2 else _even_sphere(n)


def preset(name: str, params: dict | None = None) -> SubringModuleProblem:
    """Build a shipped (R, M) problem by name."""
    params = dict(params or {})
    if name == "odd_sphere":
        return _odd_sphere(params.get("n"))
    if name == "even_sphere":
        return _even_sphere(params.get("n"))
    if name == "sphere":
        n = params.get("n")
        if not isinstance(n, int) or n < 2:
            raise InputError("sphere needs n >= 2")
        return _sphere(n)
    if name == "cp":
        return _cp(params.get("n"))
    if name == "torus":
        return _torus(params.get("n"))
    if name == "lie_group":
        fam = params.get("family")
        if not isinstance(fam, str):
            raise InputError("lie_group needs a family parameter")
        dims = lie_group_spheres(fam, params.get("n"))
        label = fam if fam in LIE_GROUP_SPHERES else f"{fam}({params.get('n')})"
        prob = tensor_problems([_odd_sphere(d) for d in dims], name=f"lie_group({label})")
        prob.meta["rank"] = len(dims)
        prob.meta["sphere_dimensions"] = list(dims)
        return prob
    if name == "product":
        factors = params.get("factors")
        if not isinstance(factors, list) or not factors:
            raise InputError("product needs a nonempty list of factors")
        probs = []
        for k, f in enumerate(factors):
            if isinstance(f, SubringModuleProblem):
                probs.append(f)
            elif isinstance(f, dict) and "preset" in f:
                probs.append(preset(f["preset"], f.get("params", {})))
            else:
                raise InputError("product factors must be {preset, params} objects", location=f"params/factors/{k}")
        return tensor_problems(probs)
    raise InputError(f"unknown preset {name!r}")


def problem_from_json(obj) -> SubringModuleProblem:
    """Problem files: a preset reference, a module with an action, or a morphism."""
    from .commalg import ring_from_json

    if not isinstance(obj, dict):
        raise InputError("problem must be a JSON object")
    if "preset" in obj:
        return preset(obj["preset"], obj.get("params", {}))
    if "subring" not in obj:
        raise InputError("problem needs a subring", location="subring")
    sub = obj["subring"]
    if "target" in obj:
        src = presentation_from_json(sub if "generators" in sub else {
            "generators": [{"name": v, "degree": 0} for v in sub.get("variables", [])],
            "relations": sub.get("relations", []),
        })
        tgt = presentation_from_json(obj["target"])
        mor = AlgebraMorphism(src, tgt, obj.get("images", {}))
        return SubringModuleProblem(subring_of(src), None, mor, (), obj.get("name", "problem"))
    ring = ring_from_json(sub)
    mod = obj.get("module")
    if not isinstance(mod, dict):
        raise InputError("problem needs a module object", location="module")
    labels = mod.get("generators")
    rank = mod.get("free_rank", len(labels) if labels else 1)
    cols = []
    for k, col in enumerate(mod.get("relations", [])):
        if len(col) != rank:
            raise InputError(f"relation column has length {len(col)}, expected {rank}", location=f"module/relations/{k}")
        cols.append(FreeModuleVector([ring.element(c) for c in col], ring.poly_ring))
    for var, matrix in (mod.get("action") or {}).items():
        if var not in ring.variables:
            raise InputError(f"action given for {var!r}, which is not a subring variable", location=f"module/action/{var}")
        if len(matrix) != rank or any(len(row) != rank for row in matrix):
            raise InputError(f"action matrix of {var} must be {rank}x{rank}", location=f"module/action/{var}")
        x = ring.poly_ring.gen(var)
        for j in range(rank):
            comps = []
            for i in range(rank):
                try:
                    a = ring.element(matrix[i][j])
                except InputError as exc:
                    raise InputError(f"action entry {matrix[i][j]!r} is not an element of the subring: {exc.message}", location=f"module/action/{var}/{i}/{j}") from None
                comps.append((x if i == j else ring.poly_ring.zero()) - a)
            cols.append(FreeModuleVector(comps, ring.poly_ring))
    module = FPModule(ring, rank, cols)
    return SubringModuleProblem(ring, module, None, tuple(labels or ()), obj.get("name", "problem"))
