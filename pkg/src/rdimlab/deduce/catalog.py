"""The shipped catalog of worked entities.

The ``krull_lower`` values are the outputs of the lower-bound pipeline on
the corresponding presets; ``CATALOG_PRESETS`` records which preset each
one comes from so the tests can recompute them.
"""

from __future__ import annotations

from .engine import FactDatabase

SPHERE_DIMS = (2, 3, 4, 5)
TORUS_DIMS = (1, 2, 3, 4)

# (entity id, family, n, rank, real dimension of G)
LIE_GROUPS = (
    ("T*Sp(2)", "Sp", 2, 2, 10),
    ("T*Sp(3)", "Sp", 3, 3, 21),
    ("T*SU(3)", "SU", 3, 2, 8),
    ("T*SU(4)", "SU", 4, 3, 15),
    ("T*Spin(7)", "Spin", 7, 3, 21),
    ("T*Spin(8)", "Spin", 8, 4, 28),
    ("T*G2", "G2", None, 2, 14),
    ("T*F4", "F4", None, 4, 52),
    ("T*E6", "E6", None, 6, 78),
    ("T*E7", "E7", None, 7, 133),
    ("T*E8", "E8", None, 8, 248),
)

# (variety id, mirror id, complex dimension)
MIRRORS = (
    ("{x1*x2=0}", "pants_1", 1),
    ("{x1*x2*x3=0}", "pants_2", 2),
    ("{x1*x2*x3*x4=0}", "pants_3", 3),
    ("{x1*x2*x3*x4*x5=0}", "pants_4", 4),
    ("Z_w(n=3)", "milnor_fiber(n=3)", 2),
    ("Z_w(n=4)", "milnor_fiber(n=4)", 3),
    ("Y_pqr", "(T_pqr, V)", 2),
    ("Y_pqr - D", "T_pqr", 2),
    ("toric_threefold", "(T*T3, F_T)", 3),
    ("toric_boundary_divisor(dim 2)", "hori_vafa_fiber(dim 2)", 2),
)

CATALOG_PRESETS: dict = {
    **{f"T*S{n}": ("sphere", {"n": n}) for n in SPHERE_DIMS},
    **{f"T*T{n}": ("torus", {"n": n}) for n in TORUS_DIMS},
    **{x: ("lie_group", {"family": fam} if n is None else {"family": fam, "n": n}) for x, fam, n, _, _ in LIE_GROUPS},
}


def _cotangent(db: FactDatabase, x: str, *, krull: int, dim: int, lef: int | None = None) -> None:
    db.add_entity({"id": x, "kind": "liouville"})
    db.add_fact({"kind": "nonzero_category", "subject": x})
    db.add_fact({"kind": "generalized_cocore", "subject": x, "note": "zero section skeleton"})
    db.add_fact({"kind": "proper_module", "subject": x, "note": "closed orientable exact zero section"})
    db.add_fact({"kind": "krull_lower", "subject": x, "value": krull})
    db.add_fact({"kind": "polarized_weinstein_dim", "subject": x, "value": dim})
    if lef is not None:
        db.add_fact({"kind": "lef_crit_count", "subject": x, "value": lef, "weinstein_fibers": True})


def ship_catalog() -> FactDatabase:
    db = FactDatabase()
    for n in SPHERE_DIMS:
        x = f"T*S{n}"
        _cotangent(db, x, krull=1, dim=n, lef=2)
    for n in TORUS_DIMS:
        x = f"T*T{n}"
        if x not in db.entities:
            _cotangent(db, x, krull=n, dim=n)
    for x, fam, n, rank, dim in LIE_GROUPS:
        _cotangent(db, x, krull=rank, dim=dim)
    ex = "T*S3_exotic"
    db.add_entity({"id": ex, "kind": "liouville", "label": "formally isotopic to T*S3, contains a regular Lagrangian 3-torus"})
    db.add_fact({"kind": "nonzero_category", "subject": ex})
    db.add_fact({"kind": "embedding", "inner": "T*T3", "outer": ex, "note": "Weinstein cobordism complement"})
    db.add_fact({"kind": "polarized_weinstein_dim", "subject": ex, "value": 3})
    db.add_entity({"id": "flexible", "kind": "liouville", "label": "flexible Weinstein manifold"})
    db.add_fact({"kind": "zero_category", "subject": "flexible"})
    for y, p, d in MIRRORS:
        db.add_entity({"id": y, "kind": "variety"})
        db.add_entity({"id": p, "kind": "pair"})
        db.add_fact({"kind": "polarized_weinstein_dim", "subject": p, "value": d})
        db.add_fact({"kind": "mirror_equivalence", "variety": y, "pair": p, "variety_dim": d})
    return db
