"""Quivers, Dynkin types and the A_n derived-category oracle."""

from .an_oracle import (
    UNREACHED,
    IntervalObject,
    all_intervals,
    an_hom_total,
    brute_force_generation_time,
    brute_force_hom_tables,
    derived_hom,
    ext1_interval,
    full_generator,
    generation_time,
    generation_witness,
    hom_interval,
    projective_generator,
)
from .quiver import (
    Quiver,
    RootedSignedTree,
    branch_lengths,
    dynkin_classify,
    is_ade,
    path_quiver,
    quiver_from_json,
    quiver_rdim,
    star_quiver,
    tree_from_json,
    tree_to_quiver,
)

__all__ = [
    "UNREACHED",
    "IntervalObject",
    "Quiver",
    "RootedSignedTree",
    "all_intervals",
    "an_hom_total",
    "branch_lengths",
    "brute_force_generation_time",
    "brute_force_hom_tables",
    "derived_hom",
    "dynkin_classify",
    "ext1_interval",
    "full_generator",
    "generation_time",
    "generation_witness",
    "hom_interval",
    "is_ade",
    "path_quiver",
    "projective_generator",
    "quiver_from_json",
    "quiver_rdim",
    "star_quiver",
    "tree_from_json",
    "tree_to_quiver",
]
