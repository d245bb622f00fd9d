"""Bound propagation over a database of facts about named entities."""

from .catalog import CATALOG_PRESETS, LIE_GROUPS, MIRRORS, SPHERE_DIMS, TORUS_DIMS, ship_catalog
from .engine import (
    ENTITY_KINDS,
    FACT_SCHEMA,
    INF,
    NONE,
    QUANTITIES,
    RULES,
    BoundInterval,
    DeductionResult,
    Entity,
    Fact,
    FactDatabase,
    TraceEntry,
    compile_rules,
    database_from_json,
    dumps_result,
    explain,
    narrative,
    propagate,
    replay,
)
