"""Bounds, boundclasses and regularity audits."""
from .expr import (
    DEFAULT_GUARD, LEN_X, X, BoundSyntaxError, apply_lengths, bound_vars, check_bound,
    compose, eval_bound, is_variation, parse_bound, plus_const, power, render_bound,
    rename_to_x, syntactic_variation_eq, times, variation_by_search,
)
from .classes import (
    DESCRIPTIONS, FAMILIES, LINEAR, NONE, POLY, Boundclass, ClosureResult, Derivation,
    Dominance, candidate_members, closure_contains, describe, dominated,
    parse_boundclass, replay, standard_classes,
)
from .regularity import (
    CONDITIONS, DEFAULT_GRID, FALSIFIED, INCONCLUSIVE, VERIFIED, WITNESSED,
    ConditionStatus, DdsTable, RegularityReport, broken_triple, check_regularity,
    dds_table, dds_triples, resolve_triple,
)
