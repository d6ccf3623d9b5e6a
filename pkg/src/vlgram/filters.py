"""Type filters: frequency threshold, harmony criteria, or both.

The harmony filter excludes an n-gram type when any of four criteria
fires: (1) some chord carries a single pitch class; (2) no chord carries
at least three pitch classes; (3) the bass pitch class never changes
across the whole type; (4) some adjacent pair keeps the same bass pitch
class while sharing interval classes above it. The first two keep only
types touching tertian sonorities, the latter two demand genuine pitch
change between adjacent members.

Filters act on aggregated types, never on individual tokens. The harmony
criteria read nothing but the type key, so the predicate is cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ranking import TypeTable
from .vlt import PatternKey

FILTER_KINDS = ("none", "frequency", "harmony", "both")
DEFAULT_MIN_COUNT = 10.0
SIMILARITY_MODES = ("intersect", "identical")


@dataclass(frozen=True)
class FilterSpec:
    kind: str = "none"
    min_count: float = DEFAULT_MIN_COUNT
    similarity: str = "intersect"

    def __post_init__(self):
        if self.kind not in FILTER_KINDS:
            raise ValueError(f"unknown filter kind {self.kind!r}")
        if self.min_count < 0:
            raise ValueError("frequency threshold must be non-negative")
        if self.similarity not in SIMILARITY_MODES:
            raise ValueError(f"unknown similarity mode {self.similarity!r}")


@lru_cache(maxsize=262144)
def harmony_pass(key: PatternKey, similarity: str = "intersect") -> bool:
    """True when the type survives all four harmony criteria."""
    sizes = [len(intervals) for intervals, _top, _motion in key]
    if any(size == 0 for size in sizes):
        return False
    if all(size < 2 for size in sizes):
        return False
    motions = [motion for _ivs, _top, motion in key[1:]]
    if all(m == 0 for m in motions):
        return False
    for (prev_ivs, _pt, _pm), (cur_ivs, _ct, motion) in zip(key, key[1:]):
        if motion != 0:
            continue
        if similarity == "identical":
            if prev_ivs == cur_ivs:
                return False
        elif set(prev_ivs) & set(cur_ivs):
            return False
    return True


def filter_frequency(table: TypeTable, threshold: float = DEFAULT_MIN_COUNT) -> TypeTable:
    """Keep types whose weighted count meets the threshold (inclusive)."""
    if threshold < 0:
        raise ValueError("frequency threshold must be non-negative")
    return table.restricted(k for k, count in table.joint.items() if count >= threshold)


def filter_harmony(table: TypeTable, similarity: str = "intersect") -> TypeTable:
    return table.restricted(k for k in table.joint if harmony_pass(k, similarity))


def filter_both(table: TypeTable, threshold: float = DEFAULT_MIN_COUNT,
                similarity: str = "intersect") -> TypeTable:
    """Both filters at once: the intersection of the two keep-sets."""
    return table.restricted(
        k for k, count in table.joint.items()
        if count >= threshold and harmony_pass(k, similarity))


def apply_filter(table: TypeTable, spec: FilterSpec) -> TypeTable:
    if spec.kind == "none":
        return table
    if spec.kind == "frequency":
        return filter_frequency(table, spec.min_count)
    if spec.kind == "harmony":
        return filter_harmony(table, spec.similarity)
    return filter_both(table, spec.min_count, spec.similarity)
