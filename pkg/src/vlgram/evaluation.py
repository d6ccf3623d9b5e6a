"""Configuration-grid evaluation of a query pattern's retrieval rank.

The full grid crosses 13 skip levels (9 fixed budgets, 4 variable
windows), 5 weighting functions, 4 filters, and 7 ranking measures: 1820
configurations. Each configuration yields the query's competition rank
in its final list (or absence), summarized per pipeline level as mean
reciprocal rank and compared against baseline levels with pooled
two-sample t statistics, Bonferroni-adjusted p values, and Cohen's d.

Configurations are independent jobs over an immutable corpus; token
enumeration and aggregation are shared across configurations that differ
only in weighting, filtering, or ranking, and results are collated in a
fixed configuration order regardless of worker scheduling.

A seeded synthetic-corpus generator provides desk-scale corpora with a
query pattern planted at controlled skip distances and tempi, recorded
instance by instance in a manifest.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Iterable, Sequence

from .corpus import Corpus, NoteEvent, Piece
from .filters import DEFAULT_MIN_COUNT, FILTER_KINDS, FilterSpec, apply_filter, harmony_pass
from .ranking import MEASURES, RankedList, TableBuilder, build_type_table, rank_table, score_all
from .skipgram import EncodedPiece, SkipConfig, encode_corpus, enumerate_corpus, enumerate_piece
from .vlt import VltPattern
from .weighting import WEIGHT_KINDS, apply_weights, weigh_all

FIXED_SKIPS = (0, 1, 2, 3, 4, 5, 6, 7, 8)
VARIABLE_WINDOWS = (0.5, 1.0, 1.5, 2.0)
DEFAULT_PLANNED_COMPARISONS = 6

BASELINES = {"skip": "fixed:0", "weight": "count", "filter": "none", "rank": "counts"}


class GenerationError(Exception):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    """One full pipeline setting: skip level, weighting, filter, measure."""

    skip: SkipConfig
    weight: str
    filter: FilterSpec
    measure: str

    def __post_init__(self):
        if self.weight not in WEIGHT_KINDS:
            raise ValueError(f"unknown weight kind {self.weight!r}")
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")


def default_skip_configs(n: int = 3, fixed: Sequence[int] = FIXED_SKIPS,
                         windows: Sequence[float] = VARIABLE_WINDOWS) -> list[SkipConfig]:
    configs = [SkipConfig("fixed", n, t=t) for t in fixed]
    configs += [SkipConfig("variable", n, w=w) for w in windows]
    return configs


def default_grid(n: int = 3, min_count: float = DEFAULT_MIN_COUNT,
                 similarity: str = "intersect") -> list[PipelineConfig]:
    """The full configuration grid in canonical order (13 * 5 * 4 * 7 = 1820)."""
    grid = []
    for skip in default_skip_configs(n):
        for weight in WEIGHT_KINDS:
            for fkind in FILTER_KINDS:
                for measure in MEASURES:
                    grid.append(PipelineConfig(
                        skip, weight, FilterSpec(fkind, min_count, similarity), measure))
    return grid


def _skip_level_label(skip: SkipConfig) -> str:
    return str(skip.t) if skip.mode == "fixed" else f"{skip.w:g}"


@dataclass(frozen=True)
class ConfigResult:
    skip_mode: str
    skip_level: str
    weight: str
    filter: str
    measure: str
    query_rank: int | None

    @property
    def rr(self) -> float:
        return 0.0 if self.query_rank is None else 1.0 / self.query_rank

    def level(self, stage: str) -> str:
        if stage == "skip":
            return f"{self.skip_mode}:{self.skip_level}"
        if stage == "skip_mode":
            return self.skip_mode
        if stage == "weight":
            return self.weight
        if stage == "filter":
            return self.filter
        if stage == "rank":
            return self.measure
        raise ValueError(f"unknown stage {stage!r}")


@dataclass
class GridResult:
    query: str
    n: int
    rows: list[ConfigResult]

    def group(self, stage: str, level: str) -> list[float]:
        """Reciprocal ranks of every configuration containing the level."""
        return [r.rr for r in self.rows if r.level(stage) == level]

    def levels(self, stage: str) -> list[str]:
        seen = {}
        for r in self.rows:
            seen.setdefault(r.level(stage), None)
        return list(seen)

    def result_for(self, skip_mode: str, skip_level: str, weight: str,
                   fkind: str, measure: str) -> ConfigResult:
        for r in self.rows:
            if (r.skip_mode == skip_mode and r.skip_level == skip_level
                    and r.weight == weight and r.filter == fkind and r.measure == measure):
                return r
        raise KeyError((skip_mode, skip_level, weight, fkind, measure))


def mrr(ranks: Iterable["int | None"]) -> float:
    """Mean reciprocal rank; an absent query contributes zero."""
    values = [0.0 if r is None else 1.0 / r for r in ranks]
    return sum(values) / len(values) if values else 0.0


def run_config(corpus: Corpus, config: PipelineConfig,
               query: VltPattern) -> tuple[RankedList, int | None]:
    """Execute one full pipeline configuration and locate the query."""
    if len(query) != config.skip.n:
        raise ValueError(
            f"query cardinality {len(query)} does not match n={config.skip.n}")
    pieces = encode_corpus(corpus)
    tokens = apply_weights(enumerate_corpus(pieces, config.skip), config.weight)
    table = build_type_table(tokens, corpus.n_compositions, config.skip.n, config.weight)
    filtered = apply_filter(table, config.filter)
    ranked = rank_table(filtered, config.measure)
    return ranked, ranked.rank_of(query.key)


def _grid_level(pieces: list[EncodedPiece], skip: SkipConfig, query_key,
                weights: Sequence[str], filter_kinds: Sequence[str],
                measures: Sequence[str], min_count: float,
                similarity: str) -> list[ConfigResult]:
    """All (weight, filter, measure) results for one skip level.

    Tokens are enumerated once; every weighting accumulates in the same
    token order run_config uses, so the two paths agree bit for bit.
    """
    n = skip.n
    builder = TableBuilder(n, len(pieces), weights)
    widx = [WEIGHT_KINDS.index(w) for w in weights]
    add = builder.add
    for piece in pieces:
        pid = piece.piece_id
        for tok in enumerate_piece(piece, skip):
            ws = weigh_all(tok.onsets_perf)
            add(pid, tok.type_key, [ws[i] for i in widx])

    keys = list(builder.tables[0].joint.keys())
    key_index = {k: i for i, k in enumerate(keys)}
    harm = [harmony_pass(k, similarity) for k in keys]
    qpos = key_index.get(query_key)
    mode, level = skip.mode, _skip_level_label(skip)

    rows = []
    for table, wkind in zip(builder.tables, weights):
        scores = score_all(table, keys)
        counts = scores["counts"]
        freq = [c >= min_count for c in counts]
        ranks: dict[tuple[str, str], int | None] = {}
        for measure in measures:
            arr = scores[measure]
            qscore = arr[qpos] if qpos is not None else None
            if qscore is None:
                for fkind in filter_kinds:
                    ranks[(fkind, measure)] = None
                continue
            greater = [0, 0, 0, 0]  # none, frequency, harmony, both
            for i, s in enumerate(arr):
                if s is None or s <= qscore:
                    continue
                greater[0] += 1
                if freq[i]:
                    greater[1] += 1
                if harm[i]:
                    greater[2] += 1
                    if freq[i]:
                        greater[3] += 1
            kept = {
                "none": True,
                "frequency": freq[qpos],
                "harmony": harm[qpos],
                "both": freq[qpos] and harm[qpos],
            }
            at = {"none": 0, "frequency": 1, "harmony": 2, "both": 3}
            for fkind in filter_kinds:
                ranks[(fkind, measure)] = greater[at[fkind]] + 1 if kept[fkind] else None
        for fkind in filter_kinds:
            for measure in measures:
                rows.append(ConfigResult(mode, level, wkind, fkind, measure,
                                         ranks[(fkind, measure)]))
    return rows


def run_grid(corpus: Corpus, query: VltPattern, n: int = 3, *,
             min_count: float = DEFAULT_MIN_COUNT, similarity: str = "intersect",
             skip_configs: Sequence[SkipConfig] | None = None,
             weights: Sequence[str] = WEIGHT_KINDS,
             filter_kinds: Sequence[str] = FILTER_KINDS,
             measures: Sequence[str] = MEASURES,
             jobs: int = 1) -> GridResult:
    """Evaluate the query under every configuration of the grid.

    Results appear in canonical configuration order whatever the level of
    parallelism, so repeated runs produce identical output.
    """
    if len(query) != n:
        raise ValueError(f"query cardinality {len(query)} does not match n={n}")
    pieces = encode_corpus(corpus)
    skips = list(skip_configs) if skip_configs is not None else default_skip_configs(n)
    args = [(pieces, skip, query.key, tuple(weights), tuple(filter_kinds),
             tuple(measures), min_count, similarity) for skip in skips]
    if jobs > 1 and len(skips) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_level = list(pool.map(_grid_level_star, args))
    else:
        per_level = [_grid_level(*a) for a in args]
    rows = [row for level_rows in per_level for row in level_rows]
    return GridResult(str(query), n, rows)


def _grid_level_star(args):
    return _grid_level(*args)


@dataclass(frozen=True)
class LevelComparison:
    level_a: str
    level_b: str
    n_a: int
    n_b: int
    mrr_a: float
    mrr_b: float
    delta: float
    t: float | None
    df: int
    p: float | None
    d: float

    def flipped(self) -> "LevelComparison":
        return LevelComparison(self.level_b, self.level_a, self.n_b, self.n_a,
                               self.mrr_b, self.mrr_a, -self.delta,
                               None if self.t is None else -self.t, self.df,
                               self.p, -self.d)


def _mean_var(xs: Sequence[float]) -> tuple[float, float]:
    n = len(xs)
    m = sum(xs) / n
    if n < 2:
        return m, 0.0
    return m, sum((x - m) ** 2 for x in xs) / (n - 1)


def pooled_t_test(xs: Sequence[float], ys: Sequence[float],
                  planned_comparisons: int = 1) -> tuple[float | None, int, float | None, float]:
    """Pooled-variance two-sample t statistic, Bonferroni p, and Cohen's d.

    Returns (t, df, p, d); t and p are None when the pooled variance is
    zero. The raw two-sided p is multiplied by the number of planned
    comparisons and capped at 1.
    """
    n1, n2 = len(xs), len(ys)
    if n1 < 2 or n2 < 2:
        raise ValueError("each group needs at least two observations")
    m1, v1 = _mean_var(xs)
    m2, v2 = _mean_var(ys)
    df = n1 + n2 - 2
    sp2 = ((n1 - 1) * v1 + (n2 - 1) * v2) / df
    if sp2 <= 0.0:
        return None, df, None, 0.0
    sp = sqrt(sp2)
    t = (m1 - m2) / (sp * sqrt(1.0 / n1 + 1.0 / n2))
    from scipy.stats import t as t_dist
    p = min(1.0, 2.0 * float(t_dist.sf(abs(t), df)) * planned_comparisons)
    d = (m1 - m2) / sp
    return t, df, p, d


def compare_levels(grid: GridResult, level_a: tuple[str, str], level_b: tuple[str, str],
                   planned_comparisons: int = 1) -> LevelComparison:
    """Compare the reciprocal ranks of two pipeline levels.

    Levels are (stage, label) pairs, e.g. ("skip", "fixed:4") or
    ("skip_mode", "variable"). Swapping the arguments flips the signs of
    the difference, t, and d.
    """
    xs = grid.group(*level_a)
    ys = grid.group(*level_b)
    t, df, p, d = pooled_t_test(xs, ys, planned_comparisons)
    m1 = sum(xs) / len(xs)
    m2 = sum(ys) / len(ys)
    return LevelComparison(level_a[1], level_b[1], len(xs), len(ys),
                           m1, m2, m1 - m2, t, df, p, d)


@dataclass(frozen=True)
class SummaryRow:
    stage: str
    level: str
    n_configs: int
    mrr: float
    is_baseline: bool
    comparison: LevelComparison | None
    all_absent: bool


def summarize_grid(grid: GridResult,
                   planned_comparisons: int = DEFAULT_PLANNED_COMPARISONS) -> list[SummaryRow]:
    """Per-level MRR plus the comparison of every level against its baseline.

    Also emits the variable-versus-fixed comparison under the stage name
    ``skip_mode``. Levels whose configurations never retrieve the query
    are flagged as absent.
    """
    rows = []
    for stage in ("skip", "weight", "filter", "rank"):
        baseline = BASELINES[stage]
        for level in grid.levels(stage):
            rrs = grid.group(stage, level)
            is_base = level == baseline
            comp = None
            if not is_base:
                comp = compare_levels(grid, (stage, level), (stage, baseline),
                                      planned_comparisons)
            rows.append(SummaryRow(stage, level, len(rrs), sum(rrs) / len(rrs),
                                   is_base, comp, all(rr == 0.0 for rr in rrs)))
    fixed = grid.group("skip_mode", "fixed")
    var = grid.group("skip_mode", "variable")
    if fixed and var:
        comp = compare_levels(grid, ("skip_mode", "variable"), ("skip_mode", "fixed"),
                              planned_comparisons)
        rows.append(SummaryRow("skip_mode", "variable", len(var), sum(var) / len(var),
                               False, comp, all(rr == 0.0 for rr in var)))
    return rows


# ---------------------------------------------------------------------------
# Synthetic corpora


@dataclass(frozen=True)
class PlantSpec:
    """What to plant: the pattern, per-gap interpolation counts, and density."""

    pattern: VltPattern
    gap_choices: tuple[int, ...] = (1, 2, 3, 4, 5)
    piece_rate: float = 0.6
    per_piece: int = 6

    def __post_init__(self):
        if not self.gap_choices or any(g < 0 for g in self.gap_choices):
            raise ValueError("gap choices must be non-negative")
        if not 0.0 <= self.piece_rate <= 1.0:
            raise ValueError("piece rate must be within [0, 1]")
        if self.per_piece < 1:
            raise ValueError("per_piece must be positive")


@dataclass(frozen=True)
class PlantRecord:
    piece_id: str
    indices: tuple[int, ...]
    gaps: tuple[int, ...]

    @property
    def total_gap(self) -> int:
        return sum(self.gaps)

    @property
    def max_gap(self) -> int:
        return max(self.gaps)


ChordShape = tuple[tuple[int, ...], "int | None"]


def default_vocabulary(size: int = 12, seed: int = 0,
                       exclude: Iterable[ChordShape] = ()) -> list[ChordShape]:
    """A deterministic set of distinct chord shapes for noise generation."""
    rng = random.Random(seed)
    banned = set(exclude)
    shapes: list[ChordShape] = []
    seen = set(banned)
    guard = 0
    while len(shapes) < size:
        guard += 1
        if guard > 10000:
            raise GenerationError("could not build a vocabulary of the requested size")
        n_ivs = rng.choices((0, 1, 2, 3), weights=(1, 3, 5, 3))[0]
        ivs = tuple(sorted(rng.sample(range(1, 12), n_ivs)))
        top = rng.choice((None,) + ivs) if ivs else None
        shape = (ivs, top)
        if shape in seen:
            continue
        seen.add(shape)
        shapes.append(shape)
    return shapes


def _realize_pitches(shape: ChordShape, bass_pc: int) -> list[int]:
    ivs, top = shape
    bass = 48 + bass_pc
    pitches = {bass}
    if top is None:
        pitches.update(bass + iv for iv in ivs)
        if ivs:
            pitches.add(bass + 12)
    else:
        pitches.update(bass + iv for iv in ivs if iv != top)
        pitches.add(bass + 12 + top)
    return sorted(pitches)


def generate_synthetic_corpus(n_pieces: int, piece_len: int,
                              vocabulary: Sequence[ChordShape], *, seed: int,
                              plant: PlantSpec | None = None,
                              ioi_range: tuple[float, float] = (0.32, 0.58),
                              shape_weights: Sequence[float] | None = None,
                              motion_weights: Sequence[float] | None = None,
                              ) -> tuple[Corpus, list[PlantRecord]]:
    """Generate a seeded homorhythmic corpus with optional planted patterns.

    Noise slices draw chord shapes from the vocabulary (skewed toward the
    front by default) over a random-walk bass. Planted instances realize
    the pattern's chords and bass motions exactly, separated by the drawn
    numbers of interpolated noise chords; the returned manifest records
    every instance. Slices sit on consecutive score beats with seeded
    per-slice performed inter-onset intervals.
    """
    if not vocabulary:
        raise GenerationError("vocabulary must not be empty")
    rng = random.Random(seed)
    if shape_weights is None:
        shape_weights = [1.0 / (i + 1) for i in range(len(vocabulary))]
    if motion_weights is None:
        motion_weights = [6.0, 1.0, 3.0, 1.5, 1.0, 4.0, 0.5, 4.0, 1.0, 1.5, 1.0, 1.0]
    n_planted = round(plant.piece_rate * n_pieces) if plant else 0
    planted_pieces = set(rng.sample(range(n_pieces), n_planted)) if n_planted else set()

    pieces = []
    records: list[PlantRecord] = []
    for pidx in range(n_pieces):
        piece_id = f"synth{pidx:03d}"
        shape_draws = rng.choices(range(len(vocabulary)), weights=shape_weights, k=piece_len)
        motion_draws = rng.choices(range(12), weights=motion_weights, k=piece_len)
        forced: dict[int, tuple[ChordShape, int]] = {}
        if plant and pidx in planted_pieces:
            chords = plant.pattern.chords
            seg = piece_len // plant.per_piece
            for inst in range(plant.per_piece):
                gaps = tuple(rng.choice(plant.gap_choices) for _ in range(len(chords) - 1))
                width = len(chords) + sum(gaps)
                if width > seg:
                    raise GenerationError(
                        f"planted width {width} exceeds segment of {seg} slices "
                        f"(piece length {piece_len}, {plant.per_piece} per piece)")
                start = inst * seg + rng.randrange(0, seg - width + 1)
                indices = [start]
                for gap in gaps:
                    indices.append(indices[-1] + 1 + gap)
                bass_pc = rng.randrange(12)
                for chord, idx in zip(chords, indices):
                    if chord.bass_motion is not None:
                        bass_pc = (bass_pc + chord.bass_motion) % 12
                    forced[idx] = ((chord.intervals, chord.top), bass_pc)
                records.append(PlantRecord(piece_id, tuple(indices), gaps))
        iois = [rng.uniform(*ioi_range) for _ in range(piece_len)]
        notes = []
        onset_perf = 0.0
        bass_pc = rng.randrange(12)
        for i in range(piece_len):
            if i in forced:
                shape, bass_pc = forced[i]
            else:
                shape = vocabulary[shape_draws[i]]
                bass_pc = (bass_pc + motion_draws[i]) % 12
            for pitch in _realize_pitches(shape, bass_pc):
                notes.append(NoteEvent(piece_id, Fraction(i), Fraction(1), pitch,
                                       onset_perf, iois[i]))
            onset_perf += iois[i]
        pieces.append(Piece(piece_id, notes))
    return Corpus(pieces), records
