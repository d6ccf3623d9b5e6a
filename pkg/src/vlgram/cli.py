"""Command-line interface.

Commands: ``expand`` (slice dump), ``encode`` (voice-leading dump),
``mine`` (one pipeline configuration to a ranked CSV), ``grid`` (all 1820
configurations plus per-level summaries), ``synth`` (seeded synthetic
corpus with a plant manifest), and ``report`` (per-level MRR plot data
from a grid CSV). Every command is deterministic given its inputs, flags,
and seed.

Exit codes: 0 success, 2 usage error, 3 data error, 4 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import corpus as corpus_mod
from . import evaluation, filters, ranking, skipgram, weighting
from .vlt import PatternSyntaxError, format_chord, parse_pattern

USAGE_ERROR = 2
DATA_ERROR = 3
INTERNAL_ERROR = 4

_WEIGHT_CLI = {
    "count": "count",
    "periodicity": "periodicity",
    "resonance": "resonance",
    "proximity": "proximity",
    "resonant-periodicity": "resonant_periodicity",
}
_FILTER_CLI = {"none": "none", "freq": "frequency", "harmony": "harmony", "both": "both"}


def _parse_skip(text: str, n: int) -> skipgram.SkipConfig:
    mode, sep, value = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"skip must look like fixed:5 or variable:1.0, got {text!r}")
    if mode == "fixed":
        try:
            t = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad fixed skip count {value!r}") from None
        return skipgram.SkipConfig("fixed", n, t=t)
    if mode in ("variable", "var"):
        try:
            w = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad variable window {value!r}") from None
        return skipgram.SkipConfig("variable", n, w=w)
    raise argparse.ArgumentTypeError(f"unknown skip mode {mode!r}")


def _load_prepared(path: str) -> corpus_mod.Corpus:
    corpus = corpus_mod.parse_corpus(path)
    corpus_mod.prepare_corpus(corpus)
    return corpus


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _csv_writer(handle):
    return csv.writer(handle, lineterminator="\n")


def _fmt(value) -> str:
    if value is None:
        return "NA"
    return repr(value) if isinstance(value, float) else str(value)


def _cmd_expand(args) -> int:
    corpus = _load_prepared(args.input)
    out, close = _open_out(args.output)
    try:
        for piece in corpus.pieces:
            for s in piece.slices:
                pitches = " ".join(str(p) for p in s.pitches)
                out.write(f"{s.piece_id}\t{s.index}\t{s.onset_score}\t{s.onset_perf!r}"
                          f"\t{s.bass}\t{s.top}\t{pitches}\n")
    finally:
        if close:
            out.close()
    return 0


def _cmd_encode(args) -> int:
    corpus = _load_prepared(args.input)
    out, close = _open_out(args.output)
    try:
        for piece in corpus.pieces:
            encoded = skipgram.EncodedPiece.from_piece(piece)
            for index, vlt in enumerate(encoded.vlts()):
                motion = "" if vlt.bass_motion is None else str(vlt.bass_motion)
                out.write(f"{piece.piece_id}\t{index}\t{format_chord(vlt)}\t{motion}\n")
    finally:
        if close:
            out.close()
    return 0


def _cmd_mine(args) -> int:
    corpus = _load_prepared(args.input)
    skip = _parse_skip(args.skip, args.n)
    config = evaluation.PipelineConfig(
        skip=skip,
        weight=_WEIGHT_CLI[args.weight],
        filter=filters.FilterSpec(_FILTER_CLI[args.filter], args.min_count, args.similarity),
        measure=args.rank,
    )
    query = parse_pattern(args.query) if args.query else None
    if query is not None and len(query) != args.n:
        print(f"error: query has {len(query)} chords but --n is {args.n}", file=sys.stderr)
        return USAGE_ERROR

    pieces = skipgram.encode_corpus(corpus)
    tokens = weighting.apply_weights(
        skipgram.enumerate_corpus(pieces, skip), config.weight)
    if args.dump_tokens:
        with open(args.dump_tokens, "w", encoding="utf-8", newline="") as handle:
            skipgram.dump_tokens(tokens, handle)
    table = ranking.build_type_table(tokens, corpus.n_compositions, args.n, config.weight)
    filtered = filters.apply_filter(table, config.filter)
    ranked = ranking.rank_table(filtered, config.measure)
    rank = ranked.rank_of(query.key) if query else None

    out, close = _open_out(args.output)
    try:
        writer = _csv_writer(out)
        writer.writerow(["rank", "score", "count", "coverage", "type"])
        for entry in ranked.entries:
            writer.writerow([entry.rank, _fmt(entry.score), _fmt(entry.count),
                             entry.coverage, entry.text])
    finally:
        if close:
            out.close()
    if query is not None:
        print(f"query rank: {rank if rank is not None else 'absent'}")
    return 0


GRID_COLUMNS = ["skip_mode", "skip_level", "weight", "filter", "rank_measure",
                "query_rank", "rr"]


def _cmd_grid(args) -> int:
    corpus = _load_prepared(args.input)
    query = parse_pattern(args.query)
    if len(query) != args.n:
        print(f"error: query has {len(query)} chords but --n is {args.n}", file=sys.stderr)
        return USAGE_ERROR
    grid = evaluation.run_grid(corpus, query, args.n, min_count=args.min_count,
                               similarity=args.similarity, jobs=args.jobs)
    with open(args.output, "w", encoding="utf-8", newline="") as handle:
        writer = _csv_writer(handle)
        writer.writerow(GRID_COLUMNS)
        for row in grid.rows:
            writer.writerow([row.skip_mode, row.skip_level, row.weight, row.filter,
                             row.measure, _fmt(row.query_rank), _fmt(row.rr)])
    if args.summary:
        summary = evaluation.summarize_grid(grid, args.planned_comparisons)
        with open(args.summary, "w", encoding="utf-8", newline="") as handle:
            writer = _csv_writer(handle)
            writer.writerow(["stage", "level", "n_configs", "mrr", "delta", "t", "df",
                             "p", "d", "na"])
            for row in summary:
                comp = row.comparison
                if comp is None:
                    stats = ["", "", "", "", ""]
                else:
                    stats = [_fmt(comp.delta), _fmt(comp.t), str(comp.df),
                             _fmt(comp.p), _fmt(comp.d)]
                writer.writerow([row.stage, row.level, row.n_configs, _fmt(row.mrr),
                                 *stats, "NA" if row.all_absent else ""])
    print(f"wrote {len(grid.rows)} configuration rows to {args.output}")
    return 0


def _cmd_synth(args) -> int:
    plant = None
    if args.pattern:
        pattern = parse_pattern(args.pattern)
        gaps = tuple(range(args.gap_min, args.gap_max + 1))
        plant = evaluation.PlantSpec(pattern, gaps, args.rate, args.per_piece)
        exclude = [(c.intervals, c.top) for c in pattern.chords]
    else:
        exclude = []
    vocabulary = evaluation.default_vocabulary(args.vocab_size, args.seed, exclude)
    corpus, records = evaluation.generate_synthetic_corpus(
        args.pieces, args.length, vocabulary, seed=args.seed, plant=plant,
        ioi_range=(args.ioi_min, args.ioi_max))
    with open(args.output, "w", encoding="utf-8", newline="") as handle:
        handle.write("# synthetic corpus\n")
        for piece in corpus.pieces:
            for n in piece.notes:
                handle.write(f"{n.piece_id}\t{n.onset_score}\t{n.duration_score}"
                             f"\t{n.pitch}\t{n.onset_perf!r}\t{n.duration_perf!r}\n")
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8", newline="") as handle:
            writer = _csv_writer(handle)
            writer.writerow(["piece_id", "indices", "gaps", "total_gap"])
            for rec in records:
                writer.writerow([rec.piece_id,
                                 " ".join(str(i) for i in rec.indices),
                                 " ".join(str(g) for g in rec.gaps),
                                 rec.total_gap])
    print(f"wrote {sum(len(p.notes) for p in corpus.pieces)} notes, "
          f"{len(records)} planted instances")
    return 0


def _cmd_report(args) -> int:
    with open(args.grid, encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        rows = []
        for row in reader:
            rank = None if row["query_rank"] == "NA" else int(row["query_rank"])
            rows.append(evaluation.ConfigResult(
                row["skip_mode"], row["skip_level"], row["weight"], row["filter"],
                row["rank_measure"], rank))
    grid = evaluation.GridResult("", 0, rows)
    out, close = _open_out(args.output)
    try:
        writer = _csv_writer(out)
        writer.writerow(["stage", "level", "n_configs", "mrr", "se_rr"])
        for stage in ("skip", "weight", "filter", "rank"):
            for level in grid.levels(stage):
                rrs = grid.group(stage, level)
                n = len(rrs)
                mean = sum(rrs) / n
                if n > 1:
                    var = sum((x - mean) ** 2 for x in rrs) / (n - 1)
                    se = (var / n) ** 0.5
                else:
                    se = 0.0
                writer.writerow([stage, level, n, _fmt(mean), _fmt(se)])
    finally:
        if close:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vlgram",
        description="Discover recurrent voice-leading patterns with skip-grams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="note-event file or directory")

    p = sub.add_parser("expand", help="dump expanded slices as TSV")
    add_input(p)
    p.add_argument("--output", default=None, help="output path (default stdout)")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("encode", help="dump voice-leading encodings as TSV")
    add_input(p)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("mine", help="run one pipeline configuration")
    add_input(p)
    p.add_argument("--skip", default="fixed:0", help="fixed:T or variable:W")
    p.add_argument("--weight", default="count", choices=sorted(_WEIGHT_CLI))
    p.add_argument("--filter", default="none", choices=sorted(_FILTER_CLI))
    p.add_argument("--min-count", type=float, default=filters.DEFAULT_MIN_COUNT)
    p.add_argument("--similarity", default="intersect", choices=filters.SIMILARITY_MODES)
    p.add_argument("--rank", default="counts", choices=ranking.MEASURES)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--query", default=None, help="pattern to locate in the list")
    p.add_argument("--output", default=None)
    p.add_argument("--dump-tokens", default=None, help="also dump the token list as TSV")
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("grid", help="run the full configuration grid")
    add_input(p)
    p.add_argument("--query", required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--min-count", type=float, default=filters.DEFAULT_MIN_COUNT)
    p.add_argument("--similarity", default="intersect", choices=filters.SIMILARITY_MODES)
    p.add_argument("--output", default="grid.csv")
    p.add_argument("--summary", default=None, help="also write per-level statistics")
    p.add_argument("--planned-comparisons", type=int,
                   default=evaluation.DEFAULT_PLANNED_COMPARISONS)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers over skip levels")
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--pieces", type=int, default=20)
    p.add_argument("--length", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vocab-size", type=int, default=12)
    p.add_argument("--pattern", default=None, help="pattern to plant")
    p.add_argument("--gap-min", type=int, default=1)
    p.add_argument("--gap-max", type=int, default=5)
    p.add_argument("--rate", type=float, default=0.6)
    p.add_argument("--per-piece", type=int, default=6)
    p.add_argument("--ioi-min", type=float, default=0.32)
    p.add_argument("--ioi-max", type=float, default=0.58)
    p.add_argument("--output", required=True)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("report", help="per-level MRR plot data from a grid CSV")
    p.add_argument("--grid", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (corpus_mod.CorpusError, PatternSyntaxError,
            evaluation.GenerationError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except ranking.TableInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main(argv=None))
