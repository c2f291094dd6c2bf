"""Command-line interface: normalize, noise, eval, encode, sim.

Data goes to stdout, warnings to stderr, so the tool pipes cleanly.
Exit codes: 0 success (possibly with warnings), 2 usage or bad
configuration/data, 3 I/O failure, 4 remote-backend hard failure under
--strict. Options may also come from NORMPIPE_* environment variables or
a key=value --config file, with flags taking precedence over both.
"""

from __future__ import annotations

import functools
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import evaluation, noise, phonetics, pipeline, scoring
from .context_model import ContextModel, RemoteBackend, load_fixture, train_ngram
from .errors import (EncodingError, EvaluationError, FixtureParseError,
                     LexiconLoadError, TrainingError, TransportError)
from .lexicon import default_lexicon
from .ner import EntityRecognizer

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_REMOTE = 4

_BRANCH_LABELS = {scoring.BOOST: "squared", scoring.DILUTE: "square_root",
                  scoring.NEUTRAL: "unchanged"}

_OPS_BY_NAME = {
    "insert": noise.NoiseOp.INSERT,
    "delete": noise.NoiseOp.DELETE,
    "swap": noise.NoiseOp.SWAP,
    "vowel": noise.NoiseOp.VOWEL_DROP,
    "stretch": noise.NoiseOp.REPEAT_STRETCH,
    "symbol": noise.NoiseOp.SYMBOL_SUB,
}


def _fail(exc: BaseException, code: int) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _guarded(fn):
    """Map library errors to the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except TransportError as exc:
            _fail(exc, EXIT_REMOTE)
        except (FixtureParseError, TrainingError, EvaluationError,
                LexiconLoadError, EncodingError, ValueError) as exc:
            _fail(exc, EXIT_USAGE)
        except OSError as exc:
            _fail(exc, EXIT_IO)

    return wrapper


def _apply_config(ctx: click.Context, param: click.Parameter, value: str | None):
    """Load key=value lines into the default map (lowest precedence)."""
    if not value:
        return None
    try:
        text = Path(value).read_text(encoding="utf-8")
    except OSError as exc:
        raise click.UsageError(f"cannot read config file: {exc}") from exc
    defaults: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"{value}, line {lineno}: expected key=value")
        key, _, val = line.partition("=")
        defaults[key.strip().replace("-", "_")] = val.strip()
    ctx.default_map = {
        "normalize": defaults,
        "noise": defaults,
        "encode": defaults,
        "sim": defaults,
        "eval": {"ratings": defaults, "words": defaults, "compare": defaults},
    }
    return value


def _read_lines(path: str | None) -> list[str]:
    if path is None:
        return sys.stdin.read().splitlines()
    return Path(path).read_text(encoding="utf-8").splitlines()


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + ("\n" if lines else "")
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _make_backend(spec: str, ngram_order: int) -> ContextModel:
    scheme, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise click.UsageError(f"backend must be scheme:target, got {spec!r}")
    if scheme == "fixture":
        return load_fixture(rest)
    if scheme == "ngram":
        return train_ngram(rest, order=ngram_order)
    if scheme == "remote":
        return RemoteBackend(rest)
    raise click.UsageError(f"unknown backend scheme {scheme!r}")


@click.group(context_settings={"auto_envvar_prefix": "NORMPIPE",
                               "help_option_names": ["-h", "--help"]})
@click.option("--config", type=click.Path(dir_okay=False), is_eager=True,
              expose_value=False, callback=_apply_config,
              help="key=value file supplying option defaults.")
def main() -> None:
    """Normalize informal text and inspect the pieces that do it."""
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--strategy", type=click.Choice([pipeline.OOV_ONLY, pipeline.WORD_BY_WORD]),
              default=pipeline.WORD_BY_WORD, show_default=True,
              help="Mask only out-of-vocabulary tokens, or every plain word.")
@click.option("--backend", "backend_spec", required=True,
              help="ngram:<corpus>, fixture:<jsonl>, or remote:<url>.")
@click.option("--ngram-order", type=click.IntRange(2, 3), default=3, show_default=True)
@click.option("--threshold", type=float, default=0.25, show_default=True,
              help="Minimum final score that accepts a replacement.")
@click.option("--list-cap", type=int, default=5000, show_default=True)
@click.option("--scope", type=click.Choice([pipeline.PHONETIC_ONLY, pipeline.BOTH]),
              default=pipeline.BOTH, show_default=True,
              help="Where symbol substitution applies before comparison.")
@click.option("--no-collapse", is_flag=True,
              help="Do not compare against repeat-collapsed variants.")
@click.option("--strict", is_flag=True,
              help="Exit 4 on remote failure instead of keeping originals.")
@click.option("--jobs", type=int, default=None,
              help="Lines normalized in parallel; default: available cores.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False),
              help="Write one JSON decision record per sentence here.")
@click.option("--score-debug", "debug_path", type=click.Path(dir_okay=False),
              help="Write one JSON row per scored candidate here.")
@click.option("--ner-url", default=None,
              help="Entity-recognition service; gazetteer-only if unset.")
@click.option("--in", "in_path", type=click.Path(dir_okay=False),
              help="Input file; default stdin. One message per line.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Output file; default stdout.")
@_guarded
def normalize(strategy: str, backend_spec: str, ngram_order: int, threshold: float,
              list_cap: int, scope: str, no_collapse: bool, strict: bool,
              jobs: int | None, trace_path: str | None, debug_path: str | None,
              ner_url: str | None, in_path: str | None, out_path: str | None) -> None:
    """Normalize text, one message per input line."""
    config = pipeline.NormalizationConfig(
        strategy=strategy, list_cap=list_cap, threshold=threshold,
        substitution_scope=scope, collapse_repeats=not no_collapse, strict=strict)
    lex = default_lexicon()
    backend = _make_backend(backend_spec, ngram_order)
    recognizer = EntityRecognizer(
        lex, RemoteBackend(ner_url) if ner_url else None)
    lines = _read_lines(in_path)
    collect_debug = debug_path is not None

    def work(line: str) -> tuple[str, list[dict], list[dict]]:
        return pipeline.normalize_line(line, backend, lex, config,
                                       recognizer, collect_debug)

    worker_count = jobs if jobs and jobs > 0 else (os.cpu_count() or 1)
    if worker_count > 1 and len(lines) > 1:
        with ThreadPoolExecutor(max_workers=worker_count) as pool:
            results = list(pool.map(work, lines))
    else:
        results = [work(line) for line in lines]

    _write_lines(out_path, [result[0] for result in results])
    if trace_path is not None:
        with open(trace_path, "w", encoding="utf-8") as handle:
            for _, traces, _ in results:
                for record in traces:
                    handle.write(json.dumps(record) + "\n")
    if debug_path is not None:
        with open(debug_path, "w", encoding="utf-8") as handle:
            for _, _, rows in results:
                for row in rows:
                    handle.write(json.dumps(row) + "\n")


@main.command("noise")
@click.option("--rate", type=float, required=True,
              help="Probability each word is perturbed.")
@click.option("--ops", "ops_spec", default="insert,delete,swap,vowel,stretch,symbol",
              show_default=True, help="Comma-separated operation names.")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--count", type=int, default=1, show_default=True,
              help="Operations applied per perturbed word.")
@click.option("--align", "align_path", type=click.Path(dir_okay=False),
              help="Write the TSV alignment of changed words here.")
@click.option("--in", "in_path", type=click.Path(dir_okay=False))
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@_guarded
def noise_cmd(rate: float, ops_spec: str, seed: int, count: int,
              align_path: str | None, in_path: str | None,
              out_path: str | None) -> None:
    """Perturb a corpus with seeded character-level noise."""
    if not 0.0 <= rate <= 1.0:
        raise click.UsageError("--rate must be within [0, 1]")
    ops: set[noise.NoiseOp] = set()
    for name in ops_spec.split(","):
        name = name.strip()
        if name not in _OPS_BY_NAME:
            raise click.UsageError(
                f"unknown op {name!r}; choose from {', '.join(sorted(_OPS_BY_NAME))}")
        ops.add(_OPS_BY_NAME[name])
    lines = _read_lines(in_path)
    result = noise.perturb_corpus(lines, rate, ops, seed, count)
    _write_lines(out_path, result.lines)
    if align_path is not None:
        noise.write_alignment(result.alignment, align_path)
    click.echo(f"changed {result.changed_ratio:.4f} of words", err=True)


@main.group("eval")
def eval_group() -> None:
    """Scoring of normalization output."""


def _read_lines_usage(path: str) -> list[str]:
    try:
        return Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise click.UsageError(str(exc)) from exc


@eval_group.command("ratings")
@click.option("--file", "path", required=True, type=click.Path(dir_okay=False))
@_guarded
def eval_ratings(path: str) -> None:
    """Percentage accuracy from a tuple_id,rating CSV."""
    try:
        records = evaluation.read_ratings(path)
    except OSError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(f"{evaluation.rating_accuracy(records):.2f}")


@eval_group.command("words")
@click.option("--sys", "sys_path", required=True, type=click.Path(dir_okay=False))
@click.option("--gold", "gold_path", required=True, type=click.Path(dir_okay=False))
@click.option("--align", "align_path", type=click.Path(dir_okay=False))
@_guarded
def eval_words(sys_path: str, gold_path: str, align_path: str | None) -> None:
    """Word accuracy of a system file against a gold file."""
    system_lines = _read_lines_usage(sys_path)
    gold_lines = _read_lines_usage(gold_path)
    alignment = None
    if align_path is not None:
        try:
            alignment = noise.read_alignment(align_path)
        except OSError as exc:
            raise click.UsageError(str(exc)) from exc
    metrics = evaluation.word_accuracy(system_lines, gold_lines, alignment)
    for key in ("word_acc", "changed_word_acc", "unchanged_false_change"):
        click.echo(f"{key} {metrics[key]:.4f}")


@eval_group.command("compare")
@click.option("--trace-a", "trace_a_path", required=True, type=click.Path(dir_okay=False))
@click.option("--trace-b", "trace_b_path", required=True, type=click.Path(dir_okay=False))
@click.option("--sys-a", "sys_a_path", required=True, type=click.Path(dir_okay=False))
@click.option("--sys-b", "sys_b_path", required=True, type=click.Path(dir_okay=False))
@click.option("--gold", "gold_path", required=True, type=click.Path(dir_okay=False))
@click.option("--align", "align_path", type=click.Path(dir_okay=False))
@click.option("--out", "out_path", type=click.Path(dir_okay=False),
              help="Also write the report as JSON here.")
@_guarded
def eval_compare(trace_a_path: str, trace_b_path: str, sys_a_path: str,
                 sys_b_path: str, gold_path: str, align_path: str | None,
                 out_path: str | None) -> None:
    """Compare two normalization runs over the same corpus."""
    def read_traces(path: str) -> list[dict]:
        return [json.loads(line) for line in _read_lines_usage(path) if line.strip()]

    traces_a = read_traces(trace_a_path)
    traces_b = read_traces(trace_b_path)
    gold_lines = _read_lines_usage(gold_path)
    alignment = noise.read_alignment(align_path) if align_path else None
    metrics_a = evaluation.word_accuracy(_read_lines_usage(sys_a_path), gold_lines, alignment)
    metrics_b = evaluation.word_accuracy(_read_lines_usage(sys_b_path), gold_lines, alignment)
    report = evaluation.compare_report(traces_a, traces_b, metrics_a, metrics_b)
    click.echo(evaluation.format_report(report))
    if out_path is not None:
        Path(out_path).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")


@main.command()
@click.option("--alg", type=click.Choice(["soundex", "metaphone", "fuzzy"]),
              required=True)
@click.argument("word")
@_guarded
def encode(alg: str, word: str) -> None:
    """Print a word's phonetic code."""
    if not word.strip():
        raise click.UsageError("word must be non-empty")
    encoder = {"soundex": phonetics.soundex, "metaphone": phonetics.metaphone,
               "fuzzy": phonetics.fuzzy_soundex}[alg]
    try:
        click.echo(encoder(word))
    except EncodingError as exc:
        raise click.UsageError(str(exc)) from exc


@main.command()
@click.argument("x")
@click.argument("y")
@_guarded
def sim(x: str, y: str) -> None:
    """Print similarity components for a candidate/word pair."""
    if not x.strip() or not y.strip():
        raise click.UsageError("both words must be non-empty")
    p_sim, s_sim, score, branch = scoring.sim_components(x.lower(), y.lower())
    click.echo(f"PSim {p_sim:.6f}")
    click.echo(f"SSim {s_sim:.6f}")
    click.echo(f"SimScore {score:.6f}")
    click.echo(f"branch {_BRANCH_LABELS[branch]}")
