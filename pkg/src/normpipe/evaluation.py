"""Normalization quality metrics and approach-comparison reports.

Two tracks: rating-based accuracy over human scores (1-5 per tuple,
averaged per tuple, scaled to a percentage) and reference-based word
accuracy against a gold corpus, optionally restricted by a noise
alignment to separate "fixed what was broken" from "broke what was
fine".
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import EvaluationError
from .noise import AlignmentRow


@dataclass(frozen=True)
class RatingRecord:
    """All ratings given to one normalized tuple."""

    tuple_id: str
    ratings: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.ratings:
            raise EvaluationError(f"record {self.tuple_id!r} has no ratings")
        if any(not 1 <= r <= 5 for r in self.ratings):
            raise EvaluationError(f"record {self.tuple_id!r} has a rating outside [1, 5]")


def read_ratings(path: str | Path) -> list[RatingRecord]:
    """Parse a two-column CSV (tuple_id, rating), one rating per row.

    Repeated ids accumulate into one record, ordered by first
    appearance. A header row naming the columns is skipped.
    """
    grouped: dict[str, list[int]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1 and [c.strip().lower() for c in row] == ["tuple_id", "rating"]:
                continue
            if len(row) != 2:
                raise EvaluationError(f"{path}, line {lineno}: expected tuple_id,rating")
            try:
                rating = int(row[1])
            except ValueError as exc:
                raise EvaluationError(f"{path}, line {lineno}: {exc}") from exc
            grouped.setdefault(row[0].strip(), []).append(rating)
    return [RatingRecord(tid, tuple(ratings)) for tid, ratings in grouped.items()]


def rating_accuracy(records: list[RatingRecord]) -> float:
    """Percentage accuracy: (20/N) times the sum of per-tuple mean ratings.

    Records sharing a tuple_id are merged before averaging, so the split
    of ratings across records does not affect the result.
    """
    if not records:
        raise EvaluationError("no rating records")
    merged: dict[str, list[int]] = {}
    for record in records:
        merged.setdefault(record.tuple_id, []).extend(record.ratings)
    total = sum(sum(ratings) / len(ratings) for ratings in merged.values())
    return 20.0 * total / len(merged)


def _dp_align(gold: list[str], system: list[str]) -> list[tuple[int, str | None]]:
    """Map each gold position to its aligned system token (None = dropped).

    Minimal-edit alignment over token sequences; ties prefer
    substitution, then gold deletion, then insertion, so the mapping is
    deterministic.
    """
    n, m = len(gold), len(system)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dp[i][0] = i
    for j in range(m + 1):
        dp[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = 0 if gold[i - 1] == system[j - 1] else 1
            dp[i][j] = min(dp[i - 1][j - 1] + cost, dp[i - 1][j] + 1, dp[i][j - 1] + 1)
    out: list[tuple[int, str | None]] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            cost = 0 if gold[i - 1] == system[j - 1] else 1
            if dp[i][j] == dp[i - 1][j - 1] + cost:
                out.append((i - 1, system[j - 1]))
                i, j = i - 1, j - 1
                continue
        if i > 0 and dp[i][j] == dp[i - 1][j] + 1:
            out.append((i - 1, None))
            i -= 1
            continue
        j -= 1
    out.reverse()
    return out


def word_accuracy(system_output: list[str], gold: list[str],
                  alignment: list[AlignmentRow] | None = None) -> dict[str, float]:
    """Token-level accuracy of system output against a gold corpus.

    word_acc counts gold tokens reproduced exactly. With a noise
    alignment, changed_word_acc is accuracy restricted to the perturbed
    positions and unchanged_false_change is the fraction of untouched
    positions the system altered. Without one, every position counts as
    originally correct, so unchanged_false_change complements word_acc
    and changed_word_acc is 0.
    """
    if len(system_output) != len(gold):
        raise EvaluationError(
            f"line count mismatch: {len(system_output)} system vs {len(gold)} gold")
    aligned: dict[tuple[int, int], str | None] = {}
    gold_tokens: dict[tuple[int, int], str] = {}
    matched = 0
    total = 0
    for line_index, (sys_line, gold_line) in enumerate(zip(system_output, gold)):
        s_tokens = sys_line.split()
        g_tokens = gold_line.split()
        if len(s_tokens) == len(g_tokens):
            pairs: list[tuple[int, str | None]] = list(enumerate(s_tokens))
        else:
            pairs = _dp_align(g_tokens, s_tokens)
        for gold_pos, sys_token in pairs:
            key = (line_index, gold_pos)
            aligned[key] = sys_token
            gold_tokens[key] = g_tokens[gold_pos]
            total += 1
            if sys_token == g_tokens[gold_pos]:
                matched += 1
    word_acc = matched / total if total else 1.0
    changed_keys = {(row.line, row.pos) for row in alignment or []}
    changed_keys &= gold_tokens.keys()
    if changed_keys:
        changed_ok = sum(1 for key in changed_keys if aligned[key] == gold_tokens[key])
        changed_word_acc = changed_ok / len(changed_keys)
    else:
        changed_word_acc = 0.0
    unchanged_keys = gold_tokens.keys() - changed_keys
    if unchanged_keys:
        falsified = sum(1 for key in unchanged_keys if aligned[key] != gold_tokens[key])
        unchanged_false_change = falsified / len(unchanged_keys)
    else:
        unchanged_false_change = 0.0
    return {
        "word_acc": word_acc,
        "changed_word_acc": changed_word_acc,
        "unchanged_false_change": unchanged_false_change,
    }


def compare_report(traces_a: list[dict], traces_b: list[dict],
                   metrics_a: dict[str, float], metrics_b: dict[str, float],
                   latency_a: float | None = None,
                   latency_b: float | None = None) -> dict:
    """Side-by-side summary of two pipeline runs over the same corpus.

    Latencies are caller-measured mean seconds per sentence and may be
    omitted; they are reported as-is, never derived from traces.
    """
    sentences_a = [trace["sentence"] for trace in traces_a]
    sentences_b = [trace["sentence"] for trace in traces_b]
    if sentences_a != sentences_b:
        raise EvaluationError("traces cover different corpora")

    def side(traces: list[dict], metrics: dict[str, float],
             latency: float | None) -> dict:
        return {
            "word_acc": metrics["word_acc"],
            "changed_word_acc": metrics["changed_word_acc"],
            "unchanged_false_change": metrics["unchanged_false_change"],
            "predictions_made": sum(t["predictions_made"] for t in traces),
            "mean_latency_s": latency,
        }

    return {
        "sentences": len(sentences_a),
        "approach_1": side(traces_a, metrics_a, latency_a),
        "approach_2": side(traces_b, metrics_b, latency_b),
    }


def format_report(report: dict) -> str:
    """Aligned plain-text table for a compare_report result."""
    rows = [("metric", "approach_1", "approach_2")]
    for key in ("word_acc", "changed_word_acc", "unchanged_false_change",
                "predictions_made", "mean_latency_s"):
        cells = []
        for side in ("approach_1", "approach_2"):
            value = report[side][key]
            if value is None:
                cells.append("n/a")
            elif isinstance(value, float):
                cells.append(f"{value:.4f}")
            else:
                cells.append(str(value))
        rows.append((key, *cells))
    rows.append(("sentences", str(report["sentences"]), str(report["sentences"])))
    widths = [max(len(row[col]) for row in rows) for col in range(3)]
    lines = []
    for row in rows:
        lines.append("  ".join(
            cell.ljust(widths[0]) if col == 0 else cell.rjust(widths[col])
            for col, cell in enumerate(row)))
    return "\n".join(lines)
