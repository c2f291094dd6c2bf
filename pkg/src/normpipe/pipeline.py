"""End-to-end normalization: classify, mask, predict, score, replace.

Two masking strategies share the rest of the pipeline:

* "oov" masks only tokens absent from the vocabulary.
* "wbw" masks every word token that is not an acronym, contraction, or
  named entity, letting the context model reconsider in-vocabulary words
  too.

Every mask query is built against the original token sequence (with
acronym and contraction expansions spliced in as context), so token
decisions are independent of each other and of processing order.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Callable

from . import lexicon as lx
from . import scoring
from .context_model import MASK, ContextModel, MaskQuery
from .errors import TransportError
from .lexicon import Lexicon
from .ner import EntityRecognizer
from .tokenizer import Category, Sentence, classify, split_sentences, tokenize

log = logging.getLogger(__name__)

OOV_ONLY = "oov"
WORD_BY_WORD = "wbw"

PHONETIC_ONLY = "phonetic"
BOTH = "both"

_REPEAT_RE = re.compile(r"(.)\1{2,}")

Sink = Callable[[dict], None]


def collapse_repeats(word: str) -> tuple[str, ...]:
    """Variants of word with character runs of three or more shortened.

    Returns (original, runs collapsed to two, runs collapsed to one)
    with duplicates removed, order preserved.
    """
    two = _REPEAT_RE.sub(lambda m: m.group(1) * 2, word)
    one = _REPEAT_RE.sub(lambda m: m.group(1), word)
    out: list[str] = []
    for variant in (word, two, one):
        if variant not in out:
            out.append(variant)
    return tuple(out)


@dataclass(frozen=True)
class NormalizationConfig:
    """Pipeline knobs.

    strategy: which tokens to mask ("oov" or "wbw").
    list_cap: maximum candidate-list length; also the P(X) denominator.
    threshold: minimum final score that accepts a replacement.
    substitution_scope: whether symbol substitution feeds only the
        phonetic comparison ("phonetic") or the string one too ("both").
    collapse_repeats: compare against repeat-collapsed variants as well.
    strict: re-raise transport errors instead of keeping the original.
    """

    strategy: str = WORD_BY_WORD
    list_cap: int = 5000
    threshold: float = 0.25
    substitution_scope: str = BOTH
    collapse_repeats: bool = True
    strict: bool = False

    def __post_init__(self) -> None:
        if self.strategy not in (OOV_ONLY, WORD_BY_WORD):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.substitution_scope not in (PHONETIC_ONLY, BOTH):
            raise ValueError(f"unknown substitution scope {self.substitution_scope!r}")
        if self.list_cap < 1:
            raise ValueError("list_cap must be >= 1")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError("threshold must be within [0, 1]")


def comparison_variants(lex: Lexicon, word: str,
                        config: NormalizationConfig) -> tuple[tuple[str, str], ...]:
    """(phonetic_form, string_form) pairs the scorer compares against.

    Repeat collapsing runs on the raw word first; each stage is then
    symbol-substituted. Stages whose substituted form is empty (nothing
    pronounceable) are dropped.
    """
    stages = collapse_repeats(word) if config.collapse_repeats else (word,)
    pairs: list[tuple[str, str]] = []
    for stage in stages:
        substituted = lx.substitute_symbols(lex, stage)
        if not substituted:
            continue
        string_form = stage if config.substitution_scope == PHONETIC_ONLY else substituted
        pair = (substituted, string_form)
        if pair not in pairs:
            pairs.append(pair)
    return tuple(pairs)


def _maskable(tokens: list, strategy: str) -> set[int]:
    indices: set[int] = set()
    for i, token in enumerate(tokens):
        if token.is_punctuation:
            continue
        if token.category is Category.UNNORMALIZED:
            indices.add(i)
        elif strategy == WORD_BY_WORD and token.category is Category.NORMALIZED:
            indices.add(i)
    return indices


def normalize_sentence(text: str, backend: ContextModel, lex: Lexicon,
                       config: NormalizationConfig,
                       recognizer: EntityRecognizer | None = None,
                       score_debug: Sink | None = None) -> tuple[str, dict]:
    """Normalize one sentence; returns (normalized text, trace record).

    The trace record holds one decision per input token plus sentence
    informality and the number of model queries, and is stable across
    runs for the same input and backend.
    """
    tokens = classify(tokenize(text), lex, recognizer)
    sentence = Sentence(text, tokens)

    # Context words per token: expansions spliced in, words lowercased.
    context_words: list[list[str]] = []
    expansions: dict[int, str] = {}
    for i, token in enumerate(tokens):
        if token.category in (Category.ACRONYM, Category.CONTRACTION):
            phrase = lx.expand(lex, token.surface)
            assert phrase is not None
            expansions[i] = phrase
            context_words.append(phrase.split())
        elif token.is_punctuation:
            context_words.append([token.surface])
        else:
            context_words.append([token.normalized_surface])
    offsets: list[int] = []
    position = 0
    for words in context_words:
        offsets.append(position)
        position += len(words)
    flat = [word for words in context_words for word in words]

    maskable = _maskable(tokens, config.strategy)
    outputs = [list(words) for words in context_words]
    decisions: list[dict] = []
    predictions_made = 0
    for i, token in enumerate(tokens):
        masked = i in maskable
        decision: dict = {
            "token": token.surface,
            "category": token.category.value if token.category else None,
            "masked": masked,
            "candidates_considered": 0,
            "chosen": expansions.get(i, "keep"),
        }
        if masked:
            variants = comparison_variants(lex, token.normalized_surface, config)
            if variants:
                query_tokens = list(flat)
                query_tokens[offsets[i]] = MASK
                query = MaskQuery(tuple(query_tokens), offsets[i], config.list_cap)
                try:
                    candidates = backend.predict(query)
                    predictions_made += 1
                except TransportError as exc:
                    if config.strict:
                        raise
                    log.warning("prediction failed for %r, keeping original: %s",
                                token.surface, exc)
                    candidates = []
                scored = scoring.rank_candidates(candidates, variants, config.list_cap)
                decision["candidates_considered"] = len(scored)
                if score_debug is not None:
                    for row in scored:
                        score_debug({
                            "sentence": text,
                            "token": token.surface,
                            "candidate": row.word,
                            "rank": row.rank_index,
                            "p_context": row.p_context,
                            "p_sim": row.p_sim,
                            "s_sim": row.s_sim,
                            "sim_score": row.sim_score,
                            "final_score": row.final_score,
                            "branch": row.branch,
                            "variant": row.variant,
                        })
                winner = scoring.select_replacement(scored, config.threshold)
                if winner is not None:
                    outputs[i] = [winner.word]
                    decision["chosen"] = winner.word
                    decision["final_score"] = winner.final_score
        decisions.append(decision)

    normalized = " ".join(word for words in outputs for word in words)
    trace = {
        "sentence": text,
        "decisions": decisions,
        "informality_ratio": sentence.informality_ratio,
        "predictions_made": predictions_made,
    }
    return normalized, trace


def normalize_line(line: str, backend: ContextModel, lex: Lexicon,
                   config: NormalizationConfig,
                   recognizer: EntityRecognizer | None = None,
                   collect_debug: bool = False) -> tuple[str, list[dict], list[dict]]:
    """Normalize one input line (one message, possibly several sentences).

    Sentence outputs are joined by single spaces. Returns the output
    line, one trace record per sentence, and the score-debug rows (empty
    unless collect_debug is set).
    """
    traces: list[dict] = []
    debug_rows: list[dict] = []
    sink = debug_rows.append if collect_debug else None
    pieces = []
    for sentence_text in split_sentences(line):
        normalized, record = normalize_sentence(
            sentence_text, backend, lex, config, recognizer, sink)
        traces.append(record)
        pieces.append(normalized)
    return " ".join(pieces), traces, debug_rows


def normalize_text(text: str, backend: ContextModel, lex: Lexicon,
                   config: NormalizationConfig,
                   recognizer: EntityRecognizer | None = None,
                   collect_debug: bool = False) -> tuple[str, list[dict], list[dict]]:
    """Normalize line-oriented text; output has one line per input line."""
    out_lines: list[str] = []
    traces: list[dict] = []
    debug_rows: list[dict] = []
    for line in text.splitlines():
        normalized, line_traces, line_debug = normalize_line(
            line, backend, lex, config, recognizer, collect_debug)
        out_lines.append(normalized)
        traces.extend(line_traces)
        debug_rows.extend(line_debug)
    return "\n".join(out_lines), traces, debug_rows
