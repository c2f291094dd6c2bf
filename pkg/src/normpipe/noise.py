"""Seeded character-level perturbation for building informal test corpora.

Six operations cover both attack-style edits (insert, delete, swap) and
texting-style shorthand (interior vowel drops, letter stretching, symbol
substitution). Everything is driven by one explicit RNG stream per call,
so outputs are reproducible from the seed alone.
"""

from __future__ import annotations

import logging
import random
import string
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

log = logging.getLogger(__name__)

_VOWELS = "aeiou"

# Inverse of the default symbol table: pronounceable chunks that texters
# replace with a digit or sign.
_PHRASE_TO_SYMBOL = {"for": "4", "at": "@", "to": "2", "eat": "8", "and": "&"}


class NoiseOp(str, Enum):
    INSERT = "insert"
    DELETE = "delete"
    SWAP = "swap"
    VOWEL_DROP = "vowel_drop"
    REPEAT_STRETCH = "repeat_stretch"
    SYMBOL_SUB = "symbol_sub"


@dataclass(frozen=True)
class AlignmentRow:
    """One perturbed word: where it was and what it used to be."""

    line: int
    pos: int
    original: str
    noisy: str


@dataclass(frozen=True)
class NoiseResult:
    lines: list[str]
    alignment: list[AlignmentRow]
    changed_ratio: float


def _interior_vowels(word: str) -> list[int]:
    return [i for i in range(1, len(word) - 1) if word[i].lower() in _VOWELS]


def _symbol_sites(word: str) -> list[tuple[int, str]]:
    sites: list[tuple[int, str]] = []
    lower = word.lower()
    for phrase in sorted(_PHRASE_TO_SYMBOL):
        start = lower.find(phrase)
        while start != -1:
            sites.append((start, phrase))
            start = lower.find(phrase, start + 1)
    sites.sort()
    return sites


def _applicable(word: str, op: NoiseOp) -> bool:
    if op is NoiseOp.INSERT:
        return True
    if op in (NoiseOp.DELETE, NoiseOp.SWAP):
        return len(word) >= 2
    if op is NoiseOp.VOWEL_DROP:
        return bool(_interior_vowels(word))
    if op is NoiseOp.REPEAT_STRETCH:
        return any(ch.isalpha() for ch in word)
    return bool(_symbol_sites(word))


def _apply(word: str, op: NoiseOp, rng: random.Random) -> str:
    if op is NoiseOp.INSERT:
        pos = rng.randrange(len(word) + 1)
        return word[:pos] + rng.choice(string.ascii_lowercase) + word[pos:]
    if op is NoiseOp.DELETE:
        pos = rng.randrange(len(word))
        return word[:pos] + word[pos + 1:]
    if op is NoiseOp.SWAP:
        pos = rng.randrange(len(word) - 1)
        return word[:pos] + word[pos + 1] + word[pos] + word[pos + 2:]
    if op is NoiseOp.VOWEL_DROP:
        pos = rng.choice(_interior_vowels(word))
        return word[:pos] + word[pos + 1:]
    if op is NoiseOp.REPEAT_STRETCH:
        pos = rng.choice([i for i, ch in enumerate(word) if ch.isalpha()])
        return word[:pos] + word[pos] * rng.randint(3, 6) + word[pos + 1:]
    start, phrase = rng.choice(_symbol_sites(word))
    return word[:start] + _PHRASE_TO_SYMBOL[phrase] + word[start + len(phrase):]


def _perturb(word: str, ops: frozenset[NoiseOp], count: int, rng: random.Random) -> str:
    current = word
    for _ in range(count):
        applicable = sorted((op for op in ops if _applicable(current, op)),
                            key=lambda op: op.value)
        if not applicable:
            log.warning("no enabled noise operation applies to %r", current)
            break
        current = _apply(current, rng.choice(applicable), rng)
    return current


def perturb_word(word: str, ops: set[NoiseOp], count: int, seed: int) -> str:
    """Apply count randomly chosen enabled operations to one word.

    Each step picks uniformly among the operations that are applicable
    to the current form (delete needs two characters, vowel drop an
    interior vowel, and so on). If none applies the word is returned
    unchanged with a warning. Deterministic for a fixed seed; never
    produces an empty word or one containing spaces.
    """
    if not word:
        raise ValueError("word must be non-empty")
    if count < 0:
        raise ValueError("count must be >= 0")
    return _perturb(word, frozenset(ops), count, random.Random(seed))


def perturb_corpus(lines: list[str], rate: float, ops: set[NoiseOp],
                   seed: int, count: int = 1) -> NoiseResult:
    """Perturb each word independently with the given probability.

    Lines get their own RNG stream seeded with seed XOR line index, so
    corpora can be regenerated line by line. The alignment lists only
    words that actually changed; changed_ratio is their fraction of all
    words.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError("rate must be within [0, 1]")
    enabled = frozenset(ops)
    noisy_lines: list[str] = []
    alignment: list[AlignmentRow] = []
    total = 0
    changed = 0
    for line_index, line in enumerate(lines):
        rng = random.Random(seed ^ line_index)
        out_words: list[str] = []
        for pos, word in enumerate(line.split()):
            total += 1
            noisy = word
            if rng.random() < rate:
                noisy = _perturb(word, enabled, count, rng)
            if noisy != word:
                alignment.append(AlignmentRow(line_index, pos, word, noisy))
                changed += 1
            out_words.append(noisy)
        noisy_lines.append(" ".join(out_words))
    ratio = changed / total if total else 0.0
    return NoiseResult(noisy_lines, alignment, ratio)


def write_alignment(rows: list[AlignmentRow], path: str | Path) -> None:
    """Write alignment rows as TSV: line, position, original, noisy."""
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(f"{row.line}\t{row.pos}\t{row.original}\t{row.noisy}\n")


def read_alignment(path: str | Path) -> list[AlignmentRow]:
    rows: list[AlignmentRow] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) != 4:
            raise ValueError(f"{path}, line {lineno}: expected 4 tab-separated fields")
        rows.append(AlignmentRow(int(parts[0]), int(parts[1]), parts[2], parts[3]))
    return rows
