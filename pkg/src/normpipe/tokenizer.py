"""Sentence splitting, word tokenization, and five-way token classification."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from . import lexicon as lx

if TYPE_CHECKING:
    from .lexicon import Lexicon
    from .ner import EntityRecognizer


class Category(str, Enum):
    NORMALIZED = "Normalized"
    ACRONYM = "Acronym"
    CONTRACTION = "Contraction"
    NAMED_ENTITY = "NamedEntity"
    UNNORMALIZED = "Unnormalized"


# Characters split off a token's edges as standalone punctuation tokens.
# Symbols with phonetic value (@, &, digits) are word characters.
_PUNCT_CHARS = ".,!?;:\"'()[]{}"

_SENTENCE_RE = re.compile(r".*?[.!?]+(?=\s|$)|.+?$", re.DOTALL)


@dataclass
class Token:
    surface: str
    span: tuple[int, int]
    category: Category | None = None

    @property
    def normalized_surface(self) -> str:
        return self.surface.lower()

    @property
    def is_punctuation(self) -> bool:
        return all(ch in _PUNCT_CHARS for ch in self.surface)


@dataclass
class Sentence:
    source: str
    tokens: list[Token] = field(default_factory=list)

    @property
    def informality_ratio(self) -> float:
        """Unnormalized word tokens over all word tokens; 0 when no words."""
        words = [t for t in self.tokens if not t.is_punctuation]
        if not words:
            return 0.0
        bad = sum(1 for t in words if t.category is Category.UNNORMALIZED)
        return bad / len(words)


def split_sentences(text: str) -> list[str]:
    """Split on runs of ``.!?`` followed by whitespace or end of text.

    The punctuation run stays with its sentence; empty segments are
    dropped.
    """
    out = []
    for match in _SENTENCE_RE.finditer(text):
        segment = match.group().strip()
        if segment:
            out.append(segment)
    return out


def tokenize(sentence: str) -> list[Token]:
    """Whitespace tokenization with edge punctuation split off.

    Leading and trailing punctuation runs become their own tokens;
    apostrophes inside a word are kept (contractions like "can't").
    """
    tokens: list[Token] = []
    for match in re.finditer(r"\S+", sentence):
        chunk, start = match.group(), match.start()
        left = 0
        while left < len(chunk) and chunk[left] in _PUNCT_CHARS:
            left += 1
        right = len(chunk)
        while right > left and chunk[right - 1] in _PUNCT_CHARS:
            right -= 1
        if left:
            tokens.append(Token(chunk[:left], (start, start + left)))
        if right > left:
            tokens.append(Token(chunk[left:right], (start + left, start + right)))
        if right < len(chunk):
            tokens.append(Token(chunk[right:], (start + right, start + len(chunk))))
    return tokens


def classify(tokens: list[Token], lex: Lexicon, recognizer: EntityRecognizer | None = None) -> list[Token]:
    """Assign each token exactly one category.

    Priority for word tokens: expansion-table hit, then named entity,
    then vocabulary, then the unnormalized residual. Punctuation tokens
    pass through as Normalized.
    """
    entity_indices: set[int] = set()
    if recognizer is not None:
        entity_indices = recognizer.recognize([t.normalized_surface for t in tokens])
    for i, token in enumerate(tokens):
        if token.is_punctuation:
            token.category = Category.NORMALIZED
        elif lx.expand(lex, token.surface) is not None:
            key = token.normalized_surface
            token.category = Category.CONTRACTION if "'" in key else Category.ACRONYM
        elif i in entity_indices or lx.is_entity(lex, token.surface):
            token.category = Category.NAMED_ENTITY
        elif lx.is_word(lex, token.surface):
            token.category = Category.NORMALIZED
        else:
            token.category = Category.UNNORMALIZED
    return tokens
