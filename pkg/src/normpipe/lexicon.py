"""Word vocabulary, expansion table, symbol map, and gazetteer.

All four structures load from plain text files (see ``load_lexicon``) and
are immutable afterwards, so a single Lexicon is safe to share across any
number of worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import LexiconLoadError

# Sentence punctuation stripped from the end of a token before expansion
# lookup ("lol!" matches the key "lol").
_TRAILING_PUNCT = ".,!?;:\"')]}"


@dataclass(frozen=True)
class Lexicon:
    """Immutable bundle of the four lookup structures."""

    vocabulary: frozenset[str]
    expansions: dict[str, str]
    symbol_map: dict[str, str]
    gazetteer: frozenset[str]
    # Longest-first symbol keys, precomputed for greedy matching.
    _symbol_keys: tuple[str, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        keys = tuple(sorted(self.symbol_map, key=lambda k: (-len(k), k)))
        object.__setattr__(self, "_symbol_keys", keys)


def _read_lines(path: str | Path, what: str) -> list[tuple[int, str]]:
    """Non-empty, non-comment lines with their 1-based line numbers."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconLoadError(f"cannot read {what} file {path}: {exc}") from exc
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def _read_word_file(path: str | Path, what: str) -> frozenset[str]:
    return frozenset(line.lower() for _, line in _read_lines(path, what))


def _read_tsv(path: str | Path, what: str) -> dict[str, str]:
    table: dict[str, str] = {}
    for lineno, line in _read_lines(path, what):
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise LexiconLoadError(
                f"{what} file {path}, line {lineno}: expected key<TAB>value"
            )
        key, value = parts[0].lower(), parts[1].lower()
        if key in table:
            raise LexiconLoadError(
                f"{what} file {path}, line {lineno}: duplicate key {key!r}"
            )
        table[key] = value
    return table


def load_lexicon(vocab_path: str | Path, expansions_path: str | Path,
                 symbols_path: str | Path, gazetteer_path: str | Path) -> Lexicon:
    """Load all four data files, lowercasing and deduplicating entries."""
    return Lexicon(
        vocabulary=_read_word_file(vocab_path, "vocabulary"),
        expansions=_read_tsv(expansions_path, "expansions"),
        symbol_map=_read_tsv(symbols_path, "symbols"),
        gazetteer=_read_word_file(gazetteer_path, "gazetteer"),
    )


def default_lexicon() -> Lexicon:
    """The lexicon shipped with the package."""
    data = resources.files("normpipe") / "data"
    return load_lexicon(
        Path(str(data / "vocabulary.txt")),
        Path(str(data / "expansions.tsv")),
        Path(str(data / "symbols.tsv")),
        Path(str(data / "gazetteer.txt")),
    )


def is_word(lex: Lexicon, token: str) -> bool:
    """True iff the lowercased token is a vocabulary word."""
    if not token:
        raise ValueError("token must be non-empty")
    return token.lower() in lex.vocabulary


def expand(lex: Lexicon, token: str) -> str | None:
    """Expansion phrase for the token, or None when it is not a key."""
    if not token:
        raise ValueError("token must be non-empty")
    return lex.expansions.get(token.lower().rstrip(_TRAILING_PUNCT))


def is_entity(lex: Lexicon, token: str) -> bool:
    """True iff the lowercased token is a gazetteer entry."""
    if not token:
        raise ValueError("token must be non-empty")
    return token.lower() in lex.gazetteer


def substitute_symbols(lex: Lexicon, token: str) -> str:
    """Replace non-alphabetic runs with their phonetic syllables.

    Each maximal non-alphabetic run is scanned greedily, longest symbol
    key first; unmatched characters are dropped. Alphabetic characters
    pass through lowercased.
    """
    out: list[str] = []
    i = 0
    token = token.lower()
    while i < len(token):
        ch = token[i]
        if ch.isalpha():
            out.append(ch)
            i += 1
            continue
        run_end = i
        while run_end < len(token) and not token[run_end].isalpha():
            run_end += 1
        j = i
        while j < run_end:
            for key in lex._symbol_keys:
                if token.startswith(key, j) and j + len(key) <= run_end:
                    out.append(lex.symbol_map[key])
                    j += len(key)
                    break
            else:
                j += 1
        i = run_end
    return "".join(out)
