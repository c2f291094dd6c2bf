"""Phonetic encoders: Soundex, Metaphone, and Fuzzy Soundex.

Variants implemented:

* Soundex: the classic archival rules. H and W are transparent (a coded
  consonant on each side of them collapses), vowels and Y reset the
  collapse, output is letter + three digits.
* Metaphone: the original single-output transformation rules with
  variable-length codes and one refinement: word-initial THOM-/THAM-
  keeps the T sound (thomas -> TMS) while every other TH becomes "0".
* Fuzzy Soundex: q-gram substitutions at word start, end, and interior,
  then Soundex-style coding with the split consonant table (7 and 9
  groups), fixed length 5, and H/W/Y first letters prepended whole.
"""

from __future__ import annotations

import functools
import unicodedata

from .errors import EncodingError

_VOWELS = set("AEIOU")

_SOUNDEX_DIGITS = {
    **dict.fromkeys("BFPV", "1"),
    **dict.fromkeys("CGJKQSXZ", "2"),
    **dict.fromkeys("DT", "3"),
    "L": "4",
    **dict.fromkeys("MN", "5"),
    "R": "6",
}

# Fuzzy Soundex splits the Soundex "2" group: GJKQX -> 7, CSZ -> 9.
_FUZZY_DIGITS = {
    **dict.fromkeys("AEIOU", "0"),
    **dict.fromkeys("BFPV", "1"),
    **dict.fromkeys("DT", "3"),
    "L": "4",
    **dict.fromkeys("MN", "5"),
    "R": "6",
    **dict.fromkeys("GJKQX", "7"),
    **dict.fromkeys("CSZ", "9"),
}

_FUZZY_BEGIN = [("CS", "SS"), ("CZ", "SS"), ("TS", "SS"), ("TZ", "SS"),
                ("GN", "NN"), ("KN", "NN"), ("NG", "NN"),
                ("HR", "RR"), ("WR", "RR"), ("HW", "WW")]
_FUZZY_END = [("RDT", "RR"), ("CH", "KK"), ("NT", "TT"), ("RT", "RR")]
_FUZZY_ANYWHERE = [("CA", "KA"), ("CC", "KK"), ("CK", "KK"), ("CE", "SE"),
                   ("CHL", "KL"), ("CL", "KL"), ("CHR", "KR"), ("CR", "KR"),
                   ("CI", "SI"), ("CO", "KO"), ("CU", "KU"), ("CY", "SY"),
                   ("DG", "GG"), ("GH", "GG"), ("MAC", "MK"), ("MC", "MK"),
                   ("NST", "NSS"), ("PF", "FF"), ("PH", "FF"), ("SCH", "SSS"),
                   ("TIO", "SIO"), ("TIA", "SIO"), ("TCH", "CHH")]


def _letters(word: str) -> str:
    """Uppercase ASCII letters of the word, accents folded away."""
    folded = unicodedata.normalize("NFKD", word)
    out = "".join(ch for ch in folded if ch.isascii() and ch.isalpha())
    if not out:
        raise EncodingError(f"no encodable letters in {word!r}")
    return out.upper()


@functools.lru_cache(maxsize=65536)
def soundex(word: str) -> str:
    word = _letters(word)
    first = word[0]
    prev = _SOUNDEX_DIGITS.get(first, "")
    digits: list[str] = []
    for ch in word[1:]:
        if ch in _VOWELS or ch == "Y":
            prev = ""
        elif ch in "HW":
            continue
        else:
            digit = _SOUNDEX_DIGITS[ch]
            if digit != prev:
                digits.append(digit)
                prev = digit
        if len(digits) == 3:
            break
    return (first + "".join(digits) + "000")[:4]


@functools.lru_cache(maxsize=65536)
def metaphone(word: str) -> str:
    word = _letters(word)

    # Drop duplicate adjacent letters except C.
    deduped = [word[0]]
    for ch in word[1:]:
        if ch != deduped[-1] or ch == "C":
            deduped.append(ch)
    word = "".join(deduped)

    # Initial-letter exceptions.
    if word[:2] in ("AE", "GN", "KN", "PN", "WR"):
        word = word[1:]
    elif word[:1] == "X":
        word = "S" + word[1:]
    elif word[:2] == "WH":
        word = "W" + word[1:]

    def vowel(i: int) -> bool:
        return 0 <= i < len(word) and word[i] in _VOWELS

    out: list[str] = []
    i = 0
    while i < len(word):
        ch = word[i]
        nxt = word[i + 1] if i + 1 < len(word) else ""
        step = 1
        if ch in _VOWELS:
            if i == 0:
                out.append(ch)
        elif ch == "B":
            if not (i == len(word) - 1 and i > 0 and word[i - 1] == "M"):
                out.append("B")
        elif ch == "C":
            if word[i:i + 3] == "CIA":
                out.append("X")
            elif nxt == "H":
                out.append("K" if i > 0 and word[i - 1] == "S" else "X")
                step = 2
            elif nxt in ("I", "E", "Y"):
                if not (i > 0 and word[i - 1] == "S"):
                    out.append("S")
            else:
                out.append("K")
        elif ch == "D":
            if nxt == "G" and word[i + 2:i + 3] in ("E", "Y", "I"):
                out.append("J")
            else:
                out.append("T")
        elif ch == "G":
            if nxt == "H":
                # GH sounds like G before a vowel, otherwise silent.
                if vowel(i + 2):
                    out.append("K")
                step = 2
            elif nxt == "N":
                pass  # silent in GN
            elif nxt in ("I", "E", "Y"):
                out.append("J")
            else:
                out.append("K")
        elif ch == "H":
            if not (vowel(i - 1) and not vowel(i + 1)):
                out.append("H")
        elif ch == "K":
            if not (i > 0 and word[i - 1] == "C"):
                out.append("K")
        elif ch == "P":
            if nxt == "H":
                out.append("F")
                step = 2
            else:
                out.append("P")
        elif ch == "Q":
            out.append("K")
        elif ch == "S":
            if nxt == "H":
                out.append("X")
                step = 2
            elif word[i:i + 3] in ("SIO", "SIA"):
                out.append("X")
            else:
                out.append("S")
        elif ch == "T":
            if word[i:i + 3] in ("TIO", "TIA"):
                out.append("X")
            elif nxt == "H":
                # Word-initial THOM-/THAM- keeps the T sound.
                if i == 0 and word[:4] in ("THOM", "THAM"):
                    out.append("T")
                else:
                    out.append("0")
                step = 2
            elif word[i:i + 3] == "TCH":
                pass  # the CH carries the sound
            else:
                out.append("T")
        elif ch == "V":
            out.append("F")
        elif ch in "WY":
            if vowel(i + 1):
                out.append(ch)
        elif ch == "X":
            out.append("KS")
        elif ch == "Z":
            out.append("S")
        else:  # F J L M N R
            out.append(ch)
        i += step
    return "".join(out)


@functools.lru_cache(maxsize=65536)
def fuzzy_soundex(word: str, length: int = 5) -> str:
    word = _letters(word)
    for pattern, repl in _FUZZY_BEGIN:
        if word.startswith(pattern):
            word = repl + word[len(pattern):]
            break
    for pattern, repl in _FUZZY_END:
        if word.endswith(pattern):
            word = word[:-len(pattern)] + repl
            break
    for pattern, repl in _FUZZY_ANYWHERE:
        word = word.replace(pattern, repl)

    digits = "".join(_FUZZY_DIGITS[ch] for ch in word if ch in _FUZZY_DIGITS)
    collapsed: list[str] = []
    for digit in digits:
        if not collapsed or digit != collapsed[-1]:
            collapsed.append(digit)
    code = "".join(collapsed)
    if word[0] in "HWY":
        code = word[0] + code
    else:
        code = word[0] + code[1:]
    code = code[0] + code[1:].replace("0", "")
    return (code + "0" * length)[:length]
