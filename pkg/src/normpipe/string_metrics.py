"""Normalized string-similarity primitives.

All metrics return values in [0, 1], are symmetric, and give exactly 1
for identical inputs. They operate on whatever strings they are handed;
callers are responsible for lowercasing and symbol substitution.
"""

from __future__ import annotations

import math


def levenshtein_distance(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute edit distance."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def normalized_levenshtein(a: str, b: str) -> float:
    """1 - distance/max-length; 1.0 when both strings are empty."""
    if not a and not b:
        return 1.0
    return 1.0 - levenshtein_distance(a, b) / max(len(a), len(b))


def jaro_winkler(a: str, b: str, scaling: float = 0.1, max_prefix: int = 4) -> float:
    """Jaro similarity with the Winkler common-prefix boost.

    Match window is floor(max(|a|,|b|)/2) - 1; the boost uses scaling 0.1
    capped at a 4-character prefix and is applied unconditionally.
    """
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    window = max(max(len(a), len(b)) // 2 - 1, 0)
    b_taken = [False] * len(b)
    a_matches: list[str] = []
    match_j: list[int] = []
    for i, ch in enumerate(a):
        lo = max(0, i - window)
        hi = min(len(b), i + window + 1)
        for j in range(lo, hi):
            if not b_taken[j] and b[j] == ch:
                b_taken[j] = True
                a_matches.append(ch)
                match_j.append(j)
                break
    m = len(a_matches)
    if m == 0:
        return 0.0
    b_matches = [b[j] for j in sorted(match_j)]
    transpositions = sum(1 for x, y in zip(a_matches, b_matches) if x != y) / 2
    jaro = (m / len(a) + m / len(b) + (m - transpositions) / m) / 3
    prefix = 0
    for x, y in zip(a, b):
        if x != y or prefix == max_prefix:
            break
        prefix += 1
    return jaro + prefix * scaling * (1.0 - jaro)


def ngram_set_cosine(a: str, b: str, n: int) -> float:
    """Cosine over the binary incidence vectors of character n-gram sets.

    Both sets empty counts as identical degenerate inputs (1.0); exactly
    one empty set gives 0.0.
    """
    set_a = {a[i:i + n] for i in range(len(a) - n + 1)}
    set_b = {b[i:i + n] for i in range(len(b) - n + 1)}
    if not set_a and not set_b:
        return 1.0
    if not set_a or not set_b:
        return 0.0
    return len(set_a & set_b) / math.sqrt(len(set_a) * len(set_b))


def ssim(x: str, y: str) -> float:
    """Weighted string similarity over four sub-metrics.

    0.6 normalized Levenshtein + 0.2 Jaro-Winkler + 0.15 unigram-set
    cosine + 0.05 bigram-set cosine.
    """
    return (
        0.6 * normalized_levenshtein(x, y)
        + 0.2 * jaro_winkler(x, y)
        + 0.15 * ngram_set_cosine(x, y, 1)
        + 0.05 * ngram_set_cosine(x, y, 2)
    )
