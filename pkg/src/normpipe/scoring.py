"""Candidate scoring: phonetic + string similarity blended with rank probability.

The score of candidate X for unnormalized word Y is

    FinalScore = P(X) * SimScore(X, Y)

where P(X) = 1 - rank/list_cap linearizes the context model's ranking,
and SimScore blends PSim and SSim (0.65/0.35) with an endpoint
adjustment: squared when first and last letters both match, square-rooted
when both differ, unchanged when exactly one matches.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from . import phonetics, string_metrics
from .errors import EncodingError

BOOST = "boost"
DILUTE = "dilute"
NEUTRAL = "neutral"


@dataclass(frozen=True)
class Candidate:
    """A context-model prediction."""

    word: str
    model_score: float


@dataclass(frozen=True)
class ScoredCandidate:
    word: str
    rank_index: int
    p_context: float
    s_sim: float
    p_sim: float
    sim_score: float
    final_score: float
    branch: str
    variant: str


def context_probability(rank_index: int, list_cap: int = 5000) -> float:
    """P(X) = 1 - rank/cap for 0-based ranks below the cap."""
    if not 0 <= rank_index < list_cap:
        raise ValueError(f"rank_index {rank_index} outside [0, {list_cap})")
    return 1.0 - rank_index / list_cap


def psim(x: str, y: str) -> float:
    """Phonetic similarity over the three encoders' codes.

    0.6 on Metaphone, 0.2 on Soundex, 0.2 on Fuzzy Soundex, each
    compared by normalized Levenshtein. Raises EncodingError when either
    word has no letters.
    """
    nl = string_metrics.normalized_levenshtein
    return (
        0.6 * nl(phonetics.metaphone(x), phonetics.metaphone(y))
        + 0.2 * nl(phonetics.soundex(x), phonetics.soundex(y))
        + 0.2 * nl(phonetics.fuzzy_soundex(x), phonetics.fuzzy_soundex(y))
    )


def _endpoint_branch(x: str, y: str) -> str:
    if not x or not y:
        return DILUTE
    first = x[0] == y[0]
    last = x[-1] == y[-1]
    if first and last:
        return BOOST
    if not first and not last:
        return DILUTE
    return NEUTRAL


@functools.lru_cache(maxsize=262144)
def sim_components_scoped(x: str, y_phonetic: str, y_string: str) -> tuple[float, float, float, str]:
    """(p_sim, s_sim, sim_score, branch) with separate comparison forms.

    PSim and the endpoint check use y_phonetic (normally the
    symbol-substituted form); SSim uses y_string. Unencodable input on
    either side degrades p_sim to 0 rather than failing; the string side
    is always computable.
    """
    try:
        p = psim(x, y_phonetic)
    except EncodingError:
        p = 0.0
    s = string_metrics.ssim(x, y_string)
    base = 0.65 * p + 0.35 * s
    branch = _endpoint_branch(x, y_phonetic)
    if branch == BOOST:
        score = base * base
    elif branch == DILUTE:
        score = math.sqrt(base)
    else:
        score = base
    return p, s, score, branch


def sim_components(x: str, y: str) -> tuple[float, float, float, str]:
    """(p_sim, s_sim, sim_score, branch) for one candidate/word pair."""
    return sim_components_scoped(x, y, y)


def sim_score(x: str, y: str) -> float:
    """SimScore after the endpoint adjustment."""
    return sim_components(x, y)[2]


def best_sim(x: str, variants: tuple[tuple[str, str], ...]) -> tuple[float, float, float, str, str]:
    """Highest-SimScore comparison of x against each variant of y.

    Each variant is a (phonetic_form, string_form) pair. Returns
    (p_sim, s_sim, sim_score, branch, variant) where variant is the
    winning pair's phonetic form; earlier variants win ties so results
    are deterministic.
    """
    best: tuple[float, float, float, str, str] | None = None
    for y_phonetic, y_string in variants:
        p, s, score, branch = sim_components_scoped(x, y_phonetic, y_string)
        if best is None or score > best[2]:
            best = (p, s, score, branch, y_phonetic)
    assert best is not None, "variants must be non-empty"
    return best


def final_score(candidate: Candidate, rank_index: int,
                variants: tuple[tuple[str, str], ...],
                list_cap: int = 5000) -> ScoredCandidate:
    """Populate every component for one candidate."""
    p_ctx = context_probability(rank_index, list_cap)
    p, s, score, branch, variant = best_sim(candidate.word, variants)
    return ScoredCandidate(
        word=candidate.word,
        rank_index=rank_index,
        p_context=p_ctx,
        s_sim=s,
        p_sim=p,
        sim_score=score,
        final_score=p_ctx * score,
        branch=branch,
        variant=variant,
    )


def rank_candidates(candidates: list[Candidate],
                    variants: tuple[tuple[str, str], ...],
                    list_cap: int = 5000, prune: bool = True) -> list[ScoredCandidate]:
    """Score candidates in rank order, truncated to list_cap.

    With prune enabled the scan stops once P(X) alone cannot beat the
    best final score seen (SimScore <= 1 makes P an upper bound), which
    never changes the argmax or its tie-breaking.
    """
    scored: list[ScoredCandidate] = []
    best = -1.0
    for rank_index, candidate in enumerate(candidates[:list_cap]):
        p_ctx = context_probability(rank_index, list_cap)
        if prune and p_ctx < best:
            break
        row = final_score(candidate, rank_index, variants, list_cap)
        scored.append(row)
        if row.final_score > best:
            best = row.final_score
    return scored


def select_replacement(scored: list[ScoredCandidate], threshold: float = 0.25) -> ScoredCandidate | None:
    """Argmax by final score, or None to keep the original word.

    Ties break toward the lower rank index, then lexicographic word
    order. Scores below the threshold keep the original (0.25 accepts,
    anything below rejects).
    """
    if not scored:
        return None
    winner = min(scored, key=lambda c: (-c.final_score, c.rank_index, c.word))
    if winner.final_score >= threshold:
        return winner
    return None
