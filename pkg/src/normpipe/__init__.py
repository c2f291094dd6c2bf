"""Normalization of informal, SMS-style English into canonical form.

The pipeline classifies tokens, masks the suspect ones, asks a context
model for ranked replacements, and accepts the candidate whose combined
phonetic, string, and rank score clears a threshold. Backends range from
stored fixtures through a local n-gram model to a remote prediction
service.
"""

from __future__ import annotations

from .context_model import (FixtureBackend, MaskQuery, NgramBackend,
                            RemoteBackend, load_fixture, train_ngram)
from .errors import (EncodingError, EvaluationError, FixtureParseError,
                     LexiconLoadError, NormpipeError, TrainingError,
                     TransportError)
from .evaluation import (RatingRecord, compare_report, format_report,
                         rating_accuracy, read_ratings, word_accuracy)
from .lexicon import (Lexicon, default_lexicon, expand, is_entity, is_word,
                      load_lexicon, substitute_symbols)
from .ner import EntityRecognizer
from .noise import (AlignmentRow, NoiseOp, NoiseResult, perturb_corpus,
                    perturb_word, read_alignment, write_alignment)
from .phonetics import fuzzy_soundex, metaphone, soundex
from .pipeline import (NormalizationConfig, collapse_repeats,
                       comparison_variants, normalize_line, normalize_sentence,
                       normalize_text)
from .scoring import (Candidate, ScoredCandidate, best_sim,
                      context_probability, final_score, psim, rank_candidates,
                      select_replacement, sim_components, sim_score)
from .string_metrics import (jaro_winkler, levenshtein_distance,
                             ngram_set_cosine, normalized_levenshtein, ssim)
from .tokenizer import (Category, Sentence, Token, classify, split_sentences,
                        tokenize)

__version__ = "0.1.0"

__all__ = [
    "AlignmentRow", "Candidate", "Category", "EncodingError",
    "EntityRecognizer", "EvaluationError", "FixtureBackend",
    "FixtureParseError", "Lexicon", "LexiconLoadError", "MaskQuery",
    "NgramBackend", "NoiseOp", "NoiseResult", "NormalizationConfig",
    "NormpipeError", "RatingRecord", "RemoteBackend", "ScoredCandidate",
    "Sentence", "Token", "TrainingError", "TransportError", "best_sim",
    "classify", "collapse_repeats", "compare_report", "comparison_variants",
    "context_probability", "default_lexicon", "expand", "final_score",
    "format_report", "fuzzy_soundex", "is_entity", "is_word", "jaro_winkler",
    "levenshtein_distance", "load_fixture", "load_lexicon", "metaphone",
    "ngram_set_cosine", "normalize_line", "normalize_sentence",
    "normalize_text", "normalized_levenshtein", "perturb_corpus",
    "perturb_word", "psim", "rank_candidates", "rating_accuracy",
    "read_alignment", "read_ratings", "select_replacement", "sim_components",
    "sim_score", "soundex", "split_sentences", "ssim", "substitute_symbols",
    "tokenize", "train_ngram", "word_accuracy", "write_alignment",
]
