"""Shared fixtures: lexicon, golden files, and synthetic clean corpora."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from normpipe import default_lexicon, load_fixture

DATA = Path(__file__).parent / "data"

# Sentence pools for generated clean corpora. Every word is in the
# vocabulary, is not an expansion key or gazetteer entry, and stays out
# of all three lists after any single interior-vowel drop, so noisy
# forms are reliably out-of-vocabulary and never trigger expansion.
SUBJECTS = ["the brother", "the sister", "the teacher", "the doctor",
            "the driver", "the singer", "the farmer", "the keeper"]
VERBS = ["visited", "remembered", "watched", "enjoyed", "finished",
         "started", "attended", "planned", "described", "imagined"]
OBJECTS = ["the cricket match", "the morning lesson", "the garden party",
           "the village market", "the history museum", "the railway bridge",
           "the summer festival", "the evening concert"]
TAILS = ["yesterday", "together", "quietly", "happily", "slowly",
         "carefully", "recently", "suddenly"]


def build_clean_corpus(lines: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    return [
        f"{rng.choice(SUBJECTS)} {rng.choice(VERBS)} "
        f"{rng.choice(OBJECTS)} {rng.choice(TAILS)}"
        for _ in range(lines)
    ]


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def golden_backend():
    return load_fixture(DATA / "golden_fixture.jsonl")


@pytest.fixture(scope="session")
def golden_input() -> str:
    return (DATA / "golden_input.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden_expected_wbw() -> str:
    return (DATA / "golden_expected_wbw.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden_expected_oov() -> str:
    return (DATA / "golden_expected_oov.txt").read_text(encoding="utf-8")
