"""String metrics against brute-force oracles and frozen values."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normpipe import (jaro_winkler, levenshtein_distance, ngram_set_cosine,
                      normalized_levenshtein, ssim)
from oracles import (jaro_winkler as oracle_jw,
                     levenshtein_recursive,
                     ngram_set_cosine as oracle_cosine,
                     ssim as oracle_ssim)

SHORT = st.text(alphabet="abc", max_size=6)
WORDS = st.text(alphabet=st.characters(min_codepoint=ord("a"),
                                       max_codepoint=ord("z")),
                max_size=10)


class TestLevenshtein:
    @pytest.mark.parametrize("a,b,expected", [
        ("", "", 0),
        ("abc", "", 3),
        ("", "abc", 3),
        ("kitten", "sitting", 3),
        ("flaw", "lawn", 2),
        ("same", "same", 0),
    ])
    def test_known_distances(self, a, b, expected):
        assert levenshtein_distance(a, b) == expected

    @given(SHORT, SHORT)
    def test_matches_recursive_oracle(self, a, b):
        assert levenshtein_distance(a, b) == levenshtein_recursive(a, b)

    @given(WORDS, WORDS)
    def test_symmetry(self, a, b):
        assert levenshtein_distance(a, b) == levenshtein_distance(b, a)

    @given(WORDS, WORDS, WORDS)
    @settings(max_examples=50)
    def test_triangle_inequality(self, a, b, c):
        assert (levenshtein_distance(a, c)
                <= levenshtein_distance(a, b) + levenshtein_distance(b, c))


class TestNormalizedLevenshtein:
    def test_known_values(self):
        assert normalized_levenshtein("kitten", "sitting") == pytest.approx(
            1 - 3 / 7)
        assert normalized_levenshtein("", "") == 1.0
        assert normalized_levenshtein("a", "") == 0.0

    @given(WORDS, WORDS)
    def test_bounds_and_identity(self, a, b):
        value = normalized_levenshtein(a, b)
        assert 0.0 <= value <= 1.0
        assert normalized_levenshtein(a, a) == 1.0


class TestJaroWinkler:
    def test_martha_marhta(self):
        assert jaro_winkler("martha", "marhta") == pytest.approx(
            0.9611111111111111, abs=1e-12)

    @pytest.mark.parametrize("a,b", [
        ("dixon", "dicksonx"), ("duane", "dwayne"), ("with", "wit"),
        ("apple", "pear"), ("x", ""), ("", ""), ("aaaa", "aaaa"),
    ])
    def test_matches_oracle(self, a, b):
        assert jaro_winkler(a, b) == pytest.approx(oracle_jw(a, b), abs=1e-12)

    @given(WORDS, WORDS)
    def test_matches_oracle_random(self, a, b):
        assert jaro_winkler(a, b) == pytest.approx(oracle_jw(a, b), abs=1e-12)

    @given(WORDS, WORDS)
    def test_bounds_symmetry_identity(self, a, b):
        value = jaro_winkler(a, b)
        assert 0.0 <= value <= 1.0
        assert value == pytest.approx(jaro_winkler(b, a), abs=1e-12)
        if a:
            assert jaro_winkler(a, a) == 1.0


class TestNgramSetCosine:
    def test_known_values(self):
        assert ngram_set_cosine("abc", "abd", 1) == pytest.approx(2 / 3)
        assert ngram_set_cosine("a", "b", 2) == 1.0  # both empty bigram sets
        assert ngram_set_cosine("ab", "cd", 1) == 0.0

    @given(WORDS, WORDS, st.integers(min_value=1, max_value=3))
    def test_matches_oracle(self, a, b, n):
        assert ngram_set_cosine(a, b, n) == pytest.approx(
            oracle_cosine(a, b, n), abs=1e-12)


class TestSsim:
    def test_frozen_values(self):
        assert ssim("with", "wit") == pytest.approx(0.8090619729473855, abs=1e-12)
        assert ssim("am", "m") == pytest.approx(0.4060660171779821, abs=1e-12)
        assert ssim("friend", "frnd") == pytest.approx(0.7305165983360972, abs=1e-12)

    @given(WORDS, WORDS)
    def test_matches_oracle(self, a, b):
        assert ssim(a, b) == pytest.approx(oracle_ssim(a, b), abs=1e-12)

    @given(WORDS)
    def test_identity_is_one(self, a):
        if a:
            assert ssim(a, a) == pytest.approx(1.0, abs=1e-12)

    @given(WORDS, WORDS)
    def test_bounds(self, a, b):
        value = ssim(a, b)
        assert 0.0 <= value <= 1.0 + 1e-12
        assert math.isfinite(value)
