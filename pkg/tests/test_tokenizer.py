"""Sentence splitting, tokenization, and token classification."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normpipe import Category, Sentence, classify, split_sentences, tokenize


class TestSplitSentences:
    def test_basic(self):
        assert split_sentences("i am here. you are not!") == [
            "i am here.", "you are not!"]

    def test_no_terminator_is_one_sentence(self):
        assert split_sentences("see you soon") == ["see you soon"]

    def test_repeated_terminators_stay_attached(self):
        assert split_sentences("really??? yes.") == ["really???", "yes."]

    def test_empty_input(self):
        assert split_sentences("") == []
        assert split_sentences("   ") == []


class TestTokenize:
    def test_splits_edge_punctuation(self):
        tokens = tokenize("wait, really?")
        assert [t.surface for t in tokens] == ["wait", ",", "really", "?"]

    def test_keeps_interior_apostrophe(self):
        tokens = tokenize("we're here.")
        assert [t.surface for t in tokens] == ["we're", "here", "."]

    def test_keeps_symbols_inside_words(self):
        tokens = tokenize("see you 2morrow. gr8!")
        assert [t.surface for t in tokens] == [
            "see", "you", "2morrow", ".", "gr8", "!"]

    def test_spans_index_into_source(self):
        source = "hi, all."
        for token in tokenize(source):
            start, end = token.span
            assert source[start:end] == token.surface

    @given(st.text(alphabet=st.characters(codec="ascii"), max_size=40))
    def test_tokens_never_empty_or_spaced(self, text):
        for token in tokenize(text):
            assert token.surface
            assert " " not in token.surface

    @given(st.text(alphabet="ab.?! ", max_size=40))
    def test_concatenated_surfaces_preserve_non_space_text(self, text):
        joined = "".join(t.surface for t in tokenize(text))
        assert joined == text.replace(" ", "")


class TestClassify:
    @pytest.fixture(autouse=True)
    def _lex(self, lexicon):
        self.lex = lexicon

    def categories(self, text):
        tokens = classify(tokenize(text), self.lex)
        return [(t.surface, t.category) for t in tokens]

    def test_five_way_split(self):
        got = self.categories("GM jack we're frnd cool .")
        assert got == [
            ("GM", Category.ACRONYM),
            ("jack", Category.NAMED_ENTITY),
            ("we're", Category.CONTRACTION),
            ("frnd", Category.UNNORMALIZED),
            ("cool", Category.NORMALIZED),
            (".", Category.NORMALIZED),
        ]

    def test_expansion_beats_vocabulary(self):
        # "u" and "r" are words some lists include; the expansion table
        # must win so texting shorthand expands.
        got = dict(self.categories("u r"))
        assert got["u"] == Category.ACRONYM
        assert got["r"] == Category.ACRONYM

    def test_entity_beats_vocabulary(self):
        # "will" is both a name and a verb; gazetteer wins.
        got = dict(self.categories("will"))
        assert got["will"] == Category.NAMED_ENTITY

    def test_apostrophe_splits_contraction_from_acronym(self):
        got = dict(self.categories("can't lol"))
        assert got["can't"] == Category.CONTRACTION
        assert got["lol"] == Category.ACRONYM

    def test_punctuation_is_normalized(self):
        got = dict(self.categories("hi ."))
        assert got["."] == Category.NORMALIZED

    def test_recognizer_indices_override_vocab(self, lexicon):
        class Stub:
            def recognize(self, surfaces):
                return {0}

        tokens = classify(tokenize("cool story"), lexicon, Stub())
        assert tokens[0].category == Category.NAMED_ENTITY
        assert tokens[1].category == Category.NORMALIZED


class TestInformalityRatio:
    def test_counts_word_tokens_only(self, lexicon):
        tokens = classify(tokenize("i m wit her."), lexicon)
        sentence = Sentence("i m wit her.", tokens)
        assert sentence.informality_ratio == pytest.approx(0.25)

    def test_zero_when_all_normal(self, lexicon):
        tokens = classify(tokenize("i am here."), lexicon)
        assert Sentence("i am here.", tokens).informality_ratio == 0.0

    def test_zero_when_no_words(self, lexicon):
        tokens = classify(tokenize("..."), lexicon)
        assert Sentence("...", tokens).informality_ratio == 0.0
