"""Prediction backends: fixture replay, n-gram model, remote client."""

from __future__ import annotations

import math

import pytest

from normpipe import (Candidate, FixtureParseError, MaskQuery, NgramBackend,
                      TrainingError, TransportError, load_fixture, train_ngram)
from normpipe.context_model import MASK, RemoteBackend, predict
from normpipe.stub_server import fixture_stub


class TestMaskQuery:
    def test_key_joins_tokens(self):
        q = MaskQuery(("i", MASK, "wit", "her", "."), 1)
        assert q.key == "i [MASK] wit her ."

    def test_mask_index_bounds(self):
        with pytest.raises(ValueError):
            MaskQuery(("a", "b"), 2)
        with pytest.raises(ValueError):
            MaskQuery(("a", "b"), -1)

    def test_top_k_positive(self):
        with pytest.raises(ValueError):
            MaskQuery(("a",), 0, top_k=0)


class TestFixtureBackend:
    def test_replays_stored_candidates(self, golden_backend):
        q = MaskQuery(("he", "is", "my", MASK, "."), 3)
        words = [c.word for c in golden_backend.predict(q)]
        assert words[0] == "friend"

    def test_unknown_key_returns_empty(self, golden_backend):
        q = MaskQuery(("unknown", MASK), 1)
        assert golden_backend.predict(q) == []

    def test_top_k_truncates(self, golden_backend):
        q = MaskQuery(("he", "is", "my", MASK, "."), 3, top_k=2)
        assert len(golden_backend.predict(q)) == 2

    def test_scores_descending(self, golden_backend):
        q = MaskQuery(("i", MASK, "wit", "her", "."), 1)
        scores = [c.model_score for c in golden_backend.predict(q)]
        assert scores == sorted(scores, reverse=True)

    def test_duplicate_key_rejected(self, tmp_path):
        path = tmp_path / "f.jsonl"
        path.write_text('{"key": "a [MASK]", "candidates": [["x", 1.0]]}\n'
                        '{"key": "a [MASK]", "candidates": [["y", 1.0]]}\n')
        with pytest.raises(FixtureParseError, match="duplicate key"):
            load_fixture(path)

    def test_bad_json_names_line(self, tmp_path):
        path = tmp_path / "f.jsonl"
        path.write_text('{"key": "a [MASK]", "candidates": [["x", 1.0]]}\nnot json\n')
        with pytest.raises(FixtureParseError, match="line 2"):
            load_fixture(path)

    def test_non_descending_scores_rejected(self, tmp_path):
        path = tmp_path / "f.jsonl"
        path.write_text('{"key": "a [MASK]", "candidates": [["x", 1.0], ["y", 2.0]]}\n')
        with pytest.raises(FixtureParseError, match="descending"):
            load_fixture(path)

    def test_duplicate_word_rejected(self, tmp_path):
        path = tmp_path / "f.jsonl"
        path.write_text('{"key": "a [MASK]", "candidates": [["x", 2.0], ["x", 1.0]]}\n')
        with pytest.raises(FixtureParseError, match="duplicate candidate"):
            load_fixture(path)


CORPUS = [
    "the train leaves the station now",
    "the train arrives this morning",
    "my friend leaves tomorrow",
]


class TestNgramBackend:
    def test_empty_corpus_rejected(self):
        with pytest.raises(TrainingError):
            NgramBackend.from_lines(["", "   "])

    def test_train_from_file(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("\n".join(CORPUS))
        model = train_ngram(path)
        assert "train" in model.vocabulary

    def test_vocabulary_sorted_lowercase(self):
        model = NgramBackend.from_lines(["B a", "c A"])
        assert model.vocabulary == ("a", "b", "c")

    def test_prediction_is_deterministic(self):
        model = NgramBackend.from_lines(CORPUS)
        q = MaskQuery(("the", "train", MASK, "the", "station", "now"), 2)
        first = model.predict(q)
        second = model.predict(q)
        assert first == second

    def test_likely_word_ranks_first(self):
        model = NgramBackend.from_lines(CORPUS)
        q = MaskQuery(("the", MASK, "leaves", "the", "station", "now"), 1)
        assert model.predict(q)[0].word == "train"

    def test_candidates_unique_and_bounded(self):
        model = NgramBackend.from_lines(CORPUS)
        q = MaskQuery(("the", MASK), 1, top_k=3)
        out = model.predict(q)
        assert len(out) == 3
        assert len({c.word for c in out}) == 3

    def test_scores_match_hand_computation(self):
        # One-line corpus: "a b c". With add-k smoothing (k = 0.01) the
        # left trigram for position 2 with history (a, b) and the right
        # bigram P(</s> | w) are both fully determined by the counts.
        model = NgramBackend.from_lines(["a b c"], order=3)
        q = MaskQuery(("a", "b", MASK), 2)
        scored = {c.word: c.model_score for c in model.predict(q)}
        v = 5  # <s>, </s>, a, b, c
        k = 0.01
        left_c = (1 + k) / (1 + k * v)       # count(a b c)=1, count(a b)=1
        right_c = (1 + k) / (1 + k * v)      # count(c </s>)=1, count(c)=1
        assert scored["c"] == pytest.approx(math.log(left_c) + math.log(right_c),
                                            abs=1e-12)
        left_a = (0 + k) / (1 + k * v)
        right_a = (0 + k) / (1 + k * v)      # count(a </s>)=0, count(a)=1
        assert scored["a"] == pytest.approx(math.log(left_a) + math.log(right_a),
                                            abs=1e-12)

    def test_backoff_on_unseen_history(self):
        # History (z, q) never occurs, so the left side backs off to the
        # bigram P(w | q), itself unseen, then to the unigram.
        model = NgramBackend.from_lines(["a b c"], order=3)
        q = MaskQuery(("z", "q", MASK), 2)
        scored = {c.word: c.model_score for c in model.predict(q)}
        v = 5
        k = 0.01
        total = 5  # <s> x2? no: tokens <s>,<s>,a,b,c,</s> counted once each
        # unigram counts: <s>=2, a=1, b=1, c=1, </s>=1 -> total 6
        total = 6
        uni_c = (1 + k) / (total + k * v)
        right_c = (1 + k) / (1 + k * v)
        assert scored["c"] == pytest.approx(math.log(uni_c) + math.log(right_c),
                                            abs=1e-12)


class TestRemoteBackend:
    def test_agrees_with_fixture_over_http(self, golden_backend):
        with fixture_stub(golden_backend) as stub:
            remote = RemoteBackend(stub.url)
            q = MaskQuery(("i", MASK, "wit", "her", "."), 1)
            assert remote.predict(q) == golden_backend.predict(q)

    def test_top_k_respected(self, golden_backend):
        with fixture_stub(golden_backend) as stub:
            remote = RemoteBackend(stub.url)
            q = MaskQuery(("i", MASK, "wit", "her", "."), 1, top_k=2)
            assert len(remote.predict(q)) == 2

    def test_connection_failure_raises_transport_error(self):
        remote = RemoteBackend("http://127.0.0.1:9", timeout=0.2)
        q = MaskQuery((MASK,), 0)
        with pytest.raises(TransportError) as info:
            remote.predict(q)
        err = info.value
        assert err.url.endswith("/v1/predict")
        assert err.attempts == 1
        assert err.retryable

    def test_http_error_status_recorded(self, golden_backend):
        with fixture_stub(golden_backend) as stub:
            remote = RemoteBackend(stub.url + "/missing")
            q = MaskQuery((MASK,), 0)
            with pytest.raises(TransportError) as info:
                remote.predict(q)
            assert info.value.status == 404
            assert not info.value.retryable

    def test_predict_function_delegates(self, golden_backend):
        q = MaskQuery(("i", MASK, "wit", "her", "."), 1)
        assert predict(golden_backend, q) == golden_backend.predict(q)
