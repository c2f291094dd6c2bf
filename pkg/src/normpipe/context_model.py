"""Masked-token prediction backends.

A context model answers one question: given a sentence with one position
masked, what words could fill it, ranked best first? Three backends
implement the same contract:

* FixtureBackend replays stored candidate lists keyed by the masked
  sentence (deterministic golden tests).
* NgramBackend is a small backoff n-gram model trained on a plain-text
  corpus (offline end-to-end runs without model weights).
* RemoteBackend speaks the HTTP protocol of the prediction sidecar.
"""

from __future__ import annotations

import json
import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import requests

from .errors import FixtureParseError, TrainingError, TransportError
from .scoring import Candidate

MASK = "[MASK]"

_BOS = "<s>"
_EOS = "</s>"


@dataclass(frozen=True)
class MaskQuery:
    """A sentence with one position replaced by the mask token."""

    tokens: tuple[str, ...]
    mask_index: int
    top_k: int = 5000

    def __post_init__(self) -> None:
        if not 0 <= self.mask_index < len(self.tokens):
            raise ValueError(f"mask_index {self.mask_index} outside token range")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")

    @property
    def key(self) -> str:
        return " ".join(self.tokens)


class ContextModel(Protocol):
    def predict(self, query: MaskQuery) -> list[Candidate]: ...


def predict(backend: ContextModel, query: MaskQuery) -> list[Candidate]:
    """Ranked candidates for the masked position, at most query.top_k."""
    return backend.predict(query)


@dataclass(frozen=True)
class FixtureBackend:
    """Replays candidate lists stored per masked-sentence key."""

    entries: dict[str, tuple[Candidate, ...]]

    def predict(self, query: MaskQuery) -> list[Candidate]:
        stored = self.entries.get(query.key, ())
        return list(stored[: query.top_k])


def load_fixture(path: str | Path) -> FixtureBackend:
    """Parse a JSON-lines fixture file.

    Each line holds {"key": "<masked sentence>", "candidates":
    [["word", score], ...]} with candidates already sorted descending and
    words unique; violations are parse errors naming the line.
    """
    entries: dict[str, tuple[Candidate, ...]] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            key = obj["key"]
            pairs = [(str(w), float(s)) for w, s in obj["candidates"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FixtureParseError(f"{path}, line {lineno}: {exc}") from exc
        if key in entries:
            raise FixtureParseError(f"{path}, line {lineno}: duplicate key {key!r}")
        words = [w for w, _ in pairs]
        if len(set(words)) != len(words):
            raise FixtureParseError(f"{path}, line {lineno}: duplicate candidate word")
        scores = [s for _, s in pairs]
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise FixtureParseError(f"{path}, line {lineno}: scores not descending")
        entries[key] = tuple(Candidate(w, s) for w, s in pairs)
    return FixtureBackend(entries)


@dataclass
class NgramBackend:
    """Backoff n-gram model with add-k smoothing.

    A candidate w for masked position i is scored by the sum of the
    left-context log-probability (trigram over the two preceding tokens,
    backing off to bigram then unigram when a history is unseen) and the
    right-context log-probability of the following token given w. The
    candidate pool is the training vocabulary.
    """

    order: int
    k: float = 0.01
    _unigrams: Counter = field(default_factory=Counter)
    _bigrams: Counter = field(default_factory=Counter)
    _trigrams: Counter = field(default_factory=Counter)
    _total: int = 0
    _vocab: tuple[str, ...] = ()

    @classmethod
    def from_lines(cls, lines: list[str], order: int = 3, k: float = 0.01) -> NgramBackend:
        if order not in (2, 3):
            raise ValueError("order must be 2 or 3")
        model = cls(order=order, k=k)
        for line in lines:
            words = line.lower().split()
            if not words:
                continue
            padded = [_BOS, _BOS, *words, _EOS]
            for i, w in enumerate(padded):
                model._unigrams[w] += 1
                if i >= 1:
                    model._bigrams[padded[i - 1], w] += 1
                if i >= 2:
                    model._trigrams[padded[i - 2], padded[i - 1], w] += 1
        if not model._unigrams:
            raise TrainingError("corpus contains no tokens")
        model._total = sum(model._unigrams.values())
        model._vocab = tuple(sorted(
            w for w in model._unigrams if w not in (_BOS, _EOS)
        ))
        return model

    @property
    def vocabulary(self) -> tuple[str, ...]:
        return self._vocab

    def _v(self) -> int:
        return len(self._unigrams)

    def _p_unigram(self, w: str) -> float:
        return (self._unigrams[w] + self.k) / (self._total + self.k * self._v())

    def _p_bigram(self, h: str, w: str) -> float:
        denom = self._unigrams[h]
        if denom == 0:
            return self._p_unigram(w)
        return (self._bigrams[h, w] + self.k) / (denom + self.k * self._v())

    def _p_trigram(self, h2: str, h1: str, w: str) -> float:
        denom = self._bigrams[h2, h1]
        if denom == 0:
            return self._p_bigram(h1, w)
        return (self._trigrams[h2, h1, w] + self.k) / (denom + self.k * self._v())

    def predict(self, query: MaskQuery) -> list[Candidate]:
        i = query.mask_index
        h1 = query.tokens[i - 1] if i >= 1 else _BOS
        h2 = query.tokens[i - 2] if i >= 2 else _BOS
        nxt = query.tokens[i + 1] if i + 1 < len(query.tokens) else _EOS
        scored = []
        for w in self._vocab:
            if self.order == 3:
                left = self._p_trigram(h2, h1, w)
            else:
                left = self._p_bigram(h1, w)
            right = self._p_bigram(w, nxt)
            scored.append((math.log(left) + math.log(right), w))
        scored.sort(key=lambda pair: (-pair[0], pair[1]))
        return [Candidate(w, s) for s, w in scored[: query.top_k]]


def train_ngram(corpus_path: str | Path, order: int = 3) -> NgramBackend:
    """Train an n-gram backend on a one-sentence-per-line text file."""
    lines = Path(corpus_path).read_text(encoding="utf-8").splitlines()
    return NgramBackend.from_lines(lines, order=order)


class RemoteBackend:
    """HTTP client for the /v1/predict protocol.

    In-flight requests are bounded by a semaphore (default 4); failures
    raise TransportError carrying the URL, attempt count, and status so
    callers can decide whether to retry.
    """

    def __init__(self, base_url: str, timeout: float = 10.0,
                 max_in_flight: int = 4, attempts: int = 1) -> None:
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.attempts = attempts
        self._slots = threading.Semaphore(max_in_flight)
        self._session = requests.Session()

    def predict(self, query: MaskQuery) -> list[Candidate]:
        payload = {
            "tokens": list(query.tokens),
            "mask_index": query.mask_index,
            "top_k": query.top_k,
        }
        url = f"{self.base_url}/v1/predict"
        last_status: int | None = None
        for attempt in range(1, self.attempts + 1):
            try:
                with self._slots:
                    response = self._session.post(url, json=payload, timeout=self.timeout)
            except requests.RequestException as exc:
                if attempt == self.attempts:
                    raise TransportError(
                        f"predict request failed: {exc}", url=url,
                        attempts=attempt, retryable=True,
                    ) from exc
                continue
            if response.status_code != 200:
                last_status = response.status_code
                if 400 <= response.status_code < 500 or attempt == self.attempts:
                    raise TransportError(
                        f"predict returned HTTP {response.status_code}", url=url,
                        attempts=attempt, status=last_status,
                        retryable=response.status_code >= 500,
                    )
                continue
            data = response.json()
            return [
                Candidate(str(c["word"]), float(c["score"]))
                for c in data["candidates"]
            ][: query.top_k]
        raise TransportError("unreachable", url=url, attempts=self.attempts,
                             status=last_status)

    def recognize_entities(self, tokens: list[str]) -> set[int]:
        """POST /v1/ner; raises TransportError on any failure."""
        url = f"{self.base_url}/v1/ner"
        try:
            with self._slots:
                response = self._session.post(url, json={"tokens": tokens},
                                              timeout=self.timeout)
        except requests.RequestException as exc:
            raise TransportError(f"ner request failed: {exc}", url=url,
                                 attempts=1, retryable=True) from exc
        if response.status_code != 200:
            raise TransportError(f"ner returned HTTP {response.status_code}",
                                 url=url, attempts=1, status=response.status_code,
                                 retryable=response.status_code >= 500)
        return {int(i) for i in response.json()["entity_indices"]}
