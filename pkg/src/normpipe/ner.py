"""Named-entity recognition used to exempt tokens from normalization.

The default recognizer is a gazetteer lookup. When a remote recognizer is
configured it is consulted first and its indices are unioned with the
gazetteer hits; if the remote call fails the recognizer logs a warning and
degrades to gazetteer-only for that sentence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from . import lexicon as lx
from .context_model import RemoteBackend
from .errors import TransportError
from .lexicon import Lexicon

log = logging.getLogger(__name__)


@dataclass
class EntityRecognizer:
    """Maps a token list to the set of indices that name entities."""

    lexicon: Lexicon
    remote: RemoteBackend | None = None

    def recognize(self, tokens: list[str]) -> set[int]:
        indices = {
            i for i, token in enumerate(tokens)
            if lx.is_entity(self.lexicon, token)
        }
        if self.remote is not None:
            try:
                indices |= self.remote.recognize_entities(tokens)
            except TransportError as exc:
                log.warning("entity service unavailable, using gazetteer only: %s", exc)
        return indices
