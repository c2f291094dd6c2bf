"""Whole-word masked-LM predictions behind the normalization wire protocol.

The service answers POST /v1/predict with candidates for one masked
position, POST /v1/ner with gazetteer-flagged entity indices when a
name list was configured, and GET /v1/health with the model identifier.
Malformed requests get HTTP 400 with a JSON error body.
"""

from __future__ import annotations

import threading

import torch
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from transformers import AutoModelForMaskedLM, AutoTokenizer


class PredictRequest(BaseModel):
    tokens: list[str]
    mask_index: int
    top_k: int = 5000


class NerRequest(BaseModel):
    tokens: list[str]


class WholeWordPredictor:
    """One-forward-pass candidate lists from a masked language model.

    Candidates are the vocabulary items that stand alone as lowercase
    alphabetic words, so subword continuations, digits, and symbols
    never appear in a response. Words needing several subword pieces
    are simply absent from that universe. The forward pass runs under a
    lock, so concurrent requests are safe and, with a fixed model,
    identical requests produce identical responses.
    """

    def __init__(self, model_id: str, tokenizer, model, device: str) -> None:
        self.model_id = model_id
        self.tokenizer = tokenizer
        self.model = model
        self.device = device
        self._lock = threading.Lock()
        items = sorted(
            (piece_id, word)
            for word, piece_id in tokenizer.get_vocab().items()
            if word.isalpha() and word == word.lower())
        self._candidate_ids = torch.tensor([i for i, _ in items],
                                           device=device)
        self._candidate_words = [word for _, word in items]

    @classmethod
    def load(cls, model_id: str, device: str = "cpu") -> WholeWordPredictor:
        """Load tokenizer and weights; raises on unresolvable models."""
        tokenizer = AutoTokenizer.from_pretrained(model_id)
        model = AutoModelForMaskedLM.from_pretrained(model_id)
        model.to(device)
        model.eval()
        return cls(model_id, tokenizer, model, device)

    def _encode(self, tokens: list[str], mask_index: int) -> tuple[list[int], int]:
        """Piece ids for the lowercased sentence plus the mask position.

        Tokens are encoded one by one so the masked position is exact
        even when context words split into several pieces or vanish
        under tokenizer normalization (those become [UNK]).
        """
        piece_ids = [self.tokenizer.cls_token_id]
        position = -1
        for i, token in enumerate(tokens):
            if i == mask_index:
                position = len(piece_ids)
                piece_ids.append(self.tokenizer.mask_token_id)
                continue
            encoded = self.tokenizer.encode(token.lower(),
                                            add_special_tokens=False)
            piece_ids.extend(encoded or [self.tokenizer.unk_token_id])
        piece_ids.append(self.tokenizer.sep_token_id)
        return piece_ids, position

    def predict(self, tokens: list[str], mask_index: int,
                top_k: int = 5000) -> list[tuple[str, float]]:
        """(word, score) pairs sorted by score descending, at most top_k."""
        if not 0 <= mask_index < len(tokens):
            raise ValueError(f"mask_index {mask_index} outside token range")
        if top_k < 1:
            raise ValueError("top_k must be >= 1")
        piece_ids, position = self._encode(tokens, mask_index)
        batch = torch.tensor([piece_ids], device=self.device)
        with self._lock, torch.no_grad():
            logits = self.model(input_ids=batch).logits[0, position]
            scores = logits[self._candidate_ids].tolist()
        ranked = sorted(zip(self._candidate_words, scores),
                        key=lambda pair: (-pair[1], pair[0]))
        return ranked[:top_k]


def create_app(predictor: WholeWordPredictor,
               entity_words: frozenset[str] | None = None) -> FastAPI:
    """The HTTP application; /v1/ner answers 503 unless a gazetteer is given."""
    app = FastAPI(title="lm-predictor", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def invalid_request(request: Request,
                              exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400,
                            content={"error": "invalid request body"})

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok", "model": predictor.model_id}

    @app.post("/v1/predict")
    def predict(request: PredictRequest):
        try:
            ranked = predictor.predict(request.tokens, request.mask_index,
                                       request.top_k)
        except ValueError as exc:
            return JSONResponse(status_code=400, content={"error": str(exc)})
        return {"candidates": [{"word": word, "score": score}
                               for word, score in ranked]}

    @app.post("/v1/ner")
    def ner(request: NerRequest):
        if entity_words is None:
            return JSONResponse(status_code=503,
                                content={"error": "ner not configured"})
        indices = [i for i, token in enumerate(request.tokens)
                   if token.lower() in entity_words]
        return {"entity_indices": indices}

    return app
