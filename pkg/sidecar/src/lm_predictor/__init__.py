"""HTTP sidecar serving whole-word masked-LM predictions."""

from __future__ import annotations

from .service import NerRequest, PredictRequest, WholeWordPredictor, create_app

__version__ = "0.1.0"

__all__ = ["NerRequest", "PredictRequest", "WholeWordPredictor", "create_app"]
