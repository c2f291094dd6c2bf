"""Command line entry point for the prediction sidecar."""

from __future__ import annotations

import sys
from pathlib import Path

import click
import uvicorn

from .service import WholeWordPredictor, create_app


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8601, show_default=True)
@click.option("--model", "model_id", default="bert-base-uncased",
              show_default=True,
              help="Model identifier or local directory with saved weights.")
@click.option("--device", default="cpu", show_default=True,
              help="Torch device for inference, e.g. cpu or cuda.")
@click.option("--ner-gazetteer", "gazetteer_path",
              type=click.Path(dir_okay=False), default=None,
              help="Name list (one per line) enabling /v1/ner.")
def serve(host: str, port: int, model_id: str, device: str,
          gazetteer_path: str | None) -> None:
    """Serve whole-word masked-LM predictions over HTTP."""
    try:
        predictor = WholeWordPredictor.load(model_id, device)
    except Exception as exc:
        click.echo(f"error: cannot load model {model_id!r}: {exc}", err=True)
        sys.exit(1)
    entity_words = None
    if gazetteer_path is not None:
        try:
            lines = Path(gazetteer_path).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            click.echo(f"error: cannot read gazetteer: {exc}", err=True)
            sys.exit(1)
        entity_words = frozenset(
            line.strip().lower() for line in lines if line.strip())
    app = create_app(predictor, entity_words)
    uvicorn.run(app, host=host, port=port, log_level="info")
