"""Fixtures: a tiny saved masked LM and a live server wrapping it.

The wire-contract suite shared with the stub server lives in the main
package's test tree; its directory is put on sys.path here so the
sidecar runs the exact same protocol checks.
"""

from __future__ import annotations

import json
import sys
import threading
import time
from pathlib import Path

import pytest
import torch
import uvicorn
from transformers import BertConfig, BertForMaskedLM

sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "tests"))

from lm_predictor.service import WholeWordPredictor, create_app

# Exercises every candidate-filter rule: special tokens, subword
# continuations, digits, and punctuation must never be predicted.
TEST_VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "train", "leaves", "in", "minutes", "hours", "days",
    "i", "m", "am", "wit", "with", "her", "he", "is", "my",
    "friend", "walk", "jack", "5", ".", ",", "!", "##ing", "##s", "##ed",
]
STANDALONE_WORDS = sorted(
    word for word in TEST_VOCAB if word.isalpha() and word == word.lower())


@pytest.fixture(scope="session")
def model_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("tiny-mlm")
    (directory / "vocab.txt").write_text("\n".join(TEST_VOCAB) + "\n",
                                         encoding="utf-8")
    (directory / "tokenizer_config.json").write_text(json.dumps(
        {"tokenizer_class": "BertTokenizer", "do_lower_case": True}),
        encoding="utf-8")
    torch.manual_seed(20601)
    config = BertConfig(vocab_size=len(TEST_VOCAB), hidden_size=32,
                        num_hidden_layers=2, num_attention_heads=2,
                        intermediate_size=64, max_position_embeddings=64)
    BertForMaskedLM(config).save_pretrained(directory)
    return directory


@pytest.fixture(scope="session")
def predictor(model_dir):
    return WholeWordPredictor.load(str(model_dir), "cpu")


@pytest.fixture(scope="session")
def live_server(predictor):
    app = create_app(predictor, entity_words=frozenset({"jack", "london"}))
    config = uvicorn.Config(app, host="127.0.0.1", port=0,
                            log_level="warning")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 15
    while not server.started:
        if time.monotonic() > deadline:
            raise RuntimeError("test server did not start")
        time.sleep(0.02)
    port = server.servers[0].sockets[0].getsockname()[1]
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


@pytest.fixture()
def server_url(live_server):
    return live_server
