"""coldprobe: dump a model's first-token probability distribution with no prompt.

The probe runs one forward pass on a minimal context (the BOS token by
default, or a genuinely empty context where the runtime supports it),
softmaxes the first-position logits at the requested temperature, and writes
a coldstart-dump/1 JSON file for downstream analysis tooling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

__version__ = "0.1.0"

DUMP_SCHEMA = "coldstart-dump/1"

CONTEXT_MODES = ("bos_only", "empty")


class ProbeError(Exception):
    """Base class for probe failures."""


class ModelLoadFailure(ProbeError):
    """The runtime could not load the requested model."""


class NoBosToken(ProbeError):
    """bos_only mode needs a model with a beginning-of-sequence token."""


class EmptyContextUnsupported(ProbeError):
    """The runtime rejected a zero-length input."""


class WriteFailure(ProbeError):
    """The dump file could not be written."""


@dataclass(frozen=True)
class ProbeConfig:
    model: str
    context_mode: str = "bos_only"
    top_k: int | None = None
    temperature: float = 1.0
    out: Path = Path("coldstart.json")

    def __post_init__(self):
        if self.context_mode not in CONTEXT_MODES:
            raise ValueError(f"context_mode must be one of {CONTEXT_MODES}")
        if self.top_k is not None and self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.temperature <= 0:
            raise ValueError("temperature must be > 0")


def _first_position_logits(model_source: str, context_mode: str):
    import torch
    from transformers import AutoModelForCausalLM

    try:
        model = AutoModelForCausalLM.from_pretrained(model_source)
    except Exception as exc:
        raise ModelLoadFailure(f"could not load {model_source!r}: {exc}") from exc
    model.eval()

    if context_mode == "bos_only":
        bos = getattr(model.config, "bos_token_id", None)
        if bos is None and model.generation_config is not None:
            bos = model.generation_config.bos_token_id
        if bos is None:
            raise NoBosToken(f"{model_source!r} defines no bos_token_id")
        input_ids = torch.tensor([[bos]], dtype=torch.long)
    else:
        input_ids = torch.zeros((1, 0), dtype=torch.long)

    try:
        with torch.no_grad():
            logits = model(input_ids=input_ids).logits
    except Exception as exc:
        if context_mode == "empty":
            raise EmptyContextUnsupported(
                f"{model_source!r} cannot run a zero-length context; "
                "use bos_only mode"
            ) from exc
        raise
    if logits.shape[1] == 0:
        raise EmptyContextUnsupported(
            f"{model_source!r} produced no logits for the empty context; "
            "use bos_only mode"
        )
    return logits[0, -1, :].double().numpy()


def probe_model(config: ProbeConfig) -> dict:
    """Run the probe and write the dump file; returns a small summary dict."""
    import numpy as np

    logits = _first_position_logits(config.model, config.context_mode)
    scaled = logits / config.temperature
    scaled -= scaled.max()
    weights = np.exp(scaled)
    probs = weights / weights.sum()

    vocab_size = int(probs.shape[0])
    if config.top_k is not None and config.top_k < vocab_size:
        keep = np.argpartition(probs, -config.top_k)[-config.top_k:]
        ids = np.sort(keep)
        dense = False
    else:
        ids = np.arange(vocab_size)
        dense = True

    entries = [
        {"id": int(tid), "p": f"{probs[tid]:.12g}"} for tid in ids
    ]
    doc = {
        "schema": DUMP_SCHEMA,
        "model_id": config.model,
        "vocab_size": vocab_size,
        "temperature": config.temperature,
        "dense": dense,
        "context_mode": config.context_mode,
        "entries": entries,
    }
    try:
        Path(config.out).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    except OSError as exc:
        raise WriteFailure(f"could not write {config.out}: {exc}") from exc
    return {
        "out": str(config.out),
        "vocab_size": vocab_size,
        "entries": len(entries),
        "dense": dense,
        "mass": float(sum(probs[tid] for tid in ids)),
    }
