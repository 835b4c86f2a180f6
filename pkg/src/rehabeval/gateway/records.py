"""Completion records and the content hash that keys the cache."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum


class TransportStatus(Enum):
    OK = "ok"
    RETRIED = "retried"
    FAILED = "failed"


def prompt_hash(rendered_text: str, model_name: str, temperature: float) -> str:
    """Deterministic content hash of (prompt text, model, temperature)."""
    canonical = json.dumps(
        {"model": model_name, "temperature": float(temperature), "text": rendered_text},
        sort_keys=True,
        ensure_ascii=True,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CompletionRecord:
    prompt_hash: str
    response_text: str
    latency_ms: float
    timestamp: str
    transport_status: TransportStatus

    def to_dict(self) -> dict:
        return {
            "prompt_hash": self.prompt_hash,
            "response_text": self.response_text,
            "latency_ms": self.latency_ms,
            "timestamp": self.timestamp,
            "transport_status": self.transport_status.value,
        }

    @classmethod
    def from_dict(cls, record: dict) -> "CompletionRecord":
        return cls(
            prompt_hash=record["prompt_hash"],
            response_text=record["response_text"],
            latency_ms=float(record["latency_ms"]),
            timestamp=record["timestamp"],
            transport_status=TransportStatus(record["transport_status"]),
        )
