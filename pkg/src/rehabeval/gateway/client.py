"""Chat-completion dispatch with retry, backoff and response caching."""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timezone

from ..errors import EndpointError, TransportError
from ..prompting.render import PromptBundle
from .cache import NullCache
from .records import CompletionRecord, TransportStatus, prompt_hash

logger = logging.getLogger(__name__)

RETRYABLE_STATUSES = frozenset({429, 500, 502, 503, 504})
BACKOFF_BASE_S = 0.5


@dataclass(frozen=True)
class ModelEndpointConfig:
    """Where and how to reach a chat-completion endpoint.

    The API key is read from the environment variable named by
    ``api_key_env_var`` at request time and never stored; when the variable is
    unset the request goes out without an Authorization header (keyless local
    endpoints).
    """

    base_url: str
    model_name: str
    api_key_env_var: str = "LLM_API_KEY"
    temperature: float = 0.0
    max_output_tokens: int = 1024
    request_timeout_s: float = 60.0
    max_retries: int = 3

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")
        if self.request_timeout_s <= 0:
            raise ValueError("request_timeout_s must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


class TransportFailure(Exception):
    """Raised by transports on connection-level failures (retryable)."""


def http_transport(payload: dict, config: ModelEndpointConfig) -> tuple[int, str]:
    """Default live transport: POST {base_url}/chat/completions."""
    import requests

    headers = {"Content-Type": "application/json"}
    key = os.environ.get(config.api_key_env_var, "")
    if key:
        headers["Authorization"] = f"Bearer {key}"
    url = config.base_url.rstrip("/") + "/chat/completions"
    try:
        response = requests.post(
            url, json=payload, headers=headers, timeout=config.request_timeout_s
        )
    except requests.RequestException as exc:
        raise TransportFailure(str(exc)) from exc
    return response.status_code, response.text


def _extract_content(body_text: str) -> str:
    try:
        body = json.loads(body_text)
        return body["choices"][0]["message"]["content"]
    except (json.JSONDecodeError, KeyError, IndexError, TypeError) as exc:
        raise EndpointError(
            f"response body not in chat-completion shape: {exc}",
            body_excerpt=body_text[:200],
        ) from exc


def _request_completion(
    bundle: PromptBundle,
    config: ModelEndpointConfig,
    content_hash: str,
    transport,
    sleep,
) -> CompletionRecord:
    """One completion over the wire, with retry and backoff; no cache involved."""
    payload = {
        "model": config.model_name,
        "messages": [{"role": "user", "content": bundle.rendered_text}],
        "temperature": config.temperature,
        "max_tokens": config.max_output_tokens,
    }
    attempts = config.max_retries + 1
    last_failure = "no attempt made"
    started = time.monotonic()
    for attempt in range(attempts):
        if attempt > 0:
            sleep(BACKOFF_BASE_S * 2 ** (attempt - 1))
        try:
            status, body_text = transport(payload, config)
        except TransportFailure as exc:
            last_failure = f"transport failure: {exc}"
            logger.warning("attempt %d/%d failed: %s", attempt + 1, attempts, last_failure)
            continue
        if status == 200:
            return CompletionRecord(
                prompt_hash=content_hash,
                response_text=_extract_content(body_text),
                latency_ms=(time.monotonic() - started) * 1000.0,
                timestamp=datetime.now(timezone.utc).isoformat(),
                transport_status=TransportStatus.OK if attempt == 0 else TransportStatus.RETRIED,
            )
        if status in RETRYABLE_STATUSES:
            last_failure = f"HTTP {status}"
            logger.warning("attempt %d/%d failed: %s", attempt + 1, attempts, last_failure)
            continue
        raise EndpointError(
            f"endpoint returned HTTP {status}", status=status, body_excerpt=body_text[:200]
        )
    raise TransportError(f"gave up after {attempts} attempts ({last_failure})")


def complete(
    bundle: PromptBundle,
    config: ModelEndpointConfig,
    cache=None,
    transport=None,
    sleep=time.sleep,
) -> CompletionRecord:
    """Complete one prompt, serving from cache when the hash is already known.

    Transient failures (connection errors, HTTP 429/5xx) are retried up to
    ``config.max_retries`` times with exponential backoff; other HTTP failures
    raise EndpointError immediately.
    """
    cache = cache if cache is not None else NullCache()
    transport = transport or http_transport
    content_hash = prompt_hash(bundle.rendered_text, config.model_name, config.temperature)
    cached = cache.get(content_hash)
    if cached is not None:
        return cached
    record = _request_completion(bundle, config, content_hash, transport, sleep)
    cache.put(record)
    return record


class HttpCompletionClient:
    """Stateful wrapper binding config, cache and transport for repeated calls."""

    def __init__(self, config: ModelEndpointConfig, cache=None, transport=None, sleep=time.sleep):
        self.config = config
        self.cache = cache if cache is not None else NullCache()
        self.transport = transport
        self.sleep = sleep
        self.completions_performed = 0
        self._count_lock = threading.Lock()

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_count_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._count_lock = threading.Lock()

    @property
    def model_name(self) -> str:
        return self.config.model_name

    @property
    def temperature(self) -> float:
        return self.config.temperature

    def complete(self, bundle: PromptBundle) -> CompletionRecord:
        content_hash = prompt_hash(
            bundle.rendered_text, self.config.model_name, self.config.temperature
        )
        cached = self.cache.get(content_hash)
        if cached is not None:
            return cached
        record = _request_completion(
            bundle, self.config, content_hash, self.transport or http_transport, self.sleep
        )
        self.cache.put(record)
        with self._count_lock:
            self.completions_performed += 1
        return record
