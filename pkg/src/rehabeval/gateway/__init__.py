"""Completion dispatch: live endpoint client, response cache and offline oracle."""

from .cache import CacheStats, NullCache, ResponseCache
from .client import (
    HttpCompletionClient,
    ModelEndpointConfig,
    TransportFailure,
    complete,
    http_transport,
)
from .mock import (
    MOCK_MODEL_NAME,
    MockOracle,
    MockOracleClient,
    mock_oracle_complete,
    oracle_decide_direct,
    parse_final_block,
    serialized_view,
)
from .records import CompletionRecord, TransportStatus, prompt_hash

__all__ = [
    "CacheStats",
    "CompletionRecord",
    "HttpCompletionClient",
    "MOCK_MODEL_NAME",
    "MockOracle",
    "MockOracleClient",
    "ModelEndpointConfig",
    "NullCache",
    "ResponseCache",
    "TransportFailure",
    "TransportStatus",
    "complete",
    "http_transport",
    "mock_oracle_complete",
    "oracle_decide_direct",
    "parse_final_block",
    "prompt_hash",
    "serialized_view",
]
