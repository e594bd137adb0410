from .cache import ResponseCache
from .client import ConfigurationError, Gateway, RateLimiter, TransportError
from .mock import MOCK_ENDPOINT, mock_model
from .models import ModelSpec, RunRecord, compute_cache_key, default_auth_env

__all__ = [
    "ConfigurationError",
    "Gateway",
    "MOCK_ENDPOINT",
    "ModelSpec",
    "RateLimiter",
    "ResponseCache",
    "RunRecord",
    "TransportError",
    "compute_cache_key",
    "default_auth_env",
    "mock_model",
]
