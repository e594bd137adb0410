"""Gateway for querying QA models with caching, retry and rate limiting."""

from __future__ import annotations

import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

import requests

from .cache import ResponseCache
from .mock import run_mock
from .models import ModelSpec, RunRecord, compute_cache_key

logger = logging.getLogger(__name__)

_RETRYABLE_STATUS = {429, 500, 502, 503, 504}


class ConfigurationError(RuntimeError):
    """Missing or unusable gateway configuration (e.g. no API key)."""


class TransportError(RuntimeError):
    """Remote call failed after all retries; carries the last status."""

    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class RateLimiter:
    """Spaces out request starts process-wide; no-op when rps is None."""

    def __init__(self, requests_per_second: float | None):
        self._interval = 1.0 / requests_per_second if requests_per_second else 0.0
        self._lock = threading.Lock()
        self._next_start = 0.0

    def acquire(self) -> None:
        if self._interval <= 0:
            return
        with self._lock:
            now = time.monotonic()
            wait = self._next_start - now
            self._next_start = max(now, self._next_start) + self._interval
        if wait > 0:
            time.sleep(wait)


class Gateway:
    """ask() is safe for concurrent use; one network call per cache key."""

    def __init__(
        self,
        cache_path: str | Path,
        max_parallel: int = 4,
        requests_per_second: float | None = None,
        max_retries: int = 3,
        backoff: float = 0.5,
        timeout: float = 60.0,
    ):
        self.cache = ResponseCache(cache_path)
        self.max_parallel = max(1, int(max_parallel))
        self.limiter = RateLimiter(requests_per_second)
        self.max_retries = max_retries
        self.backoff = backoff
        self.timeout = timeout
        self.network_calls = 0
        self._inflight = 0
        self.max_inflight_seen = 0
        self._stats_lock = threading.Lock()
        self._key_locks: dict[str, threading.Lock] = {}
        self._key_locks_guard = threading.Lock()

    # ------------------------------------------------------------- internals

    def _key_lock(self, cache_key: str) -> threading.Lock:
        with self._key_locks_guard:
            lock = self._key_locks.get(cache_key)
            if lock is None:
                lock = self._key_locks[cache_key] = threading.Lock()
            return lock

    def _enter_flight(self) -> None:
        with self._stats_lock:
            self._inflight += 1
            self.max_inflight_seen = max(self.max_inflight_seen, self._inflight)

    def _leave_flight(self) -> None:
        with self._stats_lock:
            self._inflight -= 1

    def _post_once(self, spec: ModelSpec, messages: list[dict], headers: dict) -> str:
        body = {
            "model": spec.model_id,
            "messages": messages,
            "temperature": spec.temperature,
        }
        if "max_tokens" in spec.params:
            body["max_tokens"] = spec.params["max_tokens"]
        with self._stats_lock:
            self.network_calls += 1
        response = requests.post(spec.endpoint, json=body, headers=headers, timeout=self.timeout)
        if response.status_code in _RETRYABLE_STATUS:
            raise TransportError(
                f"status {response.status_code} from {spec.endpoint}", response.status_code
            )
        response.raise_for_status()
        data = response.json()
        choice = data["choices"][0]
        if "message" in choice:
            return choice["message"]["content"]
        return choice["text"]

    def _post_with_retry(self, spec: ModelSpec, messages: list[dict], headers: dict) -> str:
        last_status: int | None = None
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff * (2 ** (attempt - 1)))
            self.limiter.acquire()
            try:
                return self._post_once(spec, messages, headers)
            except TransportError as exc:
                last_status, last_error = exc.status, exc
            except requests.RequestException as exc:
                status = getattr(getattr(exc, "response", None), "status_code", None)
                if status is not None and status not in _RETRYABLE_STATUS:
                    raise TransportError(f"non-retryable status {status}", status) from exc
                last_status, last_error = status, exc
            logger.warning(
                "retrying %s (attempt %d/%d): %s",
                spec.model_id, attempt + 1, self.max_retries, last_error,
            )
        raise TransportError(
            f"{spec.model_id}: retries exhausted ({last_error})", last_status
        )

    def _execute(self, spec: ModelSpec, turns: Sequence[str]) -> str:
        if spec.is_mock:
            return run_mock(spec, list(turns))
        env_name = spec.resolved_auth_env()
        api_key = os.environ.get(env_name)
        if not api_key:
            raise ConfigurationError(
                f"{spec.model_id}: API key environment variable {env_name} is not set"
            )
        headers = {"Authorization": f"Bearer {api_key}"}
        messages: list[dict] = []
        reply = ""
        for turn in turns:  # multi-turn prompts run as one conversation
            messages.append({"role": "user", "content": turn})
            reply = self._post_with_retry(spec, messages, headers)
            messages.append({"role": "assistant", "content": reply})
        return reply

    # ------------------------------------------------------------------ api

    def ask(self, spec: ModelSpec, turns: Sequence[str]) -> RunRecord:
        """Answer one prompt sequence, from cache when possible."""
        turns = [str(t) for t in turns]
        if not turns or any(not t for t in turns):
            raise ValueError("turns must be a non-empty list of non-empty prompts")
        cache_key = compute_cache_key(spec.model_id, spec.params, turns)
        cached = self.cache.get(cache_key)
        if cached is not None:
            return cached
        with self._key_lock(cache_key):  # one network call per key, ever
            cached = self.cache.get(cache_key)
            if cached is not None:
                return cached
            self._enter_flight()
            try:
                output = self._execute(spec, turns)
            finally:
                self._leave_flight()
            return self.cache.put(RunRecord.create(spec, turns, output))

    def ask_many(
        self, spec: ModelSpec, turn_lists: Sequence[Sequence[str]]
    ) -> list[RunRecord]:
        """Answer many prompt sequences with bounded parallelism, in order."""
        if not turn_lists:
            return []
        with ThreadPoolExecutor(max_workers=self.max_parallel) as pool:
            return list(pool.map(lambda turns: self.ask(spec, turns), turn_lists))
