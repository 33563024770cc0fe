"""Completion client that regenerates code from docstrings.

Each request renders a fixed instruction template around one docstring.
Responses are cached on disk, one JSON file per request hash, so a run
can be replayed offline from the cache alone.
"""

from __future__ import annotations

import ast
import hashlib
import json
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import requests

from . import pyparse

log = logging.getLogger(__name__)

ENDPOINT_ENV = "STYLODETECT_API_URL"
API_KEY_ENV = "STYLODETECT_API_KEY"
DEFAULT_MAX_TOKENS = 1024
VALID_KINDS = ("function", "class")

PROMPT_TEMPLATE = (
    "Assume that you're an expert Python programmer. Please generate a "
    "Python {marker} from the given docstring. Do not explain the code."
    "\n\n{docstring}"
)

# "failed" marks a per-item transport error surfaced by batch_generate.
STATUSES = ("ok", "refused", "empty", "parse-failed", "failed")

_REFUSAL_MARKERS = (
    "i cannot",
    "i can't",
    "i'm sorry",
    "i am sorry",
    "i apologize",
    "sorry,",
)


class EmptyDocstring(ValueError):
    """Raised when a prompt is requested for an empty docstring."""


class TransportFailure(RuntimeError):
    """Raised when a completion call cannot be satisfied."""


class CacheCorruption(RuntimeError):
    """Raised when a cache entry exists but cannot be decoded."""


def build_prompt(kind: str, docstring: str) -> str:
    """Render the instruction template for one docstring."""
    if kind not in VALID_KINDS:
        raise ValueError(f"unknown kind: {kind!r}")
    if not docstring.strip():
        raise EmptyDocstring("docstring must be non-empty")
    marker = "FUNCTION" if kind == "function" else "CLASS"
    return PROMPT_TEMPLATE.format(marker=marker, docstring=docstring)


def request_hash(model: str, prompt: str) -> str:
    """Stable cache key for one (model, prompt) pair."""
    return hashlib.sha256(f"{model}\n{prompt}".encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class GenerationRequest:
    """One docstring-to-code request with its rendered prompt."""

    kind: str
    docstring: str
    model: str
    max_tokens: int = DEFAULT_MAX_TOKENS
    prompt: str = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "prompt", build_prompt(self.kind, self.docstring))

    @property
    def hash(self) -> str:
        return request_hash(self.model, self.prompt)


@dataclass(frozen=True)
class GenerationRecord:
    """Outcome of one completion call, as stored in the cache."""

    request_hash: str
    raw_response: str
    code: str
    status: str
    timestamp: str


_RECORD_KEYS = ("request_hash", "raw_response", "code", "status", "timestamp")


def strip_fences(text: str) -> str:
    """Cut the body out of the first markdown code fence, if any.

    Unfenced text passes through unchanged, and the result never
    contains a fence line, so a second pass is a no-op.
    """
    lines = text.split("\n")
    start = None
    for i, line in enumerate(lines):
        if line.lstrip().startswith("```"):
            start = i
            break
    if start is None:
        return text
    for j in range(start + 1, len(lines)):
        if lines[j].lstrip().startswith("```"):
            return "\n".join(lines[start + 1 : j])
    return "\n".join(lines[start + 1 :])


def _parses(code: str) -> bool:
    """True when the code is valid Python and survives entity analysis."""
    src = code if code.endswith("\n") else code + "\n"
    try:
        ast.parse(src)
        pyparse.analyze(src)
    except (SyntaxError, ValueError):
        return False
    return True


def classify_response(raw: str) -> tuple[str, str]:
    """Extract code from a raw reply and judge the outcome.

    Returns (code, status) where status is one of ok, refused, empty,
    or parse-failed.  Code that fails to parse is kept for inspection;
    refusals carry no code.
    """
    if not raw.strip():
        return "", "empty"
    code = strip_fences(raw).strip("\n")
    if code.strip() and _parses(code):
        return code, "ok"
    lowered = raw.lower()
    if any(marker in lowered for marker in _REFUSAL_MARKERS):
        return "", "refused"
    return code, "parse-failed"


def _cache_path(cache_dir: Path, digest: str) -> Path:
    return Path(cache_dir) / f"{digest}.json"


def _read_cached(path: Path) -> GenerationRecord:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise CacheCorruption(f"unreadable cache entry {path}: {exc}") from exc
    if not isinstance(payload, dict) or any(key not in payload for key in _RECORD_KEYS):
        raise CacheCorruption(f"cache entry {path} is missing record fields")
    return GenerationRecord(**{key: payload[key] for key in _RECORD_KEYS})


def _write_cache(path: Path, record: GenerationRecord) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {key: getattr(record, key) for key in _RECORD_KEYS}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    tmp.replace(path)


def _reply_text(payload: object) -> str:
    """Pull the reply text out of either common completion shape."""
    try:
        if isinstance(payload, dict):
            if payload.get("choices"):
                return payload["choices"][0]["message"]["content"]
            if payload.get("content"):
                return payload["content"][0]["text"]
    except (TypeError, KeyError, IndexError) as exc:
        raise ValueError(f"unrecognized completion payload: {exc}") from exc
    raise ValueError("completion payload has neither choices nor content")


class HttpTransport:
    """JSON-over-HTTP completion backend with retries.

    The endpoint and credential default to the STYLODETECT_API_URL and
    STYLODETECT_API_KEY environment variables.  The wire format is the
    minimal chat-completion shape {model, messages, max_tokens}, which
    keeps provider backends interchangeable.
    """

    def __init__(
        self,
        url: str | None = None,
        api_key: str | None = None,
        retries: int = 3,
        backoff: float = 0.5,
        timeout: float = 60.0,
    ) -> None:
        self.url = url if url is not None else os.environ.get(ENDPOINT_ENV, "")
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV, "")
        self.retries = int(retries)
        self.backoff = float(backoff)
        self.timeout = float(timeout)
        if not self.url:
            raise TransportFailure(f"no endpoint configured; set {ENDPOINT_ENV}")

    def complete(self, request: GenerationRequest) -> str:
        body = {
            "model": request.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "max_tokens": request.max_tokens,
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last: Exception | None = None
        for attempt in range(self.retries + 1):
            if attempt and self.backoff > 0:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                resp = requests.post(self.url, json=body, headers=headers, timeout=self.timeout)
                resp.raise_for_status()
                return _reply_text(resp.json())
            except (requests.RequestException, ValueError) as exc:
                last = exc
                log.warning("completion call failed (attempt %d): %s", attempt + 1, exc)
        raise TransportFailure(
            f"completion failed after {self.retries + 1} attempts: {last}"
        ) from last


class StubTransport:
    """Canned transport for tests; maps prompts to fixed replies.

    A reply may be an exception instance, which is raised instead of
    returned.  Calls are counted so tests can assert cache behavior.
    """

    def __init__(self, replies: dict[str, object] | None = None, default: object = None) -> None:
        self.replies = dict(replies or {})
        self.default = default
        self.calls = 0

    def complete(self, request: GenerationRequest) -> str:
        self.calls += 1
        reply = self.replies.get(request.prompt, self.default)
        if reply is None:
            raise TransportFailure(f"no stubbed reply for this {request.kind} prompt")
        if isinstance(reply, Exception):
            raise reply
        return str(reply)


class GenerationClient:
    """Cache-first front end over a completion transport.

    Every result is cached under its request hash.  Without a transport
    the client replays the cache alone and treats a miss as a failure,
    which makes offline runs a pure function of the cache contents.
    """

    def __init__(self, cache_dir: str | Path, transport: object | None = None) -> None:
        self.cache_dir = Path(cache_dir)
        self.transport = transport
        self._lock = threading.Lock()

    def generate(self, request: GenerationRequest) -> GenerationRecord:
        digest = request.hash
        path = _cache_path(self.cache_dir, digest)
        if path.exists():
            return _read_cached(path)
        if self.transport is None:
            raise TransportFailure(f"replay cache has no entry for {digest}")
        raw = self.transport.complete(request)
        code, status = classify_response(raw)
        stamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        record = GenerationRecord(digest, raw, code, status, stamp)
        with self._lock:
            if path.exists():
                return _read_cached(path)
            _write_cache(path, record)
        return record


def generate(request: GenerationRequest, client: GenerationClient) -> GenerationRecord:
    """Run one request through a configured client."""
    return client.generate(request)


def batch_generate(
    reqs: list[GenerationRequest], client: GenerationClient, limit: int = 4
) -> list[GenerationRecord]:
    """Generate every request with at most ``limit`` calls in flight.

    Output order matches input order.  Requests with identical hashes
    share one call.  A failure is isolated to its own items, which get
    a record with status "failed".
    """
    if limit < 1:
        raise ValueError("concurrency limit must be at least 1")
    reqs = list(reqs)
    groups: dict[str, list[int]] = {}
    for i, req in enumerate(reqs):
        groups.setdefault(req.hash, []).append(i)

    def run_one(digest: str, index: int) -> GenerationRecord:
        try:
            return client.generate(reqs[index])
        except (TransportFailure, CacheCorruption) as exc:
            log.warning("generation failed for %s: %s", digest[:12], exc)
            return GenerationRecord(digest, "", "", "failed", "")

    results: list[GenerationRecord | None] = [None] * len(reqs)
    with ThreadPoolExecutor(max_workers=limit) as pool:
        futures = {
            digest: pool.submit(run_one, digest, members[0])
            for digest, members in groups.items()
        }
        for digest, members in groups.items():
            record = futures[digest].result()
            for i in members:
                results[i] = record
    return results
