"""Prompt rendering, response classification, and cache behavior."""

from __future__ import annotations

import ast
import hashlib
import json

import numpy as np
import pytest

from stylodetect.llmgen import (
    CacheCorruption,
    EmptyDocstring,
    GenerationClient,
    GenerationRecord,
    GenerationRequest,
    HttpTransport,
    StubTransport,
    TransportFailure,
    batch_generate,
    build_prompt,
    classify_response,
    generate,
    request_hash,
    strip_fences,
)

FENCED = "```python\nx=1\n```"


def _request(doc="adds two numbers", kind="function", model="test-model"):
    return GenerationRequest(kind=kind, docstring=doc, model=model)


def test_prompt_renders_function_template():
    prompt = build_prompt("function", "adds two numbers")
    assert prompt == (
        "Assume that you're an expert Python programmer. Please generate a "
        "Python FUNCTION from the given docstring. Do not explain the code."
        "\n\nadds two numbers"
    )
    assert "CLASS" not in prompt


def test_prompt_renders_class_marker():
    prompt = build_prompt("class", "a stack")
    assert "Python CLASS from the given docstring" in prompt
    assert "FUNCTION" not in prompt
    assert prompt.endswith("\n\na stack")


def test_prompt_rejects_bad_inputs():
    with pytest.raises(EmptyDocstring):
        build_prompt("function", "")
    with pytest.raises(EmptyDocstring):
        build_prompt("class", "   \n\t")
    with pytest.raises(ValueError):
        build_prompt("module", "text")


def test_request_hash_is_sha256_of_model_and_prompt():
    req = _request()
    expected = hashlib.sha256(f"test-model\n{req.prompt}".encode()).hexdigest()
    assert req.hash == expected
    assert request_hash("test-model", req.prompt) == expected
    assert _request().hash == req.hash
    assert _request(model="other").hash != req.hash


def test_request_is_frozen_with_rendered_prompt():
    req = _request()
    assert req.max_tokens == 1024
    assert "adds two numbers" in req.prompt
    with pytest.raises(AttributeError):
        req.docstring = "changed"


def test_fence_stripping_examples():
    assert strip_fences(FENCED) == "x=1"
    assert strip_fences("plain text") == "plain text"
    assert strip_fences("intro\n```\ny = 2\n```\noutro") == "y = 2"
    assert strip_fences("```python\nunterminated") == "unterminated"


def test_fence_stripping_is_idempotent():
    rng = np.random.default_rng(5)
    pieces = ["```python", "```", "x = 1", "# note", "text", "    pass", ""]
    for _ in range(200):
        n = int(rng.integers(0, 6))
        text = "\n".join(pieces[int(rng.integers(len(pieces)))] for _ in range(n))
        once = strip_fences(text)
        assert strip_fences(once) == once
        assert "```" not in once or "```" not in text


def test_classify_fenced_code_as_ok():
    code, status = classify_response(FENCED)
    assert (code, status) == ("x=1", "ok")


def test_classify_refusal_without_code():
    code, status = classify_response("I cannot help with that.")
    assert status == "refused"
    assert code == ""
    assert classify_response("Sorry, that looks unsafe.")[1] == "refused"


def test_classify_blank_as_empty():
    assert classify_response("") == ("", "empty")
    assert classify_response("  \n ") == ("", "empty")


def test_classify_prose_as_parse_failed_keeping_text():
    code, status = classify_response("here is an explanation without code")
    assert status == "parse-failed"
    assert code == "here is an explanation without code"


def test_refusal_words_inside_valid_code_still_ok():
    code, status = classify_response("x = 1  # sorry, about the mess")
    assert status == "ok"
    assert code == "x = 1  # sorry, about the mess"


def test_ok_status_implies_parseable_code():
    rng = np.random.default_rng(9)
    samples = [
        FENCED,
        "def f():\n    return 1",
        "I cannot do this",
        "```\nwhile True\n```",
        "",
        "class A:\n    pass",
        "** bold text **",
    ]
    for _ in range(50):
        raw = samples[int(rng.integers(len(samples)))]
        code, status = classify_response(raw)
        if status == "ok":
            ast.parse(code + "\n")
        if status == "refused":
            assert code == ""


def test_generate_caches_and_skips_network(tmp_path):
    req = _request()
    transport = StubTransport({req.prompt: FENCED})
    client = GenerationClient(tmp_path, transport)
    first = generate(req, client)
    assert transport.calls == 1
    assert (first.code, first.status) == ("x=1", "ok")
    second = generate(req, client)
    assert transport.calls == 1
    assert second == first


def test_replay_without_transport_is_cache_only(tmp_path):
    req = _request()
    primer = GenerationClient(tmp_path, StubTransport({req.prompt: FENCED}))
    cached = generate(req, primer)
    replay = GenerationClient(tmp_path, transport=None)
    assert generate(req, replay) == cached
    with pytest.raises(TransportFailure):
        generate(_request(doc="something else"), replay)


def test_corrupt_cache_entry_is_reported(tmp_path):
    req = _request()
    (tmp_path / f"{req.hash}.json").write_text("not json at all")
    client = GenerationClient(tmp_path, StubTransport({req.prompt: FENCED}))
    with pytest.raises(CacheCorruption):
        generate(req, client)
    (tmp_path / f"{req.hash}.json").write_text(json.dumps({"status": "ok"}))
    with pytest.raises(CacheCorruption):
        generate(req, client)


def test_batch_all_cached_makes_no_calls(tmp_path):
    reqs = [_request(doc=f"task {i}") for i in range(2)]
    transport = StubTransport(default=FENCED)
    client = GenerationClient(tmp_path, transport)
    for req in reqs:
        generate(req, client)
    assert transport.calls == 2
    records = batch_generate(reqs, client)
    assert transport.calls == 2
    assert [r.status for r in records] == ["ok", "ok"]


def test_batch_isolates_failures(tmp_path):
    reqs = [_request(doc=f"task {i}") for i in range(3)]
    transport = StubTransport(
        {reqs[0].prompt: FENCED, reqs[2].prompt: "```\ny = 2\n```"}
    )
    client = GenerationClient(tmp_path, transport)
    records = batch_generate(reqs, client)
    assert [r.status for r in records] == ["ok", "failed", "ok"]
    assert records[1] == GenerationRecord(reqs[1].hash, "", "", "failed", "")
    assert records[0].code == "x=1"
    assert records[2].code == "y = 2"


def test_batch_shares_one_call_for_identical_requests(tmp_path):
    reqs = [_request(), _request(), _request(doc="different")]
    transport = StubTransport(default=FENCED)
    client = GenerationClient(tmp_path, transport)
    records = batch_generate(reqs, client)
    assert transport.calls == 2
    assert records[0] == records[1]
    assert records[0].request_hash == reqs[0].hash


def test_batch_validates_limit(tmp_path):
    client = GenerationClient(tmp_path)
    with pytest.raises(ValueError):
        batch_generate([], client, limit=0)


def test_replay_batch_is_deterministic(tmp_path):
    reqs = [_request(doc=f"task {i}") for i in range(4)]
    primer = GenerationClient(tmp_path, StubTransport(default=FENCED))
    batch_generate(reqs, primer)
    replay = GenerationClient(tmp_path, transport=None)
    first = batch_generate(reqs, replay)
    files = sorted(p.name for p in tmp_path.iterdir())
    second = batch_generate(reqs, replay)
    assert first == second
    assert sorted(p.name for p in tmp_path.iterdir()) == files


def test_cache_files_hold_complete_records(tmp_path):
    req = _request()
    client = GenerationClient(tmp_path, StubTransport({req.prompt: FENCED}))
    record = generate(req, client)
    payload = json.loads((tmp_path / f"{req.hash}.json").read_text())
    assert set(payload) == {"request_hash", "raw_response", "code", "status", "timestamp"}
    assert payload["request_hash"] == record.request_hash
    assert payload["raw_response"] == FENCED


def test_http_transport_requires_endpoint(monkeypatch):
    monkeypatch.delenv("STYLODETECT_API_URL", raising=False)
    with pytest.raises(TransportFailure):
        HttpTransport()
