"""Tests for output formatting."""

import json

from theta_instantons.output import format_response, render_cli
from theta_instantons.output.format import dump_json


class TestFormatResponse:
    """Tests for format_response."""

    def test_json_keeps_payload(self):
        response = format_response({"b": 1, "a": [1, 2]}, "json")
        assert response == {"format": "json", "content": {"b": 1, "a": [1, 2]}}

    def test_text_uses_renderer(self):
        response = format_response({"n": 3}, "text", lambda data: f"n is {data['n']}")
        assert response == {"format": "text", "content": "n is 3"}

    def test_text_without_renderer_falls_back_to_json(self):
        response = format_response({"n": 3}, "TEXT")
        assert json.loads(response["content"]) == {"n": 3}

    def test_tsv(self):
        response = format_response([], "tsv", lambda _: "x\ty\t1\n")
        assert response["format"] == "tsv"

    def test_toon_is_default(self):
        response = format_response({"suite": "hopf"}, None)
        assert response["format"] == "toon"
        assert "hopf" in response["content"]


class TestRender:
    """Tests for CLI rendering."""

    def test_dump_json_is_stable(self):
        assert dump_json({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'

    def test_render_json(self):
        text = render_cli({"format": "json", "content": {"a": 1}})
        assert json.loads(text) == {"a": 1}
        assert not text.endswith("\n")

    def test_render_text_strips_newline(self):
        assert render_cli({"format": "tsv", "content": "a\tb\n"}) == "a\tb"
