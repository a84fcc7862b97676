from __future__ import annotations

import json
from importlib import resources
from typing import Any, Mapping


def _load(name: str) -> Mapping[str, Any]:
    with (
        resources.files("tabinv")
        .joinpath(*name.split("/"))
        .open("r", encoding="utf-8") as handle
    ):
        data: Mapping[str, Any] = json.load(handle)
    return data


def load_schema() -> Mapping[str, Any]:
    return _load("schema.json")


def load_appendix() -> Mapping[str, Any]:
    """Golden appendix tables: per table, the rectangle and stair-step distributions."""
    return _load("data/appendix.json")
