"""Loader for the golden reference tables shipped with the package.

The JSON files freeze the published values the engine must reproduce;
`verify-tables` and the test suite both read them from here.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    path = resources.files("floordiagrams.data").joinpath(name)
    return json.loads(path.read_text(encoding="utf-8"))


def gw_table() -> dict[tuple[int, int], int]:
    raw = _load("gw_table.json")
    return {
        (int(d), g): value
        for d, row in raw["rows"].items()
        for g, value in enumerate(row)
    }


def severi_table() -> dict[tuple[int, int], int]:
    raw = _load("severi_table.json")
    return {
        (int(d), delta): value
        for d, row in raw["rows"].items()
        for delta, value in enumerate(row)
    }


def severi_reducible_entries() -> set[tuple[int, int]]:
    return {tuple(e) for e in _load("severi_table.json")["reducible"]}


def relative_table() -> dict:
    return _load("relative_table.json")


def max_tangency_table() -> list[tuple[int, int, int]]:
    return [tuple(row) for row in _load("max_tangency.json")["rows"]]


def appendix_rows() -> list[dict]:
    return _load("appendix_a.json")["rows"]


def appendix_counts() -> dict[tuple[int, int], int]:
    return {
        tuple(int(x) for x in key.split(",")): value
        for key, value in _load("appendix_a.json")["counts"].items()
    }


def template_rows() -> list[dict]:
    return _load("templates_table.json")["rows"]


def aj_reference(j_max: int = 8) -> list[tuple[Fraction, ...]]:
    rows = _load("aj_reference.json")["coefficients"][:j_max]
    return [tuple(Fraction(c) for c in row) for row in rows]
