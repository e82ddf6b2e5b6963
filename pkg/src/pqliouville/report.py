"""Deterministic report records and atomic file output.

Reports serialize with sorted keys and stable float repr, so identical
configurations (and seed) produce byte-identical files.  Wall-clock
timings are collected but only emitted when explicitly requested, to
keep the default output reproducible.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class Report:
    tool_version: str
    config_echo: dict
    results: list
    timing: list = field(default_factory=list)

    def as_dict(self, include_timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "config_echo": self.config_echo,
            "results": self.results,
        }
        if include_timing:
            out["timing"] = self.timing
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.as_dict(include_timing), indent=2, sort_keys=True) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a sibling temp file and rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
