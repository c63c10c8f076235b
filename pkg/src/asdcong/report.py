"""Deterministic report assembly and serialization.

The report is a single JSON document {"meta", "cases", "summary"}.  Two runs
with the same effective parameters must produce byte-identical documents no
matter how many workers evaluated the cases, so nothing time- or
schedule-dependent may enter, cases are emitted in sorted order, and keys are
sorted.  Integers that would overflow 64-bit consumers are serialized as
decimal strings; the infinite valuation is the string "inf".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from ._version import __version__

_I64_MAX = 2**63 - 1


def _json_safe(value):
    """Recursively convert to JSON-encodable values per the report conventions."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > _I64_MAX else value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if value.is_integer():
            return int(value)
        return value
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return str(value)


@dataclass
class Report:
    """Aggregated, deterministically ordered case results."""

    meta: dict
    results: list = field(default_factory=list)

    @classmethod
    def from_results(cls, invocation: dict, results: Sequence) -> Report:
        meta = {
            "tool": "asdcong",
            "version": __version__,
            "invocation": invocation,
        }
        return cls(meta=meta, results=list(results))

    def counts(self) -> dict:
        passed = failed = errored = 0
        for r in self.results:
            if r.error is not None:
                errored += 1
            elif r.passed:
                passed += 1
            else:
                failed += 1
        return {
            "total": len(self.results),
            "passed": passed,
            "failed": failed,
            "errored": errored,
        }

    def min_margin_by_suite(self) -> dict:
        """Smallest certified valuation margin per suite, errored cases aside."""
        margins: dict[str, int | float] = {}
        for r in self.results:
            if r.error is not None or r.margin is None:
                continue
            suite = r.case.suite
            if suite not in margins or r.margin < margins[suite]:
                margins[suite] = r.margin
        return margins

    def failures(self) -> list:
        return [r for r in self.results if r.error is not None or not r.passed]

    def to_json_dict(self) -> dict:
        summary = self.counts()
        summary["min_margin_by_suite"] = self.min_margin_by_suite()
        return _json_safe(
            {
                "meta": self.meta,
                "cases": [r.to_json_entry() for r in self.results],
                "summary": summary,
            }
        )

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"
