"""Machine-readable verification reports and their JSON serialization.

Schema version 1.  JSON output is canonical (sorted keys, fixed witness
ordering) and omits wall-clock timings unless explicitly requested, so two
runs with the same inputs and seed are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"
BUDGET_EXCEEDED = "budget-exceeded"

EXIT_CODES = {PASS: 0, FAIL: 1, HYPOTHESIS_NOT_MET: 2, BUDGET_EXCEEDED: 3}


@dataclass
class VerificationReport:
    ring_spec: str
    check_id: str
    verdict: str
    hypotheses: list[tuple[str, bool]] = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    timing_ms: float = 0.0
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in EXIT_CODES:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError("a failing report needs at least one witness")
        if self.verdict == HYPOTHESIS_NOT_MET and all(met for _, met in self.hypotheses):
            raise ValueError("hypothesis-not-met requires a false hypothesis entry")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json_dict(self, include_timing: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "ring": self.ring_spec,
            "check": self.check_id,
            "verdict": self.verdict,
            "hypotheses": [{"name": n, "met": m} for n, m in self.hypotheses],
            "witnesses": self.witnesses,
            "seed": self.seed,
            "timing_ms": self.timing_ms if include_timing else None,
            "details": self.details,
        }


def element_witness(ring, index: int) -> dict:
    """Canonical index plus human-readable structure notation."""
    return {"index": int(index), "repr": ring.element_name(int(index))}


def ideal_witness(ring, subset) -> dict:
    """Ideals serialize as sorted generator lists."""
    gens = subset.minimal_generators()
    return {
        "generators": [element_witness(ring, g) for g in gens],
        "size": len(subset),
        "mask_hex": subset.mask_hex(),
    }


def reports_to_json(reports, seed: int | None = None, include_timing: bool = False) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "seed": seed,
        "reports": [r.to_json_dict(include_timing=include_timing) for r in reports],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def reports_to_csv(reports) -> str:
    """Delimited summary: one row per report."""
    lines = ["ring,check,verdict,witnesses"]
    for r in reports:
        lines.append(f"{r.ring_spec},{r.check_id},{r.verdict},{len(r.witnesses)}")
    return "\n".join(lines) + "\n"
