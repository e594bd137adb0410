"""Behavioral test cases and stability scoring.

A test case perturbs one base question: invariance cases (typo,
paraphrase) expect the verdict to survive the perturbation, direction
cases (phrase swap, type hint, two-turn prompting) expect a specific
shift in the output. Stability classifies the (original, typo,
paraphrase) verdict triple into one of the eight C/W strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

CASE_KINDS = ("INV_TYPO", "INV_PARA", "DIR_SWAP", "DIR_HINT", "DIR_COT")

STABILITY_CLASSES = ("CCC", "CCW", "CWC", "CWW", "WCC", "WCW", "WWC", "WWW")
STABLE_CLASSES = frozenset({"CCC", "WWW"})


class CaseError(ValueError):
    """A test case violates its structural contract."""


@dataclass(frozen=True)
class TestCase:
    __test__ = False  # keep pytest from collecting this as a test class

    base_id: str
    kind: str
    turns: tuple[str, ...]
    expectation: dict | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in CASE_KINDS:
            raise CaseError(f"unknown case kind: {self.kind!r}")
        turns = tuple(self.turns)
        object.__setattr__(self, "turns", turns)
        if not turns or any(not t for t in turns):
            raise CaseError(f"{self.kind} case needs non-empty turns")
        if self.kind == "DIR_COT" and len(turns) != 2:
            raise CaseError("DIR_COT cases carry exactly two turns")
        if self.kind == "DIR_HINT" and len(turns) != 1:
            raise CaseError("DIR_HINT cases carry exactly one turn")
        if self.kind == "DIR_SWAP":
            exp = self.expectation or {}
            if not exp.get("required") and not exp.get("forbidden"):
                raise CaseError("DIR_SWAP cases need a non-empty keyword expectation")

    @property
    def case_id(self) -> str:
        return f"{self.base_id}::{self.kind}"


def case_to_dict(case: TestCase) -> dict:
    return {
        "id": case.case_id,
        "base_id": case.base_id,
        "kind": case.kind,
        "turns": list(case.turns),
        "expectation": case.expectation,
        "meta": case.meta,
    }


def case_from_dict(data: dict) -> TestCase:
    return TestCase(
        base_id=data["base_id"],
        kind=data["kind"],
        turns=tuple(data["turns"]),
        expectation=data.get("expectation"),
        meta=data.get("meta") or {},
    )


def write_battery(cases: list[TestCase], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for case in cases:
            fh.write(json.dumps(case_to_dict(case), ensure_ascii=False,
                                sort_keys=True, separators=(",", ":")))
            fh.write("\n")
    return path


def read_battery(path: str | Path) -> list[TestCase]:
    cases = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                cases.append(case_from_dict(json.loads(line)))
    return cases


def classify_stability(outcomes) -> str:
    """Spell the verdict triple (original, typo, paraphrase) as C/W."""
    triple = tuple(outcomes)
    if len(triple) != 3:
        raise ValueError(f"stability needs exactly 3 outcomes, got {len(triple)}")
    return "".join("C" if bool(o) else "W" for o in triple)


def stability_rate(class_counts) -> float:
    """Percentage of fully stable triples (all correct or all wrong)."""
    unknown = set(class_counts) - set(STABILITY_CLASSES)
    if unknown:
        raise ValueError(f"unknown stability classes: {sorted(unknown)}")
    if any(v < 0 for v in class_counts.values()):
        raise ValueError("stability counts cannot be negative")
    total = sum(class_counts.values())
    if total == 0:
        raise ValueError("stability rate needs at least one classified triple")
    stable = class_counts.get("CCC", 0) + class_counts.get("WWW", 0)
    return round(100.0 * stable / total, 2)
