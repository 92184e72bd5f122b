"""Verdicts: a tag, a re-checkable witness, and the chain of results that produced it."""

from __future__ import annotations

from dataclasses import dataclass, field

NOT_QUASI_FREE = "NotQuasiFree"
INCONCLUSIVE = "Inconclusive"


@dataclass
class Verdict:
    tag: str
    witness: dict = field(default_factory=dict)
    provenance: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        raise TypeError("a Verdict has no truth value; compare its tag")

    def to_json(self) -> dict:
        return {"tag": self.tag, "witness": self.witness,
                "provenance": list(self.provenance), "notes": list(self.notes)}
