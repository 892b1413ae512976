"""Outcome of an executable theorem check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class TheoremReport:
    """Counts and counterexamples from checking one claim over many instances.

    ``holds`` is true when no counterexample was found. For exploratory probes
    (claims the package does not assert), ``candidates`` collects instances
    that contradict the claim as printed.
    """

    theorem: str
    claim: str
    mode: str
    checked: int = 0
    agreements: int = 0
    counterexamples: list[Any] = field(default_factory=list)
    candidates: list[Any] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    precondition_failures: list[str] = field(default_factory=list)
    unit: str = "instances"

    @property
    def holds(self) -> bool:
        return not self.counterexamples and not self.precondition_failures

    def summary(self) -> str:
        line = (
            f"{self.theorem}: {self.checked} {self.unit} checked, {self.agreements} agreements, "
            f"{len(self.counterexamples)} counterexamples"
        )
        if self.candidates:
            line += f", {len(self.candidates)} counterexample candidates to the printed claim"
        if self.precondition_failures:
            line += f", preconditions failed: {'; '.join(self.precondition_failures)}"
        return line
