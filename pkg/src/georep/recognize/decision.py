"""Outcome of a recognition procedure."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..verify import Representation

YES, NO, UNKNOWN, NO_AT_RESOLUTION = "yes", "no", "unknown", "no_at_resolution"

EXIT_CODES = {YES: 0, NO: 1, UNKNOWN: 2, NO_AT_RESOLUTION: 2}


@dataclass
class Decision:
    """``yes`` always carries an exactly verified witness; ``no`` comes only
    from a complete procedure.  ``no_at_resolution`` is the grid oracle's
    weaker answer.
    """

    outcome: str
    witness: Optional[Representation] = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.outcome not in EXIT_CODES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == YES and self.witness is None:
            raise ValueError("a yes decision needs a witness")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    @property
    def is_yes(self) -> bool:
        return self.outcome == YES
