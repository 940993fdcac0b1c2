"""Score records shared by the session engine, rewards, and storage."""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from enum import Enum

from .errors import ValidationError


class Remark(Enum):
    PASSED = "Passed"
    FAILED = "Failed"


@dataclass(frozen=True)
class ScoreRecord:
    """One finished topic run: the row a progress report prints."""

    date: datetime.date
    learner_name: str
    lesson: str
    topic: str
    preparatory_percent: int
    developmental_percent: int
    evaluation_percent: int
    remark: Remark

    def __post_init__(self):
        for label, value in (
            ("preparatory", self.preparatory_percent),
            ("developmental", self.developmental_percent),
            ("evaluation", self.evaluation_percent),
        ):
            if not isinstance(value, int) or not 0 <= value <= 100:
                raise ValidationError(f"{label} percent must be an integer in [0, 100]")

    def to_json_dict(self) -> dict:
        return {
            "date": self.date.isoformat(),
            "learner_name": self.learner_name,
            "lesson": self.lesson,
            "topic": self.topic,
            "preparatory_percent": self.preparatory_percent,
            "developmental_percent": self.developmental_percent,
            "evaluation_percent": self.evaluation_percent,
            "remark": self.remark.value,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ScoreRecord":
        return cls(
            date=datetime.date.fromisoformat(data["date"]),
            learner_name=data["learner_name"],
            lesson=data["lesson"],
            topic=data["topic"],
            preparatory_percent=int(data["preparatory_percent"]),
            developmental_percent=int(data["developmental_percent"]),
            evaluation_percent=int(data["evaluation_percent"]),
            remark=Remark(data["remark"]),
        )
