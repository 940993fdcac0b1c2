"""Staged play sessions for one topic.

A session walks a fixed three-stage ladder (preparatory, developmental,
evaluation). Each stage has its own question queue and tally; stages only
move forward, and a finished session can be finalized into a score record.
All transition functions are pure: they return a new state and never touch
the one passed in, so a state can be handed between execution contexts
freely as long as only one owner mutates at a time.
"""

from __future__ import annotations

import datetime
import json
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .curriculum import Topic, curriculum, topic_by_code
from .errors import (
    ConfigurationError,
    DomainError,
    SessionStateError,
    TopicLockedError,
    ValidationError,
)
from .problems import Problem, problem_from_dict, problem_to_dict
from .scores import Remark, ScoreRecord
from .word_problems import TemplateRegistry


class Stage(Enum):
    PREPARATORY = "preparatory"
    DEVELOPMENTAL = "developmental"
    EVALUATION = "evaluation"


STAGE_ORDER: tuple[Stage, ...] = (
    Stage.PREPARATORY,
    Stage.DEVELOPMENTAL,
    Stage.EVALUATION,
)

# Preparatory covers drill and review items, so it gets a small batch;
# the graded evaluation quiz carries the most questions.
DEFAULT_QUESTIONS_PER_STAGE: Mapping[Stage, int] = {
    Stage.PREPARATORY: 4,
    Stage.DEVELOPMENTAL: 5,
    Stage.EVALUATION: 10,
}
DEFAULT_TIME_LIMIT_SECONDS = 60
DEFAULT_PASS_THRESHOLD_PERCENT = 75

MIN_TIME_LIMIT_SECONDS = 5


class AnswerEvent(Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class SessionConfig:
    questions_per_stage: Mapping[Stage, int] = field(
        default_factory=lambda: dict(DEFAULT_QUESTIONS_PER_STAGE)
    )
    time_limit_seconds: int = DEFAULT_TIME_LIMIT_SECONDS
    pass_threshold_percent: int = DEFAULT_PASS_THRESHOLD_PERCENT

    def __post_init__(self):
        for stage in STAGE_ORDER:
            count = self.questions_per_stage.get(stage)
            if not isinstance(count, int) or count < 1:
                raise ValidationError(f"{stage.value} needs at least one question")
        if self.time_limit_seconds < MIN_TIME_LIMIT_SECONDS:
            raise ValidationError(
                f"time limit must be at least {MIN_TIME_LIMIT_SECONDS} seconds"
            )
        if not 0 <= self.pass_threshold_percent <= 100:
            raise ValidationError("pass threshold must be a percent in [0, 100]")


@dataclass(frozen=True)
class StageTally:
    asked: int = 0
    correct: int = 0


@dataclass(frozen=True)
class StageScore:
    stage: Stage
    percent: int


@dataclass(frozen=True)
class SessionState:
    learner_id: str
    topic: Topic
    config: SessionConfig
    base_seed: str
    stage: Stage
    queue: tuple[Problem, ...]
    tally: Mapping[Stage, StageTally]
    started_at: float
    finished: bool = False

    @property
    def current_problem(self) -> Problem | None:
        return self.queue[0] if self.queue else None


def stage_percent(tally: StageTally) -> int:
    """Half-up integer percent of correct answers; asked must be positive."""
    if tally.asked <= 0:
        raise DomainError("cannot score a stage with no questions asked")
    scaled = Fraction(100 * tally.correct, tally.asked)
    whole, part = divmod(scaled.numerator, scaled.denominator)
    return whole + (1 if Fraction(part, scaled.denominator) >= Fraction(1, 2) else 0)


def _make_queue(
    topic: Topic,
    base_seed: str,
    stage: Stage,
    count: int,
    templates: TemplateRegistry | None,
) -> tuple[Problem, ...]:
    from .problems import generate_problem

    return tuple(
        generate_problem(topic, f"{base_seed}|{stage.value}|{i}", templates=templates)
        for i in range(count)
    )


def unlocked_topics(history: Iterable[ScoreRecord]) -> frozenset[Topic]:
    """Topics whose curriculum predecessors all have a passing record.

    The first topic is always unlocked; records for unknown topic titles
    are ignored.
    """
    passed_titles = {r.topic for r in history if r.remark is Remark.PASSED}
    unlocked = []
    all_previous_passed = True
    for topic in curriculum():
        if all_previous_passed:
            unlocked.append(topic)
        all_previous_passed = all_previous_passed and topic.title in passed_titles
    return frozenset(unlocked)


def start_session(
    learner_id: str,
    topic: Topic,
    config: SessionConfig,
    seed,
    history: Iterable[ScoreRecord] = (),
    *,
    templates: TemplateRegistry | None = None,
    now: float | None = None,
) -> SessionState:
    """Open a session at the preparatory stage with a seeded question queue."""
    if topic not in unlocked_topics(history):
        raise TopicLockedError(
            f"topic {topic.title!r} is locked; pass the earlier topics first"
        )
    base_seed = str(seed)
    queue = _make_queue(
        topic,
        base_seed,
        Stage.PREPARATORY,
        config.questions_per_stage[Stage.PREPARATORY],
        templates,
    )
    return SessionState(
        learner_id=learner_id,
        topic=topic,
        config=config,
        base_seed=base_seed,
        stage=Stage.PREPARATORY,
        queue=queue,
        tally={stage: StageTally() for stage in STAGE_ORDER},
        started_at=time.time() if now is None else now,
    )


def submit_answer(
    state: SessionState, answer: int, elapsed_seconds: float
) -> tuple[AnswerEvent, SessionState]:
    """Judge the queued question and consume it.

    Over-limit submissions count as timeouts and score as incorrect, no
    matter what answer arrived.
    """
    if state.finished:
        raise SessionStateError("session is already finished")
    if not state.queue:
        raise SessionStateError("no question pending; advance the stage first")
    if elapsed_seconds < 0:
        raise DomainError("elapsed time cannot be negative")
    problem = state.queue[0]
    if elapsed_seconds > state.config.time_limit_seconds:
        event = AnswerEvent.TIMEOUT
    elif answer == problem.answer:
        event = AnswerEvent.CORRECT
    else:
        event = AnswerEvent.INCORRECT
    old = state.tally[state.stage]
    new_tally = dict(state.tally)
    new_tally[state.stage] = StageTally(
        asked=old.asked + 1,
        correct=old.correct + (1 if event is AnswerEvent.CORRECT else 0),
    )
    return event, replace(state, queue=state.queue[1:], tally=new_tally)


def advance_stage(
    state: SessionState, seed, *, templates: TemplateRegistry | None = None
) -> SessionState:
    """Move to the next stage with a fresh queue; past evaluation, finish."""
    if state.finished:
        raise SessionStateError("session is already finished")
    if state.queue:
        raise SessionStateError("questions remain in the current stage")
    if state.stage is Stage.EVALUATION:
        return replace(state, finished=True)
    next_stage = STAGE_ORDER[STAGE_ORDER.index(state.stage) + 1]
    queue = _make_queue(
        state.topic,
        str(seed),
        next_stage,
        state.config.questions_per_stage[next_stage],
        templates,
    )
    return replace(state, stage=next_stage, queue=queue)


def stage_scores(state: SessionState) -> tuple[StageScore, ...]:
    return tuple(
        StageScore(stage=stage, percent=stage_percent(state.tally[stage]))
        for stage in STAGE_ORDER
    )


def finalize(
    state: SessionState,
    config: SessionConfig | None = None,
    *,
    display_name: str,
    record_date: datetime.date | None = None,
) -> ScoreRecord:
    """Turn a finished session into a score record.

    Passing is judged on the evaluation-stage percent against the
    configured threshold.
    """
    if not state.finished:
        raise SessionStateError("cannot finalize an unfinished session")
    cfg = config if config is not None else state.config
    scores = {s.stage: s.percent for s in stage_scores(state)}
    remark = (
        Remark.PASSED
        if scores[Stage.EVALUATION] >= cfg.pass_threshold_percent
        else Remark.FAILED
    )
    return ScoreRecord(
        date=record_date if record_date is not None else datetime.date.today(),
        learner_name=display_name,
        lesson=state.topic.lesson.display_name,
        topic=state.topic.title,
        preparatory_percent=scores[Stage.PREPARATORY],
        developmental_percent=scores[Stage.DEVELOPMENTAL],
        evaluation_percent=scores[Stage.EVALUATION],
        remark=remark,
    )


MESSAGE_EVENTS = ("correct", "incorrect", "timeout", "stage_complete", "passed", "failed")


@dataclass(frozen=True)
class MessageCatalog:
    """Event-keyed feedback strings; swap the file to change locale."""

    messages: Mapping[str, str]

    def text(self, event_key: str) -> str:
        try:
            return self.messages[event_key]
        except KeyError:
            raise DomainError(f"no message for event {event_key!r}") from None


def load_message_catalog(path: str | Path | None = None) -> MessageCatalog:
    if path is None:
        raw = (
            resources.files("mathquest")
            .joinpath("data/message_catalog.json")
            .read_text(encoding="utf-8")
        )
    else:
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"message catalog not found: {path}")
        raw = path.read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"message catalog is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError("message catalog must be a JSON object")
    for key in MESSAGE_EVENTS:
        value = data.get(key)
        if not isinstance(value, str) or not value.strip():
            raise ConfigurationError(f"message catalog is missing text for {key!r}")
    return MessageCatalog(messages=dict(data))


def session_to_dict(state: SessionState) -> dict:
    return {
        "learner_id": state.learner_id,
        "topic": state.topic.code.value,
        "config": {
            "questions_per_stage": {
                stage.value: state.config.questions_per_stage[stage]
                for stage in STAGE_ORDER
            },
            "time_limit_seconds": state.config.time_limit_seconds,
            "pass_threshold_percent": state.config.pass_threshold_percent,
        },
        "base_seed": state.base_seed,
        "stage": state.stage.value,
        "queue": [problem_to_dict(p) for p in state.queue],
        "tally": {
            stage.value: [tally.asked, tally.correct]
            for stage, tally in state.tally.items()
        },
        "started_at": state.started_at,
        "finished": state.finished,
    }


def session_from_dict(data: dict) -> SessionState:
    config = SessionConfig(
        questions_per_stage={
            Stage(name): count
            for name, count in data["config"]["questions_per_stage"].items()
        },
        time_limit_seconds=data["config"]["time_limit_seconds"],
        pass_threshold_percent=data["config"]["pass_threshold_percent"],
    )
    return SessionState(
        learner_id=data["learner_id"],
        topic=topic_by_code(data["topic"]),
        config=config,
        base_seed=data["base_seed"],
        stage=Stage(data["stage"]),
        queue=tuple(problem_from_dict(p) for p in data["queue"]),
        tally={
            Stage(name): StageTally(asked=asked, correct=correct)
            for name, (asked, correct) in data["tally"].items()
        },
        started_at=data["started_at"],
        finished=data["finished"],
    )
