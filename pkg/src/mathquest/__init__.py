"""Game-based arithmetic practice for second graders.

A curriculum of twenty topics across addition, subtraction, multiplication,
and division; staged play sessions with time limits and pass/fail scoring;
a ticket reward store; durable learner records; and survey analytics.
"""

from .classify import AdditionClass, SubtractionClass, classify_addition, classify_subtraction
from .curriculum import Lesson, Topic, TopicCode, curriculum, topic_by_code
from .problems import (
    DivisionModel,
    Operator,
    Presentation,
    Problem,
    generate_problem,
    illustrate_division,
    parts_of_sentence,
    render_presentation,
)
from .scores import Remark, ScoreRecord
from .sessions import (
    AnswerEvent,
    SessionConfig,
    SessionState,
    Stage,
    advance_stage,
    finalize,
    start_session,
    submit_answer,
    unlocked_topics,
)
from .spaces import enumerate_space
from .rewards import StoreItem, TicketWallet, award_tickets, purchase

__version__ = "0.1.0"

__all__ = [
    "AdditionClass",
    "AnswerEvent",
    "DivisionModel",
    "Lesson",
    "Operator",
    "Presentation",
    "Problem",
    "Remark",
    "ScoreRecord",
    "SessionConfig",
    "SessionState",
    "Stage",
    "StoreItem",
    "SubtractionClass",
    "TicketWallet",
    "Topic",
    "TopicCode",
    "advance_stage",
    "award_tickets",
    "classify_addition",
    "classify_subtraction",
    "curriculum",
    "enumerate_space",
    "finalize",
    "generate_problem",
    "illustrate_division",
    "parts_of_sentence",
    "purchase",
    "render_presentation",
    "start_session",
    "submit_answer",
    "topic_by_code",
    "unlocked_topics",
]
