"""The fixed Grade 2 arithmetic curriculum: four lessons, twenty topics.

Topics are ordered; a learner progresses strictly from addition through
division, so ordinals double as prerequisite positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Lesson(Enum):
    ADDITION = "Addition"
    SUBTRACTION = "Subtraction"
    MULTIPLICATION = "Multiplication"
    DIVISION = "Division"

    @property
    def display_name(self) -> str:
        return self.value


class TopicCode(Enum):
    ADD_NO_REGROUP = "add-no-regroup"
    ADD_REGROUP = "add-regroup"
    ADD_ZERO_NO_REGROUP = "add-zero-no-regroup"
    ADD_ZERO_REGROUP = "add-zero-regroup"
    ADD_WORD_PROBLEMS = "add-word-problems"
    SUB_NO_REGROUP = "sub-no-regroup"
    SUB_REGROUP_TENS = "sub-regroup-tens"
    SUB_REGROUP_HUNDREDS_ZERO = "sub-regroup-hundreds-zero"
    SUB_REGROUP_TENS_HUNDREDS_ZERO = "sub-regroup-tens-hundreds-zero"
    SUB_WORD_PROBLEMS = "sub-word-problems"
    MUL_REPEATED_SETS = "mul-repeated-sets"
    MUL_REPEATED_NUMBER_LINE = "mul-repeated-number-line"
    MUL_SENTENCE_PARTS = "mul-sentence-parts"
    MUL_ZERO_PROPERTY = "mul-zero-property"
    MUL_PRODUCTS_TO_81 = "mul-products-to-81"
    MUL_WORD_PROBLEMS = "mul-word-problems"
    DIV_SENTENCE_PARTS = "div-sentence-parts"
    DIV_ILLUSTRATE = "div-illustrate"
    DIV_DIVIDENDS_TO_81 = "div-dividends-to-81"
    DIV_WORD_PROBLEMS = "div-word-problems"


@dataclass(frozen=True)
class Topic:
    """One curriculum entry; `ordinal` is its position in the fixed sequence."""

    code: TopicCode
    lesson: Lesson
    ordinal: int
    title: str

    @property
    def is_word_problem(self) -> bool:
        return self.code in _WORD_PROBLEM_CODES


_WORD_PROBLEM_CODES = frozenset(
    {
        TopicCode.ADD_WORD_PROBLEMS,
        TopicCode.SUB_WORD_PROBLEMS,
        TopicCode.MUL_WORD_PROBLEMS,
        TopicCode.DIV_WORD_PROBLEMS,
    }
)

_SEQUENCE: tuple[tuple[TopicCode, Lesson, str], ...] = (
    (
        TopicCode.ADD_NO_REGROUP,
        Lesson.ADDITION,
        "Add 2-to-3-digit numbers with sums up to 999 without Regrouping",
    ),
    (
        TopicCode.ADD_REGROUP,
        Lesson.ADDITION,
        "Add 2-to-3-digit numbers with sums up to 999 with Regrouping",
    ),
    (
        TopicCode.ADD_ZERO_NO_REGROUP,
        Lesson.ADDITION,
        "Add 2-to-3-digit numbers with sums up to 999 with Zero in any of the Addends without Regrouping",
    ),
    (
        TopicCode.ADD_ZERO_REGROUP,
        Lesson.ADDITION,
        "Add 2-to-3-digit numbers with sums up to 999 with Zero in any of the Addends with Regrouping",
    ),
    (
        TopicCode.ADD_WORD_PROBLEMS,
        Lesson.ADDITION,
        "Analyzing Word Problems in Addition",
    ),
    (
        TopicCode.SUB_NO_REGROUP,
        Lesson.SUBTRACTION,
        "Subtracting 2-to-3-Digit Numbers without Regrouping",
    ),
    (
        TopicCode.SUB_REGROUP_TENS,
        Lesson.SUBTRACTION,
        "Subtracting 2-to-3-Digit Numbers with Regrouping in the Tens Place",
    ),
    (
        TopicCode.SUB_REGROUP_HUNDREDS_ZERO,
        Lesson.SUBTRACTION,
        "Subtracting 2-to-3-Digit Numbers with Regrouping in the Hundreds Place and with Zero Difficulty",
    ),
    (
        TopicCode.SUB_REGROUP_TENS_HUNDREDS_ZERO,
        Lesson.SUBTRACTION,
        "Subtracting 2-to-3-Digit Numbers with Regrouping in the Tens and Hundreds Place and with Zero Difficulty",
    ),
    (
        TopicCode.SUB_WORD_PROBLEMS,
        Lesson.SUBTRACTION,
        "Analyzing Word Problems in Subtraction",
    ),
    (
        TopicCode.MUL_REPEATED_SETS,
        Lesson.MULTIPLICATION,
        "Multiplication as Repeated Addition using Sets",
    ),
    (
        TopicCode.MUL_REPEATED_NUMBER_LINE,
        Lesson.MULTIPLICATION,
        "Multiplication as Repeated Addition using Number Line",
    ),
    (
        TopicCode.MUL_SENTENCE_PARTS,
        Lesson.MULTIPLICATION,
        "Identifying Parts of a Multiplication Sentence",
    ),
    (
        TopicCode.MUL_ZERO_PROPERTY,
        Lesson.MULTIPLICATION,
        "Showing that Zero Multiplied by a Number is Zero",
    ),
    (
        TopicCode.MUL_PRODUCTS_TO_81,
        Lesson.MULTIPLICATION,
        "Multiplying 1-to-2 Digit Numbers with Products up to 81",
    ),
    (
        TopicCode.MUL_WORD_PROBLEMS,
        Lesson.MULTIPLICATION,
        "Analyzing Word Problems in Multiplication",
    ),
    (
        TopicCode.DIV_SENTENCE_PARTS,
        Lesson.DIVISION,
        "Parts of a Division Sentence",
    ),
    (
        TopicCode.DIV_ILLUSTRATE,
        Lesson.DIVISION,
        "Illustrating Division",
    ),
    (
        TopicCode.DIV_DIVIDENDS_TO_81,
        Lesson.DIVISION,
        "Dividing 1-to-2 Digit Numbers by 1-Digit Number with Dividends through 81",
    ),
    (
        TopicCode.DIV_WORD_PROBLEMS,
        Lesson.DIVISION,
        "Analyzing Word Problems in Division",
    ),
)

_CURRICULUM: tuple[Topic, ...] = tuple(
    Topic(code=code, lesson=lesson, ordinal=i, title=title)
    for i, (code, lesson, title) in enumerate(_SEQUENCE)
)

_BY_CODE = {topic.code: topic for topic in _CURRICULUM}
_BY_TITLE = {topic.title: topic for topic in _CURRICULUM}


def curriculum() -> tuple[Topic, ...]:
    """Return every topic in its fixed teaching order."""
    return _CURRICULUM


def topic_by_code(code: TopicCode | str) -> Topic:
    if isinstance(code, str):
        code = TopicCode(code)
    return _BY_CODE[code]


def topic_by_title(title: str) -> Topic | None:
    return _BY_TITLE.get(title)
