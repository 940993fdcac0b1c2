"""Exhaustive operand spaces for every enumerable topic.

These spaces are the single source of truth for what a topic admits: the
generator rejects against `satisfies`, and tests sweep the full enumeration.
Word-problem topics have open-ended template spaces and are not enumerable.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .classify import classify_addition, classify_subtraction
from .curriculum import Topic, TopicCode
from .errors import DomainError

ADDEND_MIN, ADDEND_MAX = 10, 999
SUM_MAX = 999
PRODUCT_MAX = 81
DIVIDEND_MAX = 81


def satisfies(topic: Topic, operands: tuple[int, int]) -> bool:
    """True when the operand pair lies inside the topic's constraint set."""
    a, b = operands
    code = topic.code
    if code in ADDITION_FLAGS:
        if not (ADDEND_MIN <= a <= ADDEND_MAX and ADDEND_MIN <= b <= ADDEND_MAX):
            return False
        if a + b > SUM_MAX:
            return False
        want_regroup, want_zero = ADDITION_FLAGS[code]
        cls = classify_addition(a, b)
        if cls.regrouping != want_regroup:
            return False
        return want_zero is None or cls.zero_in_addend == want_zero
    if code in SUBTRACTION_FLAGS:
        if not (ADDEND_MIN <= b <= a <= ADDEND_MAX):
            return False
        want_tens, want_hundreds, want_zero = SUBTRACTION_FLAGS[code]
        cls = classify_subtraction(a, b)
        if want_tens is not None and cls.borrow_tens != want_tens:
            return False
        if want_hundreds is not None and cls.borrow_hundreds != want_hundreds:
            return False
        return want_zero is None or cls.zero_difficulty == want_zero
    if code in (TopicCode.MUL_REPEATED_SETS, TopicCode.MUL_REPEATED_NUMBER_LINE):
        return 2 <= a <= 9 and 1 <= b <= 9 and a * b <= PRODUCT_MAX
    if code is TopicCode.MUL_SENTENCE_PARTS:
        return 1 <= a <= 9 and 1 <= b <= 9
    if code is TopicCode.MUL_ZERO_PROPERTY:
        return 0 <= a <= 9 and 0 <= b <= 9 and (a == 0 or b == 0)
    if code is TopicCode.MUL_PRODUCTS_TO_81:
        return 1 <= a <= 99 and 1 <= b <= 9 and a * b <= PRODUCT_MAX
    if code in DIVISION_CODES:
        return 1 <= b <= 9 and 0 <= a <= DIVIDEND_MAX and a % b == 0
    raise DomainError(f"topic {topic.code.value} has no enumerable operand space")


# Flag targets per topic: None leaves that classifier flag unconstrained,
# so a topic pins exactly the flags its name calls out.
ADDITION_FLAGS: dict[TopicCode, tuple[bool, bool | None]] = {
    TopicCode.ADD_NO_REGROUP: (False, None),
    TopicCode.ADD_REGROUP: (True, None),
    TopicCode.ADD_ZERO_NO_REGROUP: (False, True),
    TopicCode.ADD_ZERO_REGROUP: (True, True),
}

SUBTRACTION_FLAGS: dict[TopicCode, tuple[bool | None, bool | None, bool | None]] = {
    TopicCode.SUB_NO_REGROUP: (False, False, None),
    TopicCode.SUB_REGROUP_TENS: (True, False, None),
    TopicCode.SUB_REGROUP_HUNDREDS_ZERO: (None, True, True),
    TopicCode.SUB_REGROUP_TENS_HUNDREDS_ZERO: (True, True, True),
}

DIVISION_CODES = frozenset(
    {
        TopicCode.DIV_SENTENCE_PARTS,
        TopicCode.DIV_ILLUSTRATE,
        TopicCode.DIV_DIVIDENDS_TO_81,
    }
)


def _iter_members(topic: Topic) -> Iterator[tuple[int, int]]:
    code = topic.code
    if code in ADDITION_FLAGS:
        for a in range(ADDEND_MIN, SUM_MAX - ADDEND_MIN + 1):
            for b in range(ADDEND_MIN, SUM_MAX - a + 1):
                if satisfies(topic, (a, b)):
                    yield a, b
    elif code in SUBTRACTION_FLAGS:
        for minuend in range(ADDEND_MIN, ADDEND_MAX + 1):
            for subtrahend in range(ADDEND_MIN, minuend + 1):
                if satisfies(topic, (minuend, subtrahend)):
                    yield minuend, subtrahend
    elif code in (TopicCode.MUL_REPEATED_SETS, TopicCode.MUL_REPEATED_NUMBER_LINE):
        for a in range(2, 10):
            for b in range(1, 10):
                if a * b <= PRODUCT_MAX:
                    yield a, b
    elif code is TopicCode.MUL_SENTENCE_PARTS:
        for a in range(1, 10):
            for b in range(1, 10):
                yield a, b
    elif code is TopicCode.MUL_ZERO_PROPERTY:
        for n in range(0, 10):
            yield 0, n
        for n in range(1, 10):
            yield n, 0
    elif code is TopicCode.MUL_PRODUCTS_TO_81:
        for a in range(1, 100):
            for b in range(1, 10):
                if a * b <= PRODUCT_MAX:
                    yield a, b
    elif code in DIVISION_CODES:
        for divisor in range(1, 10):
            for dividend in range(0, DIVIDEND_MAX + 1, divisor):
                yield dividend, divisor
    else:
        raise DomainError(f"topic {topic.code.value} has no enumerable operand space")


@lru_cache(maxsize=None)
def _materialized(topic: Topic) -> tuple[tuple[int, int], ...]:
    return tuple(_iter_members(topic))


class TopicSpace:
    """Iterable view of a topic's full operand space with a cached count."""

    def __init__(self, topic: Topic):
        if topic.is_word_problem:
            raise DomainError("word-problem topics have open template spaces")
        self.topic = topic

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return _iter_members(self.topic)

    def __contains__(self, operands) -> bool:
        return satisfies(self.topic, tuple(operands))

    @property
    def count(self) -> int:
        return len(_materialized(self.topic))

    def as_tuple(self) -> tuple[tuple[int, int], ...]:
        return _materialized(self.topic)


def enumerate_space(topic: Topic) -> TopicSpace:
    """All valid operand tuples for an enumerable topic.

    Raises DomainError for word-problem topics, whose template spaces are
    open-ended.
    """
    return TopicSpace(topic)
