"""Digit-column classifiers for addition and subtraction difficulty.

Both classifiers simulate the written column algorithm a second grader is
taught, so the difficulty flags mean exactly what they mean on paper:
a carry out of any column is regrouping, a borrow into any column is
regrouping in the next place up.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class AdditionClass:
    regrouping: bool
    zero_in_addend: bool


@dataclass(frozen=True)
class SubtractionClass:
    borrow_tens: bool
    borrow_hundreds: bool
    zero_difficulty: bool


def _digits(n: int) -> list[int]:
    """Decimal digits of ``n``, least significant first."""
    out = []
    while n:
        out.append(n % 10)
        n //= 10
    return out or [0]


def classify_addition(a: int, b: int) -> AdditionClass:
    """Classify ``a + b`` by column simulation with carry propagation.

    ``regrouping`` is set when any column (including a propagated carry)
    sums above 9. ``zero_in_addend`` is set when any decimal digit of
    either addend is 0.
    """
    if not (10 <= a <= 999) or not (10 <= b <= 999):
        raise DomainError(f"addends must be 2-to-3-digit numbers, got {a} and {b}")
    da, db = _digits(a), _digits(b)
    carry = 0
    regrouping = False
    for i in range(max(len(da), len(db))):
        column = (da[i] if i < len(da) else 0) + (db[i] if i < len(db) else 0) + carry
        if column > 9:
            regrouping = True
            carry = 1
        else:
            carry = 0
    return AdditionClass(
        regrouping=regrouping,
        zero_in_addend=0 in da or 0 in db,
    )


def classify_subtraction(minuend: int, subtrahend: int) -> SubtractionClass:
    """Classify ``minuend - subtrahend`` by column-wise borrow simulation.

    ``borrow_tens`` means the ones column needed a borrow, ``borrow_hundreds``
    means the tens column (after any earlier borrow) needed one, and
    ``zero_difficulty`` means a borrow had to pass through a 0 digit of the
    minuend on its way to the next place up.
    """
    if not 10 <= subtrahend <= 999 or not 10 <= minuend <= 999:
        raise DomainError(
            f"operands must be 2-to-3-digit numbers, got {minuend} and {subtrahend}"
        )
    if subtrahend > minuend:
        raise DomainError("subtrahend may not exceed minuend; negative results are out of scope")
    dm, ds = _digits(minuend), _digits(subtrahend)
    borrowed = [False] * len(dm)
    borrow = 0
    for i in range(len(dm)):
        column = dm[i] - (ds[i] if i < len(ds) else 0) - borrow
        if column < 0:
            borrowed[i] = True
            borrow = 1
        else:
            borrow = 0
    zero_difficulty = any(
        borrowed[i] and dm[i + 1] == 0 for i in range(len(dm) - 1)
    )
    return SubtractionClass(
        borrow_tens=borrowed[0],
        borrow_hundreds=borrowed[1] if len(dm) > 1 else False,
        zero_difficulty=zero_difficulty,
    )
