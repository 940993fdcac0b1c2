"""Problem construction: seeded generation, display forms, and illustrations.

Generation is deterministic per (topic, seed). Operands are drawn by
rejection sampling against the topic's constraint predicate; if a draw
streak ever exhausts the cap, the generator falls back to picking directly
from the enumerated space, so narrow topics still terminate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from . import spaces
from .curriculum import Lesson, Topic, TopicCode
from .errors import DomainError
from .word_problems import TemplateRegistry, default_templates, instantiate

REJECTION_CAP = 1000


class Operator(Enum):
    ADD = "+"
    SUBTRACT = "−"
    MULTIPLY = "×"
    DIVIDE = "÷"

    @property
    def symbol(self) -> str:
        return self.value


class Presentation(Enum):
    NUMERIC_SENTENCE = "numeric-sentence"
    SETS_OF_OBJECTS = "sets-of-objects"
    NUMBER_LINE = "number-line"
    SENTENCE_PARTS_QUERY = "sentence-parts-query"
    WORD_PROBLEM = "word-problem"


@dataclass(frozen=True, eq=True)
class Problem:
    """One arithmetic task. ``answer`` is always the exact operator result."""

    topic: Topic
    operands: tuple[int, ...]
    operator: Operator
    answer: int
    presentation: Presentation
    prompt_text: str
    sentence_parts: tuple[tuple[str, int], ...] | None = None

    @property
    def parts(self) -> dict[str, int] | None:
        return dict(self.sentence_parts) if self.sentence_parts else None


@dataclass(frozen=True)
class NumericSentenceDisplay:
    text: str


@dataclass(frozen=True)
class SetsDisplay:
    groups: int
    group_size: int
    total: int


@dataclass(frozen=True)
class NumberLineDisplay:
    jump_size: int
    jump_count: int
    positions: tuple[int, ...]


class DivisionModel(Enum):
    PARTITION = "partition"
    DISTRIBUTION = "distribution"
    REPEATED_SUBTRACTION = "repeated-subtraction"
    INVERSE_MULTIPLICATION = "inverse-multiplication"


@dataclass(frozen=True)
class GroupingIllustration:
    model: DivisionModel
    groups: int
    per_group: int
    total: int


@dataclass(frozen=True)
class RepeatedSubtractionIllustration:
    sequence: tuple[int, ...]
    steps: int


@dataclass(frozen=True)
class InverseMultiplicationIllustration:
    factor_a: int
    factor_b: int
    product: int
    sentence: str


_TOPIC_OPERATORS = {
    Lesson.ADDITION: Operator.ADD,
    Lesson.SUBTRACTION: Operator.SUBTRACT,
    Lesson.MULTIPLICATION: Operator.MULTIPLY,
    Lesson.DIVISION: Operator.DIVIDE,
}


def _rng_for(topic: Topic, seed) -> random.Random:
    # String seeding hashes via sha512 in CPython, stable across runs.
    return random.Random(f"{topic.code.value}|{seed}")


def _draw(
    rng: random.Random,
    sample: Callable[[random.Random], tuple[int, int]],
    topic: Topic,
    max_draws: int,
) -> tuple[int, int]:
    """Rejection-sample operands; fall back to the enumerated space."""
    for _ in range(max_draws):
        operands = sample(rng)
        if spaces.satisfies(topic, operands):
            return operands
    return rng.choice(spaces.enumerate_space(topic).as_tuple())


def _numeric_prompt(a: int, op: Operator, b: int) -> str:
    return f"{a} {op.symbol} {b} = ?"


def _apply(op: Operator, a: int, b: int) -> int:
    if op is Operator.ADD:
        return a + b
    if op is Operator.SUBTRACT:
        return a - b
    if op is Operator.MULTIPLY:
        return a * b
    return a // b


def generate_problem(
    topic: Topic,
    seed,
    *,
    templates: TemplateRegistry | None = None,
    max_draws: int = REJECTION_CAP,
) -> Problem:
    """Generate the problem a (topic, seed) pair always maps to.

    Word-problem topics pull from ``templates`` (the packaged set by
    default); every other topic samples its operand space directly.
    """
    rng = _rng_for(topic, seed)
    operator = _TOPIC_OPERATORS[topic.lesson]
    code = topic.code

    if topic.is_word_problem:
        registry = templates or default_templates()
        template = rng.choice(registry.for_lesson(topic.lesson))
        operands, answer, text = instantiate(template, rng)
        return Problem(
            topic=topic,
            operands=operands,
            operator=operator,
            answer=answer,
            presentation=Presentation.WORD_PROBLEM,
            prompt_text=text,
        )

    if code in (TopicCode.MUL_REPEATED_SETS, TopicCode.MUL_REPEATED_NUMBER_LINE):
        operands = _draw(rng, lambda r: (r.randint(2, 9), r.randint(1, 9)), topic, max_draws)
        groups, size = operands
        if code is TopicCode.MUL_REPEATED_SETS:
            presentation = Presentation.SETS_OF_OBJECTS
            prompt = f"{groups} sets of {size} objects. How many objects in all?"
        else:
            presentation = Presentation.NUMBER_LINE
            prompt = f"Make {groups} jumps of {size} on the number line. Where do you land?"
        return Problem(
            topic=topic,
            operands=operands,
            operator=operator,
            answer=groups * size,
            presentation=presentation,
            prompt_text=prompt,
        )

    if code is TopicCode.MUL_SENTENCE_PARTS:
        a, b = _draw(rng, lambda r: (r.randint(1, 9), r.randint(1, 9)), topic, max_draws)
        answer = a * b
        parts = (("multiplicand", a), ("multiplier", b), ("product", answer))
        return Problem(
            topic=topic,
            operands=(a, b),
            operator=operator,
            answer=answer,
            presentation=Presentation.SENTENCE_PARTS_QUERY,
            prompt_text=f"What is the product in {a} {operator.symbol} {b} = ?",
            sentence_parts=parts,
        )

    if code is TopicCode.MUL_ZERO_PROPERTY:
        n = rng.randint(0, 9)
        operands = (0, n) if rng.random() < 0.5 else (n, 0)
        a, b = operands
        return Problem(
            topic=topic,
            operands=operands,
            operator=operator,
            answer=0,
            presentation=Presentation.NUMERIC_SENTENCE,
            prompt_text=_numeric_prompt(a, operator, b),
        )

    if code is TopicCode.MUL_PRODUCTS_TO_81:
        operands = _draw(rng, lambda r: (r.randint(1, 99), r.randint(1, 9)), topic, max_draws)

    elif code is TopicCode.DIV_SENTENCE_PARTS:
        quotient, divisor = rng.randint(1, 9), rng.randint(1, 9)
        dividend = quotient * divisor
        parts = (("dividend", dividend), ("divisor", divisor), ("quotient", quotient))
        return Problem(
            topic=topic,
            operands=(dividend, divisor),
            operator=operator,
            answer=quotient,
            presentation=Presentation.SENTENCE_PARTS_QUERY,
            prompt_text=f"What is the quotient in {dividend} {operator.symbol} {divisor} = ?",
            sentence_parts=parts,
        )

    elif code in (TopicCode.DIV_ILLUSTRATE, TopicCode.DIV_DIVIDENDS_TO_81):
        quotient, divisor = rng.randint(1, 9), rng.randint(1, 9)
        operands = (quotient * divisor, divisor)

    elif code in spaces.ADDITION_FLAGS:
        operands = _draw(
            rng, lambda r: (r.randint(10, 999), r.randint(10, 999)), topic, max_draws
        )

    elif code in spaces.SUBTRACTION_FLAGS:
        operands = _draw(
            rng, lambda r: (r.randint(10, 999), r.randint(10, 999)), topic, max_draws
        )

    else:  # pragma: no cover - every topic is handled above
        raise DomainError(f"cannot generate problems for topic {code.value}")

    a, b = operands
    return Problem(
        topic=topic,
        operands=operands,
        operator=operator,
        answer=_apply(operator, a, b),
        presentation=Presentation.NUMERIC_SENTENCE,
        prompt_text=_numeric_prompt(a, operator, b),
    )


def problem_to_dict(problem: Problem) -> dict:
    return {
        "topic": problem.topic.code.value,
        "operands": list(problem.operands),
        "operator": problem.operator.name,
        "answer": problem.answer,
        "presentation": problem.presentation.value,
        "prompt_text": problem.prompt_text,
        "sentence_parts": (
            [[role, value] for role, value in problem.sentence_parts]
            if problem.sentence_parts
            else None
        ),
    }


def problem_from_dict(data: dict) -> Problem:
    from .curriculum import topic_by_code

    parts = data.get("sentence_parts")
    return Problem(
        topic=topic_by_code(data["topic"]),
        operands=tuple(data["operands"]),
        operator=Operator[data["operator"]],
        answer=data["answer"],
        presentation=Presentation(data["presentation"]),
        prompt_text=data["prompt_text"],
        sentence_parts=tuple((role, value) for role, value in parts) if parts else None,
    )


def render_presentation(problem: Problem, form: Presentation):
    """Build the display structure for a problem in the requested form.

    Object sets and number lines only make sense for multiplication (the
    repeated-addition reading); asking for them elsewhere is a caller bug.
    """
    if form is Presentation.NUMERIC_SENTENCE:
        a, b = problem.operands
        return NumericSentenceDisplay(text=_numeric_prompt(a, problem.operator, b))
    if form in (Presentation.SETS_OF_OBJECTS, Presentation.NUMBER_LINE):
        if problem.operator is not Operator.MULTIPLY:
            raise DomainError(f"{form.value} rendering requires a multiplication problem")
        groups, size = problem.operands
        if form is Presentation.SETS_OF_OBJECTS:
            return SetsDisplay(groups=groups, group_size=size, total=problem.answer)
        positions = tuple(size * i for i in range(groups + 1))
        return NumberLineDisplay(jump_size=size, jump_count=groups, positions=positions)
    raise DomainError(f"no renderer for display form {form.value}")


def parts_of_sentence(problem: Problem) -> dict[str, int]:
    """Name the three parts of a multiplication or division sentence."""
    if problem.operator is Operator.MULTIPLY:
        a, b = problem.operands
        return {"multiplicand": a, "multiplier": b, "product": problem.answer}
    if problem.operator is Operator.DIVIDE:
        dividend, divisor = problem.operands
        return {"dividend": dividend, "divisor": divisor, "quotient": problem.answer}
    raise DomainError("sentence parts are defined for multiplication and division only")


def illustrate_division(problem: Problem, model: DivisionModel):
    """Illustrate a division fact in one of the four taught models."""
    if problem.operator is not Operator.DIVIDE:
        raise DomainError("only division problems can be illustrated")
    dividend, divisor = problem.operands
    quotient = problem.answer
    if model is DivisionModel.PARTITION:
        # Split the dividend into `divisor` equal groups.
        return GroupingIllustration(
            model=model, groups=divisor, per_group=quotient, total=dividend
        )
    if model is DivisionModel.DISTRIBUTION:
        # Deal `divisor` items per round until the dividend runs out.
        return GroupingIllustration(
            model=model, groups=quotient, per_group=divisor, total=dividend
        )
    if model is DivisionModel.REPEATED_SUBTRACTION:
        sequence = tuple(range(dividend, -1, -divisor)) if divisor else (dividend,)
        return RepeatedSubtractionIllustration(sequence=sequence, steps=quotient)
    return InverseMultiplicationIllustration(
        factor_a=divisor,
        factor_b=quotient,
        product=dividend,
        sentence=f"{divisor} {Operator.MULTIPLY.symbol} {quotient} = {dividend}",
    )
