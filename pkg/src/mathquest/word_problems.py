"""Word-problem templates: loading, validation, and instantiation.

Templates live in a JSON file so new stories can ship without code changes.
Validation is strict at load time: every combination of in-range slot values
must yield a well-formed problem (non-negative difference, product within
bounds, exact division), so instantiation can never fail at play time.
"""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .curriculum import Lesson
from .errors import ConfigurationError

OPERATOR_SYMBOLS = {"+": "+", "-": "-", "*": "*", "/": "/"}

SUM_MAX = 999
PRODUCT_MAX = 81
DIVIDEND_MAX = 81


@dataclass(frozen=True)
class SlotSpec:
    name: str
    min: int
    max: int


@dataclass(frozen=True)
class WordProblemTemplate:
    template_id: str
    lesson: Lesson
    text: str
    operator: str  # one of + - * /
    slots: tuple[SlotSpec, ...]


class TemplateRegistry:
    """All loaded templates, grouped by lesson in file order."""

    def __init__(self, templates: list[WordProblemTemplate]):
        self._by_lesson: dict[Lesson, tuple[WordProblemTemplate, ...]] = {}
        for lesson in Lesson:
            group = tuple(t for t in templates if t.lesson is lesson)
            self._by_lesson[lesson] = group
        self.templates = tuple(templates)

    def for_lesson(self, lesson: Lesson) -> tuple[WordProblemTemplate, ...]:
        return self._by_lesson[lesson]


def _placeholders(text: str) -> set[str]:
    return {
        field for _, field, _, _ in string.Formatter().parse(text) if field is not None
    }


def _validate(template: WordProblemTemplate) -> None:
    tid = template.template_id
    if len(template.slots) != 2:
        raise ConfigurationError(f"template {tid}: exactly two slots are required")
    first, second = template.slots
    for slot in template.slots:
        if slot.min < 0 or slot.min > slot.max:
            raise ConfigurationError(f"template {tid}: bad range for slot {slot.name}")
    op = template.operator
    allowed_names = {s.name for s in template.slots}
    if op == "+":
        if first.max + second.max > SUM_MAX:
            raise ConfigurationError(f"template {tid}: sums may exceed {SUM_MAX}")
    elif op == "-":
        if first.min < second.max:
            raise ConfigurationError(f"template {tid}: difference may go negative")
    elif op == "*":
        if first.max * second.max > PRODUCT_MAX:
            raise ConfigurationError(f"template {tid}: products may exceed {PRODUCT_MAX}")
    elif op == "/":
        # Slots are (quotient, group count); the dividend is their product.
        if first.max * second.max > DIVIDEND_MAX:
            raise ConfigurationError(f"template {tid}: dividends may exceed {DIVIDEND_MAX}")
        if second.min < 1:
            raise ConfigurationError(f"template {tid}: divisor slot must stay >= 1")
        # The quotient is the answer; printing it would give the answer away.
        allowed_names = {second.name, "total"}
    else:
        raise ConfigurationError(f"template {tid}: unknown operator {op!r}")
    used = _placeholders(template.text)
    if not used:
        raise ConfigurationError(f"template {tid}: text has no numeric slots")
    unknown = used - allowed_names
    if unknown:
        raise ConfigurationError(
            f"template {tid}: text references undefined or forbidden slots {sorted(unknown)}"
        )


def _parse(entry: dict) -> WordProblemTemplate:
    try:
        slots = tuple(
            SlotSpec(name=s["name"], min=int(s["min"]), max=int(s["max"]))
            for s in entry["slots"]
        )
        template = WordProblemTemplate(
            template_id=str(entry["template_id"]),
            lesson=Lesson(entry["lesson"]),
            text=str(entry["text"]),
            operator=str(entry["operator"]),
            slots=slots,
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigurationError(f"malformed template entry: {exc}") from exc
    _validate(template)
    return template


def load_templates(path: str | Path | None = None) -> TemplateRegistry:
    """Load and validate a template file; None loads the packaged default."""
    if path is None:
        raw = (
            resources.files("mathquest")
            .joinpath("data/word_problem_templates.json")
            .read_text(encoding="utf-8")
        )
    else:
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"template file not found: {path}")
        raw = path.read_text(encoding="utf-8")
    try:
        entries = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"template file is not valid JSON: {exc}") from exc
    if not isinstance(entries, list) or not entries:
        raise ConfigurationError("template file must hold a non-empty list")
    templates = [_parse(e) for e in entries]
    seen = set()
    for t in templates:
        if t.template_id in seen:
            raise ConfigurationError(f"duplicate template_id {t.template_id}")
        seen.add(t.template_id)
    registry = TemplateRegistry(templates)
    for lesson in Lesson:
        if len(registry.for_lesson(lesson)) < 3:
            raise ConfigurationError(
                f"need at least 3 templates for {lesson.display_name}"
            )
    return registry


def instantiate(
    template: WordProblemTemplate, rng: random.Random
) -> tuple[tuple[int, int], int, str]:
    """Fill a template's slots from ``rng``.

    Returns (operands, answer, prompt text). Slot order is significant:
    for subtraction the first slot is the minuend, for division the slots
    are (quotient, divisor) and the dividend is derived.
    """
    values = {slot.name: rng.randint(slot.min, slot.max) for slot in template.slots}
    first, second = (values[s.name] for s in template.slots)
    op = template.operator
    if op == "+":
        operands, answer = (first, second), first + second
        fields = dict(values)
    elif op == "-":
        operands, answer = (first, second), first - second
        fields = dict(values)
    elif op == "*":
        operands, answer = (first, second), first * second
        fields = dict(values)
    else:
        dividend = first * second
        operands, answer = (dividend, second), first
        fields = {template.slots[1].name: second, "total": dividend}
    return operands, answer, template.text.format(**fields)


_DEFAULT_REGISTRY: TemplateRegistry | None = None


def default_templates() -> TemplateRegistry:
    global _DEFAULT_REGISTRY
    if _DEFAULT_REGISTRY is None:
        _DEFAULT_REGISTRY = load_templates(None)
    return _DEFAULT_REGISTRY
