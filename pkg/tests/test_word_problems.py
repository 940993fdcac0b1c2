import json
import random

import pytest

from mathquest.curriculum import Lesson
from mathquest.errors import ConfigurationError
from mathquest.word_problems import (
    default_templates,
    instantiate,
    load_templates,
)

SUM_MAX = 999
PRODUCT_MAX = 81
DIVIDEND_MAX = 81


def _template_entry(**overrides):
    entry = {
        "template_id": "t1",
        "lesson": "Addition",
        "text": "{a} plus {b}?",
        "operator": "+",
        "slots": [
            {"name": "a", "min": 10, "max": 400},
            {"name": "b", "min": 10, "max": 400},
        ],
    }
    entry.update(overrides)
    return entry


def _write_templates(tmp_path, entries):
    path = tmp_path / "templates.json"
    path.write_text(json.dumps(entries), encoding="utf-8")
    return path


class TestLoading:
    def test_packaged_templates_load_and_cover_all_lessons(self):
        registry = default_templates()
        for lesson in Lesson:
            assert len(registry.for_lesson(lesson)) >= 3

    def test_missing_file_is_a_configuration_error(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_templates(tmp_path / "nope.json")

    def test_addition_overflow_rejected(self, tmp_path):
        entry = _template_entry(
            slots=[
                {"name": "a", "min": 10, "max": 600},
                {"name": "b", "min": 10, "max": 600},
            ]
        )
        path = _write_templates(tmp_path, [entry])
        with pytest.raises(ConfigurationError):
            load_templates(path)

    def test_negative_difference_rejected(self, tmp_path):
        entry = _template_entry(
            operator="-",
            slots=[
                {"name": "a", "min": 100, "max": 300},
                {"name": "b", "min": 50, "max": 200},
            ],
        )
        path = _write_templates(tmp_path, [entry])
        with pytest.raises(ConfigurationError):
            load_templates(path)

    def test_division_quotient_leak_rejected(self, tmp_path):
        entry = _template_entry(
            operator="/",
            text="Share {total} among {groups}, so {each} each?",
            slots=[
                {"name": "each", "min": 1, "max": 9},
                {"name": "groups", "min": 1, "max": 9},
            ],
        )
        path = _write_templates(tmp_path, [entry])
        with pytest.raises(ConfigurationError):
            load_templates(path)

    def test_duplicate_template_ids_rejected(self, tmp_path):
        path = _write_templates(tmp_path, [_template_entry(), _template_entry()])
        with pytest.raises(ConfigurationError):
            load_templates(path)

    def test_undefined_placeholder_rejected(self, tmp_path):
        entry = _template_entry(text="{a} plus {mystery}?")
        path = _write_templates(tmp_path, [entry])
        with pytest.raises(ConfigurationError):
            load_templates(path)


class TestInstantiation:
    def test_every_template_yields_valid_problems_for_many_draws(self):
        registry = default_templates()
        rng = random.Random(2024)
        for template in registry.templates:
            for _ in range(200):
                operands, answer, text = instantiate(template, rng)
                a, b = operands
                assert "{" not in text and "}" not in text
                if template.operator == "+":
                    assert answer == a + b <= SUM_MAX
                elif template.operator == "-":
                    assert answer == a - b >= 0
                elif template.operator == "*":
                    assert answer == a * b <= PRODUCT_MAX
                else:
                    assert b >= 1
                    assert a <= DIVIDEND_MAX
                    assert a % b == 0
                    assert answer == a // b

    def test_extreme_slot_values_stay_valid(self):
        # The load-time bounds guarantee even the worst corner is in range.
        registry = default_templates()

        class Corner:
            def __init__(self, use_max):
                self.use_max = use_max

            def randint(self, low, high):
                return high if self.use_max else low

        for template in registry.templates:
            for use_max in (False, True):
                operands, answer, _ = instantiate(template, Corner(use_max))
                a, b = operands
                if template.operator == "+":
                    assert a + b <= SUM_MAX
                elif template.operator == "-":
                    assert a - b >= 0
                elif template.operator == "*":
                    assert a * b <= PRODUCT_MAX
                else:
                    assert a <= DIVIDEND_MAX and a % b == 0

    def test_instantiation_is_deterministic_for_a_seeded_rng(self):
        registry = default_templates()
        template = registry.for_lesson(Lesson.DIVISION)[0]
        first = instantiate(template, random.Random(7))
        second = instantiate(template, random.Random(7))
        assert first == second
