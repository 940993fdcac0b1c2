import pytest

from mathquest.classify import classify_addition, classify_subtraction
from mathquest.curriculum import TopicCode, curriculum, topic_by_code
from mathquest.errors import DomainError
from mathquest.spaces import enumerate_space, satisfies

from .oracles import addition_regroups, has_zero_digit, subtraction_borrows


def test_division_space_matches_double_loop_brute_force():
    # Oracle: independent double loop over divisor and dividend.
    expected = set()
    for divisor in range(1, 10):
        for dividend in range(0, 82):
            if dividend % divisor == 0:
                expected.add((dividend, divisor))
    space = enumerate_space(topic_by_code(TopicCode.DIV_DIVIDENDS_TO_81))
    members = set(space)
    assert members == expected
    assert space.count == len(expected) == 236


def test_zero_property_space_is_pairs_with_a_zero_factor():
    space = enumerate_space(topic_by_code(TopicCode.MUL_ZERO_PROPERTY))
    members = list(space)
    assert len(members) == space.count == 19
    assert all(a == 0 or b == 0 for a, b in members)
    assert len(set(members)) == len(members)


def test_products_to_81_space_by_brute_force():
    expected = {
        (a, b) for a in range(1, 100) for b in range(1, 10) if a * b <= 81
    }
    space = enumerate_space(topic_by_code(TopicCode.MUL_PRODUCTS_TO_81))
    assert set(space) == expected


def test_addition_no_regroup_space_passes_string_oracle():
    space = enumerate_space(topic_by_code(TopicCode.ADD_NO_REGROUP))
    count = 0
    for a, b in space:
        count += 1
        assert not addition_regroups(a, b)
        assert a + b <= 999
        assert 10 <= a <= 999 and 10 <= b <= 999
    assert count == space.count > 0


def test_zero_addend_space_members_have_zero_digits():
    space = enumerate_space(topic_by_code(TopicCode.ADD_ZERO_REGROUP))
    sample = space.as_tuple()[::251]
    assert sample
    for a, b in sample:
        assert has_zero_digit(a) or has_zero_digit(b)
        assert addition_regroups(a, b)
        cls = classify_addition(a, b)
        assert cls.regrouping and cls.zero_in_addend


def test_subtraction_space_members_match_flags():
    space = enumerate_space(topic_by_code(TopicCode.SUB_REGROUP_TENS_HUNDREDS_ZERO))
    sample = space.as_tuple()[::97]
    assert sample
    for m, s in sample:
        borrow_at, crossed = subtraction_borrows(m, s)
        assert borrow_at[0] and borrow_at[1] and crossed
        cls = classify_subtraction(m, s)
        assert cls.borrow_tens and cls.borrow_hundreds and cls.zero_difficulty


def test_membership_operator_uses_constraints():
    space = enumerate_space(topic_by_code(TopicCode.DIV_DIVIDENDS_TO_81))
    assert (81, 9) in space
    assert (80, 9) not in space


def test_count_equals_iterator_length_for_small_spaces():
    for code in (
        TopicCode.MUL_REPEATED_SETS,
        TopicCode.MUL_SENTENCE_PARTS,
        TopicCode.MUL_ZERO_PROPERTY,
        TopicCode.DIV_SENTENCE_PARTS,
    ):
        space = enumerate_space(topic_by_code(code))
        assert space.count == len(list(space))


def test_word_problem_topics_are_not_enumerable():
    for topic in curriculum():
        if topic.is_word_problem:
            with pytest.raises(DomainError):
                enumerate_space(topic)
        else:
            enumerate_space(topic)


def test_satisfies_rejects_out_of_range_pairs():
    add_topic = topic_by_code(TopicCode.ADD_NO_REGROUP)
    assert not satisfies(add_topic, (5, 20))
    assert not satisfies(add_topic, (990, 990))  # sum above 999
    div_topic = topic_by_code(TopicCode.DIV_DIVIDENDS_TO_81)
    assert not satisfies(div_topic, (82, 1))
    assert not satisfies(div_topic, (10, 0))
