import pytest

from kbqa_eval.taxonomy import AnswerType, classify_answer_type


@pytest.mark.parametrize(
    "question,golds,expected",
    [
        ("Is Berlin the capital of Germany?", ["yes"], AnswerType.BOOLEAN),
        ("Does the moon orbit the earth?", ["True"], AnswerType.BOOLEAN),
        ("How many states does the USA have?", ["50"], AnswerType.NUM),
        ("What is the population of Monaco?", ["39,244"], AnswerType.NUM),
        ("What is the unemployment rate?", ["4.2"], AnswerType.NUM),
        ("When was the treaty signed?", ["1648"], AnswerType.DATE),
        ("When was Alan Turing born?", ["1912-06-23"], AnswerType.DATE),
        ("What date did the wall fall?", ["November 9, 1989"], AnswerType.DATE),
        ("Why do leaves turn red?", ["because of anthocyanin"], AnswerType.WHY),
        ("Who discovered penicillin?", ["Alexander Fleming"], AnswerType.PER),
        ("Where is the Eiffel Tower?", ["Paris"], AnswerType.LOC),
        ("Which company makes Windows?", ["Microsoft Corporation"], AnswerType.ORG),
        ("Name the first chancellor.", ["Otto von Bismarck"], AnswerType.PER),
    ],
)
def test_cascade_closed_class(question, golds, expected):
    assert classify_answer_type(question, golds).answer_type == expected


def test_numbers_win_without_when_cue():
    decision = classify_answer_type("How many episodes are there?", ["1999"])
    assert decision.answer_type == AnswerType.NUM


def test_explicit_dates_beat_year_heuristic():
    decision = classify_answer_type("What is the value?", ["1999-01-01"])
    assert decision.answer_type == AnswerType.DATE


def test_native_tag_wins():
    decision = classify_answer_type("How many?", ["42"], native_tag=AnswerType.BOOLEAN)
    assert decision.answer_type == AnswerType.BOOLEAN
    assert decision.source == "native"


def test_una_never_inferred():
    decision = classify_answer_type("What is glorbix?", [])
    assert decision.answer_type != AnswerType.UNA
    assert decision.low_confidence


def test_una_only_native():
    decision = classify_answer_type("What is glorbix?", [], native_tag=AnswerType.UNA)
    assert decision.answer_type == AnswerType.UNA


def test_fallback_is_low_confidence():
    decision = classify_answer_type("What is the airspeed?", ["fast-ish thing 7"])
    assert decision.answer_type == AnswerType.MISC
    assert decision.low_confidence
    assert decision.source == "fallback"


def test_custom_ner_callable_is_used():
    decision = classify_answer_type("Who?", ["zzz"], ner=lambda s: "ORG")
    assert decision.answer_type == AnswerType.ORG
    assert decision.source == "ner"


def test_mixed_types_fall_through():
    decision = classify_answer_type("What?", ["yes", "42"])
    assert decision.answer_type not in (AnswerType.BOOLEAN, AnswerType.NUM)
