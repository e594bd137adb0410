"""Verdict logic: exact first, typed comparisons, fuzzy fallback."""

import random
import string

import pytest

from kbqa_eval.ingest import QuestionRecord, ReferenceAnswer
from kbqa_eval.matching import (
    EmbedderUnavailable,
    MatchConfig,
    MatchResult,
    TrigramEmbedder,
    evaluate_answer,
    exact_match,
    extract_candidates,
    fuzzy_match,
    parse_boolean,
    parse_date,
    parse_number,
    reference_strings,
)
from kbqa_eval.taxonomy import AnswerType, FeatureTags


def make_record(gold, answer_type=AnswerType.MISC, rid="t:1", text="placeholder?"):
    refs = [ReferenceAnswer(canonical=g) if isinstance(g, str) else g for g in gold]
    tags = FeatureTags(answer_type=answer_type)
    return QuestionRecord(id=rid, dataset_id="kqapro", text=text, gold=refs, tags=tags)


class BrokenEmbedder:
    def embed(self, texts):
        raise EmbedderUnavailable("service down")


# exact path


def test_exact_match_on_normalized_candidate():
    record = make_record(["Paris"])
    result = evaluate_answer(record, "The capital is Paris.")
    assert result.correct
    assert result.method == "exact"
    assert result.best_similarity is None


def test_exact_match_through_alias():
    gold = [ReferenceAnswer(canonical="New York City", aliases=["NYC", "the Big Apple"])]
    record = make_record(gold)
    tree = (
        "(S (NP (PRP They)) (VP (VBP call) (NP (PRP it)) "
        "(NP (DT the) (NNP Big) (NNP Apple))) (. .))"
    )
    result = evaluate_answer(record, "They call it the Big Apple.", parse=tree)
    assert result.correct
    assert result.method == "exact"


def test_alias_still_caught_without_parse():
    gold = [ReferenceAnswer(canonical="New York City", aliases=["NYC", "the Big Apple"])]
    record = make_record(gold)
    result = evaluate_answer(record, "They call it the Big Apple.")
    assert result.correct


def test_exact_requires_whole_candidate_not_substring():
    record = make_record(["York"])
    result = evaluate_answer(record, "New York City")
    # "york" never appears as its own candidate segment
    assert not result.correct


# fuzzy path


def test_fuzzy_match_above_threshold():
    record = make_record(["New York City"])
    config = MatchConfig(tau=0.5)
    result = evaluate_answer(record, "new york", config)
    assert result.correct
    assert result.method == "fuzzy"
    assert result.best_similarity is not None
    assert result.best_similarity >= 0.5


def test_fuzzy_below_threshold_is_none():
    record = make_record(["photosynthesis"])
    config = MatchConfig(tau=0.9)
    result = evaluate_answer(record, "the moon landing", config)
    assert not result.correct
    assert result.method == "none"
    assert result.best_similarity is not None
    assert result.best_similarity < 0.9


def test_broken_embedder_falls_back_with_flag():
    record = make_record(["New York City"])
    config = MatchConfig(tau=0.5, embedder=BrokenEmbedder())
    result = evaluate_answer(record, "new york", config)
    assert result.correct
    assert "fallback_embedder" in result.flags


def test_exact_skips_broken_embedder_entirely():
    record = make_record(["Paris"])
    config = MatchConfig(embedder=BrokenEmbedder())
    result = evaluate_answer(record, "Paris", config)
    assert result.correct
    assert result.method == "exact"
    assert result.flags == ()


# typed: numbers


def test_number_inside_sentence_matches():
    record = make_record(["42"], answer_type=AnswerType.NUM)
    result = evaluate_answer(record, "There are 42 of them.")
    assert result.correct
    assert result.method == "exact"


def test_number_with_thousands_separator():
    record = make_record(["1,234"], answer_type=AnswerType.NUM)
    result = evaluate_answer(record, "It has 1234 seats.")
    assert result.correct


def test_number_decimal_equality():
    record = make_record(["3.5"], answer_type=AnswerType.NUM)
    assert evaluate_answer(record, "about 3.5 million").correct
    assert not evaluate_answer(record, "about 3.6 million").correct


def test_wrong_number_never_fuzzy():
    record = make_record(["42"], answer_type=AnswerType.NUM)
    config = MatchConfig(tau=0.0)
    result = evaluate_answer(record, "There are 43 of them.", config)
    assert not result.correct
    assert result.method == "none"


# typed: dates


def test_year_only_gold_accepts_fuller_date():
    record = make_record(["1648"], answer_type=AnswerType.DATE)
    result = evaluate_answer(record, "The war ended in October 1648.")
    assert result.correct
    assert result.method == "exact"


def test_full_iso_gold_matches_prose_date():
    record = make_record(["1648-10-24"], answer_type=AnswerType.DATE)
    assert evaluate_answer(record, "It was signed on October 24, 1648.").correct
    assert evaluate_answer(record, "24 October 1648").correct


def test_full_gold_rejects_bare_year():
    record = make_record(["1648-10-24"], answer_type=AnswerType.DATE)
    result = evaluate_answer(record, "It happened in 1648.")
    assert not result.correct
    assert result.method == "none"


def test_wrong_date_never_fuzzy():
    record = make_record(["1969-07-20"], answer_type=AnswerType.DATE)
    config = MatchConfig(tau=0.0)
    result = evaluate_answer(record, "July 21, 1969", config)
    assert not result.correct
    assert result.method == "none"


# typed: booleans


def test_boolean_yes_against_true_gold():
    record = make_record(["yes"], answer_type=AnswerType.BOOLEAN)
    assert evaluate_answer(record, "Yes, it is.").correct
    assert evaluate_answer(record, "Indeed, that is the case.").correct


def test_boolean_no_against_true_gold_never_fuzzy():
    record = make_record(["no"], answer_type=AnswerType.BOOLEAN)
    config = MatchConfig(tau=0.0)
    result = evaluate_answer(record, "Yes, it is.", config)
    assert not result.correct
    assert result.method == "none"


def test_boolean_negation_cue_matches_false_gold():
    record = make_record(["no"], answer_type=AnswerType.BOOLEAN)
    assert evaluate_answer(record, "No, that is wrong.").correct
    assert evaluate_answer(record, "It is not the case.").correct


def test_boolean_without_cue_is_none():
    record = make_record(["yes"], answer_type=AnswerType.BOOLEAN)
    result = evaluate_answer(record, "The capital of France.")
    assert not result.correct
    assert result.method == "none"


def test_boolean_exact_literal_still_wins():
    record = make_record(["true"], answer_type=AnswerType.BOOLEAN)
    result = evaluate_answer(record, "true")
    assert result.correct
    assert result.method == "exact"


# degenerate inputs


def test_empty_reference_set_is_none():
    tags = FeatureTags(answer_type=AnswerType.UNA)
    record = QuestionRecord(
        id="t:una", dataset_id="mkqa", text="unanswerable?", gold=[], tags=tags
    )
    result = evaluate_answer(record, "I do not know.")
    assert not result.correct
    assert result.method == "none"
    assert "no_reference" in result.flags


def test_blank_output_is_none():
    record = make_record(["Paris"])
    result = evaluate_answer(record, "   ")
    assert not result.correct
    assert "empty_output" in result.flags


def test_match_result_validates_method():
    with pytest.raises(ValueError):
        MatchResult(correct=True, method="guess")
    with pytest.raises(ValueError):
        MatchResult(correct=True, method="none")


def test_reference_strings_dedup_in_order():
    refs = [
        ReferenceAnswer(canonical="A", aliases=["B", "A"]),
        ReferenceAnswer(canonical="B", aliases=["C"]),
    ]
    assert reference_strings(refs) == ["A", "B", "C"]


# parsing helpers


def test_parse_number_handles_commas_and_signs():
    assert parse_number("1,234") == 1234.0
    assert parse_number("-7") == -7.0
    assert parse_number("abc") is None


def test_parse_date_forms():
    assert parse_date("1648-10-24") == (1648, 10, 24)
    assert parse_date("1648-10") == (1648, 10, None)
    assert parse_date("1648") == (1648, None, None)
    assert parse_date("October 24, 1648") == (1648, 10, 24)
    assert parse_date("24 October 1648") == (1648, 10, 24)
    assert parse_date("October 1648") == (1648, 10, None)
    assert parse_date("no date here") is None


def test_parse_boolean_forms():
    assert parse_boolean("Yes") is True
    assert parse_boolean("FALSE") is False
    assert parse_boolean("maybe") is None


# properties


def random_phrase(rng):
    words = []
    for _ in range(rng.randint(1, 4)):
        words.append("".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(2, 8))))
    return " ".join(words)


def test_exact_subsumption_property():
    """Whenever plain equality holds, the final verdict is exact-correct."""
    rng = random.Random(20240817)
    config = MatchConfig(tau=0.78)
    for _ in range(1000):
        phrases = [random_phrase(rng) for _ in range(rng.randint(1, 5))]
        target = rng.choice(phrases)
        decorated = ", ".join(phrases)
        record = make_record([target.upper()])
        result = evaluate_answer(record, decorated, config)
        assert result.correct, (target, decorated)
        assert result.method == "exact"


def test_tau_one_fuzzy_adds_nothing_beyond_exact():
    """At tau=1 the fuzzy route only fires on identical strings."""
    rng = random.Random(99)
    config = MatchConfig(tau=1.0, embedder=TrigramEmbedder())
    for _ in range(100):
        answer = random_phrase(rng)
        wrong = random_phrase(rng)
        record = make_record([answer])
        result = evaluate_answer(record, wrong, config)
        if result.correct:
            assert result.method == "exact"


def test_excluded_types_never_fuzzy_property():
    rng = random.Random(7)
    config = MatchConfig(tau=0.0)
    typed = [
        (AnswerType.NUM, lambda: str(rng.randint(0, 999))),
        (AnswerType.DATE, lambda: str(rng.randint(1000, 2025))),
        (AnswerType.BOOLEAN, lambda: rng.choice(["yes", "no"])),
    ]
    for answer_type, gen in typed:
        for _ in range(100):
            record = make_record([gen()], answer_type=answer_type)
            result = evaluate_answer(record, random_phrase(rng), config)
            assert result.method != "fuzzy"


def test_exact_match_helper_reports_pair():
    pool = extract_candidates("The answer is Paris.")
    result = exact_match(pool, ["Paris", "Lyon"])
    assert result is not None
    assert result.matched == ("paris", "Paris")


def test_fuzzy_match_helper_empty_refs():
    pool = extract_candidates("something")
    result = fuzzy_match(pool, ["   "], MatchConfig())
    assert result.method == "none"
