"""Direction generators and SPARQL keyword expectation checks."""

import pytest

from kbqa_eval.checklist import (
    HintConfigError,
    SwapRuleError,
    check_sparql_expectation,
    check_swap_expectation,
    fallback_nouns,
    gen_dir_cot,
    gen_dir_hint,
    gen_dir_swap,
)
from kbqa_eval.ingest import QuestionRecord, ReferenceAnswer
from kbqa_eval.taxonomy import AnswerType, FeatureTags, ReasoningType


def make_record(text, reasoning=(), answer_type=AnswerType.MISC, rid="t:1"):
    tags = FeatureTags(answer_type=answer_type, reasoning=frozenset(reasoning))
    return QuestionRecord(
        id=rid, dataset_id="kqapro", text=text,
        gold=[ReferenceAnswer(canonical="x")] if answer_type is not AnswerType.UNA else [],
        tags=tags,
    )


# phrase swaps


def test_counting_swap_drops_count_expectation():
    record = make_record(
        "How many films did Spielberg direct?",
        reasoning={ReasoningType.COUNTING, ReasoningType.SINGLE_HOP},
    )
    case = gen_dir_swap(record)
    assert case.kind == "DIR_SWAP"
    assert "which films did Spielberg direct?" in case.turns[0]
    assert case.turns[0].startswith("Write a SPARQL query")
    assert case.expectation == {"required": [], "forbidden": ["COUNT"]}
    assert case.meta["rule"] == "counting_to_listing"


def test_set_operation_swap_forbids_union():
    record = make_record(
        "Which rivers flow through France or Germany?",
        reasoning={ReasoningType.SET_OPERATION, ReasoningType.MULTI_HOP},
    )
    case = gen_dir_swap(record)
    assert " and " in case.turns[0]
    assert "UNION" in case.expectation["forbidden"]


def test_filter_swap_appends_condition_and_requires_filter():
    record = make_record(
        "Which lakes lie in Finland?",
        reasoning={ReasoningType.FILTER},
    )
    case = gen_dir_swap(record)
    assert case.turns[0].rstrip().endswith("?")
    assert "after the year 2000" in case.turns[0]
    assert case.expectation["required"] == ["FILTER"]


def test_comparative_swap_requires_order_and_limit():
    record = make_record(
        "Which building is taller than the Eiffel Tower?",
        reasoning={ReasoningType.COMPARATIVE},
    )
    case = gen_dir_swap(record)
    assert "the tallest among" in case.turns[0]
    assert case.expectation["required"] == ["ORDER BY", "LIMIT"]


def test_swap_without_operation_tag_is_skipped():
    record = make_record("Who wrote Hamlet?", reasoning={ReasoningType.SINGLE_HOP})
    with pytest.raises(SwapRuleError):
        gen_dir_swap(record)


def test_swap_without_matching_phrase_is_skipped():
    record = make_record(
        "Count the satellites of Mars.",
        reasoning={ReasoningType.COUNTING},
    )
    with pytest.raises(SwapRuleError):
        gen_dir_swap(record)


# keyword expectation checks


def test_expected_keyword_found_in_query():
    output = "SELECT (COUNT(?x) AS ?n) WHERE { ?x wdt:P31 wd:Q11424 . }"
    assert check_sparql_expectation(output, {"COUNT"})


def test_keyword_inside_string_literal_does_not_count():
    output = 'SELECT ?x WHERE { ?x rdfs:label "COUNT me in" . }'
    assert not check_sparql_expectation(output, {"COUNT"})


def test_multiword_keyword_needs_adjacent_tokens():
    output = "SELECT ?x WHERE { ?x wdt:P2048 ?h . } ORDER BY DESC(?h) LIMIT 1"
    assert check_sparql_expectation(output, {"ORDER BY", "LIMIT"})
    reordered = "SELECT ?x WHERE { ?x wdt:P569 ?d . } LIMIT 5"
    assert not check_sparql_expectation(reordered, {"ORDER BY"})


def test_keyword_check_is_case_insensitive():
    assert check_sparql_expectation("select ?x where { } order by ?x limit 1",
                                    {"ORDER BY", "LIMIT"})


def test_empty_output_fails_expectation():
    assert not check_sparql_expectation("", {"COUNT"})
    assert not check_sparql_expectation("   ", {"COUNT"})


def test_empty_expectation_rejected():
    with pytest.raises(ValueError):
        check_sparql_expectation("SELECT ?x", set())


def test_prose_output_falls_back_to_word_scan():
    assert check_sparql_expectation("I would use COUNT here \\", {"COUNT"})


def test_swap_expectation_combines_required_and_forbidden():
    expectation = {"required": ["FILTER"], "forbidden": ["COUNT"]}
    good = "SELECT ?x WHERE { ?x wdt:P1082 ?p . FILTER(?p > 5) }"
    bad = "SELECT (COUNT(?x) AS ?n) WHERE { ?x wdt:P1082 ?p . FILTER(?p > 5) }"
    assert check_swap_expectation(good, expectation)
    assert not check_swap_expectation(bad, expectation)
    assert not check_swap_expectation("", expectation)


# hints


def test_boolean_hint_instructs_yes_no():
    record = make_record("Is Paris in France?", answer_type=AnswerType.BOOLEAN)
    case = gen_dir_hint(record)
    assert case.turns == ("Is Paris in France? (Answer with yes or no.)",)
    assert case.expectation == {"answer_type": "Boolean"}


def test_hint_template_without_placeholder_is_config_error():
    record = make_record("Is it blue?", answer_type=AnswerType.BOOLEAN)
    with pytest.raises(HintConfigError):
        gen_dir_hint(record, template=" (yes or no)")


def test_unanswerable_records_take_no_hint():
    record = make_record("impossible?", answer_type=AnswerType.UNA)
    with pytest.raises(ValueError):
        gen_dir_hint(record)


# two-turn prompting


def test_cot_mentions_key_noun_then_asks_original():
    record = make_record("Who directed Jaws?")
    case = gen_dir_cot(record)
    assert len(case.turns) == 2
    assert "Jaws" in case.turns[0]
    assert case.turns[1] == "Who directed Jaws?"


def test_cot_with_no_nouns_uses_full_question():
    record = make_record("is it so?")
    case = gen_dir_cot(record)
    assert case.meta["topic"] == "is it so?"
    assert case.turns[1] == "is it so?"


def test_cot_prefers_noun_provider():
    record = make_record("Who directed Jaws?")
    case = gen_dir_cot(record, noun_provider=lambda text: ["Steven Spielberg"])
    assert "Steven Spielberg" in case.turns[0]


def test_cot_falls_back_when_provider_breaks():
    def broken(text):
        raise RuntimeError("down")

    record = make_record("Who directed Jaws?")
    case = gen_dir_cot(record, noun_provider=broken)
    assert "Jaws" in case.turns[0]


def test_fallback_nouns_skip_leading_sentence_case():
    assert fallback_nouns("Who directed Jaws?") == ["Jaws"]
    assert "Framed Roger Rabbit" in fallback_nouns("Who Framed Roger Rabbit came out when?")


def test_fallback_nouns_longest_word_when_uncapitalized():
    nouns = fallback_nouns("what is the tallest mountain")
    assert nouns == ["mountain"]
