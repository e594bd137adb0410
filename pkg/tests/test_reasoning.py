import json
from pathlib import Path

import pytest

from kbqa_eval.taxonomy import ReasoningClassificationError, ReasoningType, classify_reasoning
from kbqa_eval.taxonomy.sparql import SparqlTokenizeError, extract_triples, tokenize

FIXTURES = Path(__file__).parent / "fixtures"

with (FIXTURES / "sparql_reasoning_fixture.json").open(encoding="utf-8") as fh:
    _CASES = json.load(fh)["cases"]


@pytest.mark.parametrize("case", _CASES, ids=[c["id"] for c in _CASES])
def test_fixture_agreement(case):
    got = {t.value for t in classify_reasoning(case["query"])}
    assert got == set(case["tags"])


def test_fixture_covers_all_tags():
    seen = {tag for case in _CASES for tag in case["tags"]}
    assert seen == {t.value for t in ReasoningType}


def test_count_single_triple():
    got = classify_reasoning("SELECT (COUNT(?x) AS ?c) WHERE { ?x p:P1 e:Q1 }")
    assert got == frozenset({ReasoningType.COUNTING, ReasoningType.SINGLE_HOP})


def test_two_triples_shared_subject():
    got = classify_reasoning("SELECT ?x WHERE { ?x p:P1 e:Q1 . ?x p:P2 e:Q2 }")
    assert got == frozenset({ReasoningType.MULTI_HOP, ReasoningType.STAR_SHAPE})


def test_keywords_inside_literals_are_inert():
    q = 'SELECT ?x WHERE { ?x rdfs:label "FILTER UNION COUNT ORDER BY LIMIT" }'
    assert classify_reasoning(q) == frozenset({ReasoningType.SINGLE_HOP})


def test_iri_contents_are_inert():
    q = "SELECT ?x WHERE { ?x <http://example.org/prop#COUNT> ?y }"
    assert classify_reasoning(q) == frozenset({ReasoningType.SINGLE_HOP})


def test_filter_not_exists_is_set_operation_only():
    q = "SELECT ?x WHERE { ?x p:P1 e:Q1 . FILTER NOT EXISTS { ?x p:P2 ?y } }"
    got = classify_reasoning(q)
    assert ReasoningType.SET_OPERATION in got
    assert ReasoningType.FILTER not in got
    assert ReasoningType.SINGLE_HOP in got  # the EXISTS block adds no hop


def test_comparison_needs_numeric_neighbor():
    q = 'SELECT ?x WHERE { ?x p:P1 ?d . FILTER(?d >= "abc") }'
    got = classify_reasoning(q)
    assert ReasoningType.COMPARATIVE not in got
    assert ReasoningType.FILTER in got


def test_order_by_without_limit_not_comparative():
    q = "SELECT ?x WHERE { ?x p:P1 ?v } ORDER BY ?v"
    assert ReasoningType.COMPARATIVE not in classify_reasoning(q)


def test_freebase_dotted_names_keep_one_triple():
    q = "SELECT ?x WHERE { ns:m.0f8l9c ns:location.location.containedby ?x }"
    assert classify_reasoning(q) == frozenset({ReasoningType.SINGLE_HOP})


def test_semicolon_continuation_counts_triples():
    q = "SELECT ?x WHERE { ?x p:P1 e:Q1 ; p:P2 e:Q2 ; p:P3 ?y }"
    got = classify_reasoning(q)
    assert got == frozenset({ReasoningType.MULTI_HOP, ReasoningType.STAR_SHAPE})


def test_star_requires_variable_hub():
    q = "SELECT ?a ?b WHERE { e:Q1 p:P1 ?a . e:Q1 p:P2 ?b }"
    got = classify_reasoning(q)
    assert ReasoningType.STAR_SHAPE not in got
    assert ReasoningType.MULTI_HOP in got


def test_hub_reused_as_object_breaks_star():
    q = "SELECT ?x WHERE { ?x p:P1 ?y . ?x p:P2 ?x }"
    assert ReasoningType.STAR_SHAPE not in classify_reasoning(q)


def test_empty_query_raises():
    with pytest.raises(ReasoningClassificationError):
        classify_reasoning("   ")


def test_no_tag_raises():
    with pytest.raises(ReasoningClassificationError):
        classify_reasoning("SELECT ?x WHERE { }")


def test_unterminated_literal_raises():
    with pytest.raises(SparqlTokenizeError):
        tokenize('SELECT ?x WHERE { ?x p:P1 "broken }')


def test_extract_triples_values_and_bind_skipped():
    q = (
        "SELECT ?x WHERE { VALUES ?t { e:Q1 e:Q2 } ?x p:P1 ?t . "
        "BIND(YEAR(?d) AS ?y) }"
    )
    assert len(extract_triples(tokenize(q))) == 1
