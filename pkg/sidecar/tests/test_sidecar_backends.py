"""Unit tests for the chunker, embedder, and entity tagger rule systems."""

import numpy as np
import pytest

from nlp_sidecar.backends import PhraseChunker, RuleNer, TrigramEmbedder


@pytest.fixture(scope="module")
def chunker():
    return PhraseChunker()


@pytest.fixture(scope="module")
def embedder():
    return TrigramEmbedder()


@pytest.fixture(scope="module")
def ner():
    return RuleNer()


def test_chunker_fixture_sentence(chunker):
    spans = chunker.phrases("the red car stopped")
    labeled = {(s.label, s.text) for s in spans}
    assert ("NP", "the red car") in labeled
    assert ("VP", "stopped") in labeled


def test_chunker_spans_slice_input(chunker):
    corpus = [
        "The tallest building in Dubai opened in 2010.",
        "Did Napoleon lose at Waterloo? Yes, he did.",
        "a, b, and c",
        "2,500 kilometers",
    ]
    for text in corpus:
        for span in chunker.phrases(text):
            assert text[span.start : span.end] == span.text
            assert span.label in ("NP", "VP")


def test_chunker_short_ed_words_stay_nominal(chunker):
    spans = chunker.phrases("the red bed")
    assert [s.label for s in spans] == ["NP"]
    assert spans[0].text == "the red bed"


def test_chunker_suffix_exceptions_stay_in_noun_chunks(chunker):
    spans = chunker.phrases("the united kingdom every morning")
    assert all(s.label == "NP" for s in spans)
    texts = [s.text for s in spans]
    assert "the united kingdom every morning" in texts


def test_chunker_determiner_only_run_is_dropped(chunker):
    assert chunker.phrases("the") == []
    assert chunker.phrases("No.") == []


def test_chunker_punctuation_breaks_chunks(chunker):
    spans = chunker.phrases("Paris, France")
    assert [(s.label, s.text) for s in spans] == [("NP", "Paris"), ("NP", "France")]


def test_chunker_negation_joins_verb_group(chunker):
    spans = chunker.phrases("the committee did not stop the vote")
    assert ("VP", "did not stop") in [(s.label, s.text) for s in spans]


def test_chunker_language_switches_lexicon(chunker):
    german = chunker.phrases("die Zeitung", lang="de")
    assert [(s.label, s.text) for s in german] == [("NP", "die Zeitung")]
    english = chunker.phrases("die Zeitung", lang="en")
    assert ("VP", "die") in [(s.label, s.text) for s in english]


def test_chunker_empty_and_whitespace_inputs(chunker):
    assert chunker.phrases("") == []
    assert chunker.phrases("   \t  ") == []


def test_embedder_shape_and_norms(embedder):
    texts = ["hello world", "der rote Wagen hielt an", "x", "12345"]
    vectors = embedder.embed(texts)
    assert vectors.shape == (len(texts), embedder.dim)
    norms = np.linalg.norm(vectors, axis=1)
    assert np.allclose(norms, 1.0, atol=1e-9)


def test_embedder_is_deterministic(embedder):
    first = embedder.embed(["same text twice"])
    second = embedder.embed(["same text twice"])
    assert np.array_equal(first, second)


def test_embedder_rejects_bare_string(embedder):
    with pytest.raises(TypeError):
        embedder.embed("not a list")


def test_embedder_empty_string_has_no_unit_vector(embedder):
    # the app layer rejects "" with 400 because this row cannot be normalized
    row = embedder.embed([""])[0]
    assert float(np.linalg.norm(row)) == 0.0


def test_ner_given_name_rule(ner):
    assert ("Barack Obama", "PER") in ner.entities("Barack Obama")


def test_ner_gazetteer_and_suffix_rules(ner):
    found = dict(ner.entities("Angela Merkel flew from Berlin to the World Bank near Lake Victoria"))
    assert found["Angela Merkel"] == "PER"
    assert found["Berlin"] == "LOC"
    assert found["World Bank"] == "ORG"
    assert found["Lake Victoria"] == "LOC"


def test_ner_single_unknown_capitalized_word_is_misc(ner):
    assert ner.entities("the French open") == [("French", "MISC")]


def test_ner_stopword_runs_are_skipped(ner):
    assert ner.entities("The And Not") == []
    assert ner.entities("no capitals here") == []


def test_ner_long_runs_fall_back_to_misc(ner):
    entities = ner.entities("International Phonetic Alphabet Notation Standards Review")
    kinds = dict(entities)
    assert kinds["International Phonetic Alphabet Notation Standards Review"] == "MISC"
