"""The three model backends behind the service endpoints.

All of them are deterministic rule systems: a lexicon-driven NP/VP chunker,
a hashed character-trigram sentence embedder, and a gazetteer entity tagger.
They trade recall for predictability, which is what a contract-tested
microservice wants from its fallback tier.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

_TOKEN_RE = re.compile(r"\w+(?:['’-]\w+)*")

_DETERMINERS = {
    "en": frozenset(
        "the a an this that these those my your his her its our their some "
        "any no every each all both another most several few many such".split()
    ),
    "de": frozenset(
        "der die das den dem des ein eine einen einem einer eines kein keine "
        "mein dein sein ihr unser euer jeder jede jedes alle".split()
    ),
    "fr": frozenset(
        "le la les un une des du ce cette ces mon ma mes ton ta tes son sa "
        "ses notre votre leur chaque tout toute tous toutes".split()
    ),
    "es": frozenset(
        "el la los las un una unos unas este esta estos estas mi tu su "
        "nuestro cada todo toda todos todas".split()
    ),
}

_FUNCTION_WORDS = frozenset(
    "of in on at by for with from to into over under between after before "
    "during about against among through per off up down out and or but nor "
    "so yet because although while if when where than as i you he it we "
    "they me him us them who whom whose which what why how not never there "
    "here also very too just only".split()
)

_AUXILIARIES = frozenset(
    "is are was were be been being am do does did has have had will would "
    "can could shall should may might must".split()
)

_COMMON_VERBS = frozenset(
    "say said says go going went goes gone make made makes take took taken "
    "see saw seen know knew known get got gets give gave given find found "
    "think thought tell told become became becomes show showed shown leave "
    "left feel felt put bring brought begin began begun keep kept hold held "
    "write wrote written stand stood hear heard let mean meant set meet met "
    "run ran pay paid sit sat speak spoke spoken lead led read grow grew "
    "grown lose lost fall fell fallen send sent build built buy bought break "
    "broke broken spend spent cut rise rose risen drive drove driven wear "
    "wore worn choose chose chosen win won die dies doing live lived lives "
    "stop stops come came comes want wants".split()
)

_VERBS_BY_LANG = {
    "de": frozenset("ist sind war waren hat haben hatte wird werden wurde las liest schrieb".split()),
    "fr": frozenset("est sont était étaient a ont sera dort écrit".split()),
    "es": frozenset("es son era fue tiene escribió".split()),
}

# suffix heuristics misfire on these nominals, so they stay chunkable
_ED_NOMINALS = frozenset(
    "hundred sacred naked wicked rugged united beloved armed".split()
)
_ING_NOMINALS = frozenset(
    "morning evening wedding building painting meaning beginning spring "
    "string something nothing anything everything".split()
)

_NEGATION = ("not", "never")


@dataclass(frozen=True)
class PhraseSpan:
    text: str
    label: str
    start: int
    end: int


class PhraseChunker:
    """Greedy left-to-right NP/VP chunker over offset-preserving tokens.

    An NP is a maximal whitespace-adjacent run of determiner and content
    tokens holding at least one content token; a VP is a run of verb-like
    tokens. Punctuation between tokens breaks any chunk, so every span
    slices cleanly out of the input.
    """

    name = "chunk-rules"

    def phrases(self, text: str, lang: str = "en") -> list[PhraseSpan]:
        tokens = [(m.group(0), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]
        kinds = []
        for i, (tok, start, _end) in enumerate(tokens):
            initial = i == 0 or any(c in ".!?" for c in text[tokens[i - 1][2] : start])
            kinds.append(self._kind(tok, lang, initial))

        def adjacent(left: int, right: int) -> bool:
            return text[tokens[left][2] : tokens[right][1]].strip() == ""

        spans: list[PhraseSpan] = []
        i = 0
        while i < len(tokens):
            if kinds[i] in ("DET", "WORD"):
                j = i + 1
                has_word = kinds[i] == "WORD"
                while j < len(tokens) and kinds[j] in ("DET", "WORD") and adjacent(j - 1, j):
                    has_word = has_word or kinds[j] == "WORD"
                    j += 1
                if has_word:
                    spans.append(self._span(text, tokens, i, j - 1, "NP"))
                i = j
            elif kinds[i] == "VERB":
                j = i + 1
                while j < len(tokens) and adjacent(j - 1, j):
                    if kinds[j] == "VERB":
                        j += 1
                        continue
                    word = tokens[j][0].lower()
                    if word in _NEGATION and j + 1 < len(tokens) and kinds[j + 1] == "VERB" and adjacent(j, j + 1):
                        j += 1
                        continue
                    break
                spans.append(self._span(text, tokens, i, j - 1, "VP"))
                i = j
            else:
                i += 1
        return spans

    @staticmethod
    def _span(text: str, tokens, first: int, last: int, label: str) -> PhraseSpan:
        start = tokens[first][1]
        end = tokens[last][2]
        return PhraseSpan(text=text[start:end], label=label, start=start, end=end)

    @staticmethod
    def _kind(token: str, lang: str, initial: bool) -> str:
        lower = token.lower()
        lang_key = lang.split("_")[0].split("-")[0].lower()
        determiners = _DETERMINERS.get(lang_key, _DETERMINERS["en"])
        if lower in determiners:
            return "DET"
        if lower in _VERBS_BY_LANG.get(lang_key, frozenset()):
            return "VERB"
        # capitalized mid-sentence tokens read as proper nouns, never verbs
        if token[:1].isupper() and not initial:
            return "WORD" if lower not in _FUNCTION_WORDS else "FUNC"
        if lower in _AUXILIARIES or lower in _COMMON_VERBS:
            return "VERB"
        if lower in _FUNCTION_WORDS:
            return "FUNC"
        if lower.isalpha() and len(lower) >= 4 and lower.endswith("ed") and lower not in _ED_NOMINALS:
            return "VERB"
        if lower.isalpha() and len(lower) >= 5 and lower.endswith("ing") and lower not in _ING_NOMINALS:
            return "VERB"
        return "WORD"


class TrigramEmbedder:
    """512-dim hashed character-trigram TF embedding, unit-normalized.

    Hash layout is pinned (md5 of each '^'-'$' padded trigram, modulo the
    dimension) so vectors stay stable across service versions and agree
    with any client-side fallback using the same layout.
    """

    name = "char-trigram"
    dim = 512

    def embed(self, texts: list[str]) -> np.ndarray:
        if isinstance(texts, str):
            raise TypeError("embed expects a list of strings, not a single string")
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        for row, text in enumerate(texts):
            padded = "^" + text + "$"
            for i in range(len(padded) - 2):
                gram = padded[i : i + 3]
                digest = hashlib.md5(gram.encode("utf-8")).hexdigest()
                out[row, int(digest, 16) % self.dim] += 1.0
            norm = float(np.linalg.norm(out[row]))
            if norm > 0:
                out[row] /= norm
        return out


@lru_cache(maxsize=1)
def _gazetteer() -> dict:
    ref = resources.files("nlp_sidecar.resources").joinpath("gazetteer.json")
    data = json.loads(ref.read_text(encoding="utf-8"))
    return {
        "given_names": frozenset(data["given_names"]),
        "places": frozenset(data["places"]),
        "org_suffixes": frozenset(data["org_suffixes"]),
        "place_suffixes": frozenset(data["place_suffixes"]),
    }


_MENTION_RE = re.compile(r"(?:[A-Z][\w'-]*)(?:\s+[A-Z][\w'-]*)*")

_MENTION_STOPWORDS = (
    _DETERMINERS["en"]
    | _FUNCTION_WORDS
    | _AUXILIARIES
    | frozenset("yes no it s t what when whether".split())
)


class RuleNer:
    """Capitalized-run mention finder with an ordered typing cascade."""

    name = "rule-gazetteer"

    def entities(self, text: str) -> list[tuple[str, str]]:
        found: list[tuple[str, str]] = []
        for match in _MENTION_RE.finditer(text):
            words = match.group(0).split()
            if all(w.lower() in _MENTION_STOPWORDS for w in words):
                continue
            found.append((match.group(0), self._classify(words)))
        return found

    @staticmethod
    def _classify(words: list[str]) -> str:
        gaz = _gazetteer()
        lower = [w.lower().strip("'-") for w in words]
        if " ".join(lower) in gaz["places"] or (len(lower) == 1 and lower[0] in gaz["places"]):
            return "LOC"
        if any(w in gaz["org_suffixes"] for w in lower):
            return "ORG"
        if any(w in gaz["place_suffixes"] for w in lower):
            return "LOC"
        if lower[0] in gaz["given_names"] and len(lower) >= 2:
            return "PER"
        if len(lower) == 1 and lower[0] in gaz["given_names"]:
            return "PER"
        if any(w in gaz["places"] for w in lower):
            return "LOC"
        if 2 <= len(lower) <= 4:
            return "PER"
        return "MISC"
