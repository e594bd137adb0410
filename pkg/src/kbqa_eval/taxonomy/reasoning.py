"""Rule-based reasoning-type classification over SPARQL queries.

Operation tags come from a keyword scan of the tokenized query (string
literals and IRIs are opaque to the scan); topology tags come from the
triple patterns of the main graph pattern. FILTER NOT EXISTS is negation,
so it yields SetOperation rather than Filter, and its block contributes no
triples. The keyword-to-tag table lives in a versioned JSON resource.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .sparql import SparqlTokenizeError, Token, extract_triples, tokenize
from .types import ReasoningType, TagError


class ReasoningClassificationError(TagError):
    """Query could not be assigned any reasoning tag."""

    def __init__(self, message: str, query: str):
        super().__init__(message)
        self.query = query


@lru_cache(maxsize=1)
def _rules() -> dict:
    ref = resources.files("kbqa_eval.resources").joinpath("reasoning_rules.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def rules_version() -> int:
    return int(_rules()["version"])


def _is_numeric(tok: Token) -> bool:
    if tok.kind == "number":
        return True
    if tok.kind == "literal":
        try:
            float(tok.text)
            return True
        except ValueError:
            return False
    return False


def classify_reasoning(sparql: str) -> frozenset[ReasoningType]:
    """Return the set of reasoning tags for one SPARQL query.

    Raises ReasoningClassificationError when the query cannot be tokenized
    or no rule produces a tag.
    """
    try:
        tokens = tokenize(sparql)
    except SparqlTokenizeError as exc:
        raise ReasoningClassificationError(str(exc), sparql) from exc

    rules = _rules()
    keyword_tags: dict[str, str] = rules["keyword_tags"]
    comparison_ops = set(rules["comparison_operators"])
    tags: set[ReasoningType] = set()

    saw_order_by = False
    saw_limit = False
    idx = 0
    while idx < len(tokens):
        tok = tokens[idx]
        if tok.kind == "ident" and ":" not in tok.text:
            up = tok.text.upper()
            if up in keyword_tags:
                tags.add(ReasoningType(keyword_tags[up]))
            elif up == "FILTER":
                j = idx + 1
                negated = (
                    j + 1 < len(tokens)
                    and tokens[j].kind == "ident"
                    and tokens[j].text.upper() == "NOT"
                    and tokens[j + 1].kind == "ident"
                    and tokens[j + 1].text.upper() == "EXISTS"
                )
                if negated:
                    tags.add(ReasoningType(rules["filter_not_exists_tag"]))
                    idx = j + 2
                    continue
                tags.add(ReasoningType(rules["filter_tag"]))
            elif up == "ORDER":
                nxt = tokens[idx + 1] if idx + 1 < len(tokens) else None
                if nxt is not None and nxt.kind == "ident" and nxt.text.upper() == "BY":
                    saw_order_by = True
            elif up == "LIMIT":
                saw_limit = True
        elif tok.kind == "op" and tok.text in comparison_ops:
            prev_t = tokens[idx - 1] if idx > 0 else None
            next_t = tokens[idx + 1] if idx + 1 < len(tokens) else None
            if (prev_t is not None and _is_numeric(prev_t)) or (
                next_t is not None and _is_numeric(next_t)
            ):
                tags.add(ReasoningType(rules["comparison_tag"]))
        idx += 1

    if saw_order_by and saw_limit:
        tags.add(ReasoningType(rules["order_limit_tag"]))

    triples = extract_triples(tokens)
    if len(triples) == 1:
        tags.add(ReasoningType.SINGLE_HOP)
    elif len(triples) >= 2:
        tags.add(ReasoningType.MULTI_HOP)
        subjects = {t.subject.text for t in triples}
        if len(subjects) == 1 and all(t.subject.kind == "var" for t in triples):
            hub = triples[0].subject.text
            if all(not (t.obj.kind == "var" and t.obj.text == hub) for t in triples):
                tags.add(ReasoningType.STAR_SHAPE)

    if not tags:
        raise ReasoningClassificationError("no reasoning tag matched", sparql)
    return frozenset(tags)
