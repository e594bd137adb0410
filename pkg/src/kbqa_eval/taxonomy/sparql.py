"""Lightweight SPARQL tokenizer and triple-pattern extractor.

This is not a grammar validator: it tokenizes well enough to scan keywords
outside string literals and to count triple patterns for topology rules.
IRIs, quoted literals and comments are recognized so their contents never
leak into keyword scans. Prefixed names may contain dots in the local part
(Freebase style, e.g. ns:m.0f8l9c), which the tokenizer keeps distinct from
the '.' statement terminator.
"""

from __future__ import annotations

from dataclasses import dataclass


class SparqlTokenizeError(ValueError):
    """Input cannot be tokenized as SPARQL; carries the offending query."""

    def __init__(self, message: str, query: str):
        super().__init__(message)
        self.query = query


@dataclass(frozen=True)
class Token:
    kind: str  # ident | var | iri | literal | number | op | punct
    text: str
    pos: int


@dataclass(frozen=True)
class Triple:
    subject: Token
    predicate: Token
    obj: Token


_NAME_START = tuple("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_TWO_CHAR_OPS = ("<=", ">=", "!=", "&&", "||", "^^")
_PUNCT = set("{}()[].;,=<>!*+-/|&^?$")


def _is_name_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_-"


def tokenize(query: str) -> list[Token]:
    """Tokenize a SPARQL query; literals keep their raw content as token text."""
    if not query or not query.strip():
        raise SparqlTokenizeError("empty query", query)
    tokens: list[Token] = []
    i, n = 0, len(query)
    while i < n:
        ch = query[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            nl = query.find("\n", i)
            i = n if nl == -1 else nl + 1
            continue
        if ch == "<":
            # IRI if a '>' closes before any whitespace; otherwise an operator.
            j = i + 1
            while j < n and not query[j].isspace() and query[j] != ">":
                j += 1
            if j < n and query[j] == ">" and j > i + 1:
                tokens.append(Token("iri", query[i : j + 1], i))
                i = j + 1
                continue
            if query[i : i + 2] == "<=":
                tokens.append(Token("op", "<=", i))
                i += 2
            else:
                tokens.append(Token("op", "<", i))
                i += 1
            continue
        if ch in "'\"":
            quote = ch
            long = query[i : i + 3] == quote * 3
            delim = quote * 3 if long else quote
            j = i + len(delim)
            content: list[str] = []
            closed = False
            while j < n:
                if query[j] == "\\" and j + 1 < n:
                    content.append(query[j : j + 2])
                    j += 2
                    continue
                if query.startswith(delim, j):
                    closed = True
                    break
                if not long and query[j] == "\n":
                    break
                content.append(query[j])
                j += 1
            if not closed:
                raise SparqlTokenizeError(f"unterminated string literal at {i}", query)
            tokens.append(Token("literal", "".join(content), i))
            i = j + len(delim)
            continue
        if ch in "?$" and i + 1 < n and (query[i + 1].isalnum() or query[i + 1] == "_"):
            j = i + 1
            while j < n and (query[j].isalnum() or query[j] == "_"):
                j += 1
            tokens.append(Token("var", query[i:j], i))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and query[j].isdigit():
                j += 1
            if j + 1 < n and query[j] == "." and query[j + 1].isdigit():
                j += 1
                while j < n and query[j].isdigit():
                    j += 1
            if j < n and query[j] in "eE":
                k = j + 1
                if k < n and query[k] in "+-":
                    k += 1
                if k < n and query[k].isdigit():
                    j = k
                    while j < n and query[j].isdigit():
                        j += 1
            tokens.append(Token("number", query[i:j], i))
            i = j
            continue
        if ch in _NAME_START or ch == ":":
            j = i
            while j < n and _is_name_char(query[j]):
                j += 1
            if j < n and query[j] == ":":
                j += 1
                # local part; '.' allowed when followed by another name char
                while j < n and (
                    _is_name_char(query[j])
                    or (query[j] == "." and j + 1 < n and _is_name_char(query[j + 1]))
                ):
                    j += 1
                tokens.append(Token("ident", query[i:j], i))
            else:
                tokens.append(Token("ident", query[i:j], i))
            i = j
            continue
        two = query[i : i + 2]
        if two in _TWO_CHAR_OPS:
            tokens.append(Token("op", two, i))
            i += 2
            continue
        if ch in _PUNCT:
            kind = "op" if ch in "=<>!" else "punct"
            tokens.append(Token(kind, ch, i))
            i += 1
            continue
        if ch == "@":  # language tag on a literal, e.g. "Paris"@fr
            j = i + 1
            while j < n and (query[j].isalnum() or query[j] == "-"):
                j += 1
            tokens.append(Token("punct", query[i:j], i))
            i = j
            continue
        raise SparqlTokenizeError(f"unexpected character {ch!r} at {i}", query)
    if not tokens:
        raise SparqlTokenizeError("no tokens", query)
    return tokens


def keyword_positions(tokens: list[Token], keyword: str) -> list[int]:
    """Indices of ident tokens equal to keyword (case-insensitive)."""
    kw = keyword.upper()
    return [idx for idx, t in enumerate(tokens) if t.kind == "ident" and t.text.upper() == kw]


_STRUCT_KEYWORDS = {
    "SELECT", "ASK", "WHERE", "DISTINCT", "REDUCED", "AS", "PREFIX", "BASE",
    "ORDER", "BY", "LIMIT", "OFFSET", "GROUP", "HAVING", "DESC", "ASC",
    "FILTER", "OPTIONAL", "UNION", "MINUS", "NOT", "EXISTS", "BIND", "VALUES",
    "SERVICE", "GRAPH", "COUNT", "SUM", "AVG", "MIN", "MAX", "SAMPLE",
    "GROUP_CONCAT", "CONSTRUCT", "DESCRIBE", "STR", "LANG", "YEAR", "MONTH",
    "DAY", "NOW", "REGEX", "CONTAINS", "STRSTARTS", "BOUND", "IN", "LIMIT",
}


def _skip_balanced(tokens: list[Token], i: int, open_t: str, close_t: str) -> int:
    """Given tokens[i] == open_t, return index just past the matching close."""
    depth = 0
    while i < len(tokens):
        t = tokens[i]
        if t.text == open_t and t.kind in ("punct", "op"):
            depth += 1
        elif t.text == close_t and t.kind in ("punct", "op"):
            depth -= 1
            if depth == 0:
                return i + 1
        i += 1
    return i


def _is_term(tok: Token) -> bool:
    if tok.kind in ("var", "iri", "literal", "number"):
        return True
    if tok.kind == "ident":
        up = tok.text.upper()
        if up == "A":  # rdf:type shorthand
            return True
        return ":" in tok.text or up not in _STRUCT_KEYWORDS
    return False


def extract_triples(tokens: list[Token]) -> list[Triple]:
    """Collect triple patterns from the main group graph pattern.

    Triples inside FILTER [NOT] EXISTS blocks are constraint tests, not
    reasoning hops, and are skipped; UNION/MINUS/OPTIONAL group contents are
    counted.
    """
    where = keyword_positions(tokens, "WHERE")
    start = None
    if where:
        for idx in range(where[0] + 1, len(tokens)):
            if tokens[idx].text == "{":
                start = idx
                break
    else:
        for idx, t in enumerate(tokens):
            if t.text == "{":
                start = idx
                break
    if start is None:
        return []
    end = _skip_balanced(tokens, start, "{", "}")

    triples: list[Triple] = []
    terms: list[Token] = []
    subject: Token | None = None
    predicate: Token | None = None

    def commit() -> None:
        nonlocal subject, predicate
        if len(terms) == 3:
            triples.append(Triple(terms[0], terms[1], terms[2]))
            subject, predicate = terms[0], terms[1]
        elif len(terms) == 2 and subject is not None:
            triples.append(Triple(subject, terms[0], terms[1]))
            predicate = terms[0]
        elif len(terms) == 1 and subject is not None and predicate is not None:
            triples.append(Triple(subject, predicate, terms[0]))
        terms.clear()

    i = start + 1
    while i < end - 1:
        t = tokens[i]
        if t.kind == "ident":
            up = t.text.upper()
            if up == "FILTER":
                j = i + 1
                if j < end and tokens[j].kind == "ident" and tokens[j].text.upper() == "NOT":
                    j += 1
                if j < end and tokens[j].kind == "ident" and tokens[j].text.upper() == "EXISTS":
                    j += 1
                    if j < end and tokens[j].text == "{":
                        i = _skip_balanced(tokens, j, "{", "}")
                        continue
                if j < end and tokens[j].kind == "ident" and j + 1 < end and tokens[j + 1].text == "(":
                    i = _skip_balanced(tokens, j + 1, "(", ")")
                    continue
                if j < end and tokens[j].text == "(":
                    i = _skip_balanced(tokens, j, "(", ")")
                    continue
                while j < end and tokens[j].text not in (".", "}"):
                    j += 1
                i = j
                continue
            if up == "BIND":
                j = i + 1
                i = _skip_balanced(tokens, j, "(", ")") if j < end and tokens[j].text == "(" else j
                continue
            if up == "VALUES":
                j = i + 1
                if j < end and tokens[j].text == "(":
                    j = _skip_balanced(tokens, j, "(", ")")
                elif j < end:
                    j += 1  # single variable
                if j < end and tokens[j].text == "{":
                    j = _skip_balanced(tokens, j, "{", "}")
                i = j
                continue
            if up in ("OPTIONAL", "UNION", "MINUS"):
                i += 1  # the group contents are walked normally
                continue
            if up in ("GRAPH", "SERVICE"):
                i += 1
                if i < end - 1 and tokens[i].text != "{":
                    i += 1  # the graph/service name term
                continue
            if up in _STRUCT_KEYWORDS and ":" not in t.text and up != "A":
                i += 1  # stray structural keyword (subquery headers etc.)
                continue
        if t.text in ("{", "}") and t.kind == "punct":
            commit()
            i += 1
            if t.text == "}":
                subject = predicate = None
            continue
        if t.text == "." and t.kind == "punct":
            commit()
            subject = predicate = None
            i += 1
            continue
        if t.text == ";" and t.kind == "punct":
            commit()  # commit() keeps the subject current
            predicate = None
            i += 1
            continue
        if t.text == "," and t.kind == "punct":
            commit()
            i += 1
            continue
        if t.text == "(" and t.kind == "punct":
            i = _skip_balanced(tokens, i, "(", ")")
            continue
        if t.text == "[" and t.kind == "punct":
            i = _skip_balanced(tokens, i, "[", "]")
            continue
        if _is_term(t):
            terms.append(t)
            # property paths: merge p1/p2 style sequences into the predicate slot
            while len(terms) == 2 and i + 1 < end - 1 and tokens[i + 1].text in ("/", "|"):
                i += 2
                if i < end and _is_term(tokens[i]):
                    terms[1] = Token("ident", terms[1].text + "/" + tokens[i].text, terms[1].pos)
                else:
                    break
            i += 1
            continue
        i += 1
    commit()
    return triples
