"""Candidate answer pool extraction from free-form model output.

With a constituency parse, the pool holds every constituent labeled exactly
NP or VP whose parent label differs (the maximal ones), detokenized so
punctuation reattaches to the preceding token. Without a parse, a segment
fallback splits on sentence boundaries, commas/semicolons and "and", and
adds capitalized token runs. Both modes include the full normalized output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .normalize import normalize

_POOL_LABELS = ("NP", "VP")
_ATTACH_LEFT = {",", ".", ";", ":", "!", "?", "%", ")", "]", "}"}
_ATTACH_RIGHT = {"(", "[", "{"}


@dataclass(frozen=True)
class ParseNode:
    label: str
    children: tuple["ParseNode", ...] = ()
    token: str | None = None

    def leaves(self) -> list[str]:
        if self.token is not None:
            return [self.token]
        out: list[str] = []
        for child in self.children:
            out.extend(child.leaves())
        return out


class ParseFormatError(ValueError):
    pass


def parse_tree(source) -> ParseNode:
    """Accept a ParseNode, a nested dict, or a bracketed tree string."""
    if isinstance(source, ParseNode):
        return source
    if isinstance(source, dict):
        children = tuple(parse_tree(c) for c in source.get("children", ()))
        return ParseNode(
            label=source["label"], children=children, token=source.get("token")
        )
    if isinstance(source, str):
        return _parse_brackets(source)
    raise ParseFormatError(f"cannot interpret parse of type {type(source).__name__}")


def _parse_brackets(text: str) -> ParseNode:
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def node() -> ParseNode:
        nonlocal pos
        skip_ws()
        if pos >= n or text[pos] != "(":
            raise ParseFormatError(f"expected '(' at {pos}")
        pos += 1
        skip_ws()
        start = pos
        while pos < n and not text[pos].isspace() and text[pos] not in "()":
            pos += 1
        label = text[start:pos]
        if not label:
            raise ParseFormatError(f"missing label at {start}")
        skip_ws()
        if pos < n and text[pos] == "(":
            children = []
            while True:
                skip_ws()
                if pos < n and text[pos] == ")":
                    pos += 1
                    return ParseNode(label=label, children=tuple(children))
                children.append(node())
        start = pos
        while pos < n and text[pos] != ")":
            pos += 1
        if pos >= n:
            raise ParseFormatError("unbalanced tree")
        token = text[start:pos].strip()
        pos += 1
        return ParseNode(label=label, token=token)

    root = node()
    skip_ws()
    if pos != n:
        raise ParseFormatError(f"trailing content at {pos}")
    return root


def detokenize(tokens: list[str]) -> str:
    parts: list[str] = []
    for tok in tokens:
        if not tok:
            continue
        attach = bool(parts) and (
            tok in _ATTACH_LEFT or tok.startswith("'") or tok in ("n't", "''")
        )
        if parts and parts[-1] in _ATTACH_RIGHT:
            attach = True
        parts.append(tok if not attach else parts.pop() + tok)
    return " ".join(parts)


@dataclass(frozen=True)
class CandidatePool:
    phrases: tuple[str, ...]
    source: str = ""

    def __contains__(self, phrase: str) -> bool:
        return phrase in self.phrases


def _constituent_phrases(root: ParseNode) -> list[str]:
    found: list[str] = []

    def walk(node: ParseNode, parent_label: str | None) -> None:
        if node.label in _POOL_LABELS and node.label != parent_label:
            found.append(detokenize(node.leaves()))
        for child in node.children:
            walk(child, node.label)

    walk(root, None)
    return found


_CAP_RUN_RE = re.compile(r"(?:[A-Z][\w'-]*)(?:\s+[A-Z][\w'-]*)*")


def _fallback_phrases(output: str) -> list[str]:
    phrases: list[str] = []
    phrases.extend(re.split(r"(?<=[.!?])\s+", output.strip()))
    phrases.extend(re.split(r"[,;]|\band\b", output))
    phrases.extend(m.group(0) for m in _CAP_RUN_RE.finditer(output))
    return phrases


def extract_candidates(output: str, parse=None) -> CandidatePool:
    """Build the candidate pool for one model output."""
    if not output:
        raise ValueError("output must be non-empty")
    full = normalize(output)
    raw: list[str]
    if parse is not None:
        raw = _constituent_phrases(parse_tree(parse))
    else:
        raw = _fallback_phrases(output)
    phrases: list[str] = [full]
    seen = {full}
    for item in raw:
        norm = normalize(item)
        if norm and norm not in seen:
            phrases.append(norm)
            seen.add(norm)
    return CandidatePool(phrases=tuple(phrases), source=output)
