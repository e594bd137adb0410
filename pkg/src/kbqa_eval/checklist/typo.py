"""Seeded typo generation for invariance testing.

Each call plants k = max(1, round(rate * words)) single-character edits
(adjacent-key substitution, transposition, or deletion) into k distinct
tokens, preferring content words over question scaffolding. The result
is deterministic for a fixed (text, seed, rate) and never equals the
input.
"""

from __future__ import annotations

import random
import re
import string

_TOKEN_RE = re.compile(r"\S+")

# question scaffolding left untouched so the perturbed question still reads
_STOPWORDS = {
    "who", "whom", "whose", "what", "which", "when", "where", "why", "how",
    "is", "are", "was", "were", "am", "be", "been", "being",
    "do", "does", "did", "can", "could", "will", "would",
    "a", "an", "the", "of", "in", "on", "at", "to", "for", "by", "with",
    "and", "or", "not", "many", "much",
}

_QWERTY_ROWS = ("1234567890", "qwertyuiop", "asdfghjkl", "zxcvbnm")


def _neighbor_map() -> dict[str, str]:
    neighbors: dict[str, str] = {}
    for row_idx, row in enumerate(_QWERTY_ROWS):
        for col, ch in enumerate(row):
            near = []
            if col > 0:
                near.append(row[col - 1])
            if col + 1 < len(row):
                near.append(row[col + 1])
            for other in (row_idx - 1, row_idx + 1):
                if 0 <= other < len(_QWERTY_ROWS):
                    other_row = _QWERTY_ROWS[other]
                    if col < len(other_row):
                        near.append(other_row[col])
            neighbors[ch] = "".join(near)
    return neighbors

_NEIGHBORS = _neighbor_map()


def _is_stopword(token: str) -> bool:
    return token.lower().strip(string.punctuation) in _STOPWORDS


def _editable_positions(token: str) -> list[int]:
    return [i for i, ch in enumerate(token) if ch.lower() in _NEIGHBORS]


def _can_edit(token: str) -> bool:
    return len(token) >= 2 or bool(_editable_positions(token))


def _edit_token(token: str, rng: random.Random) -> str:
    kinds = []
    sub_positions = _editable_positions(token)
    if sub_positions:
        kinds.append("substitute")
    if len(token) >= 2:
        kinds.append("delete")
    swap_positions = [
        i for i in range(len(token) - 1) if token[i] != token[i + 1]
    ]
    if swap_positions:
        kinds.append("transpose")
    kind = rng.choice(kinds)
    if kind == "substitute":
        pos = rng.choice(sub_positions)
        replacement = rng.choice(_NEIGHBORS[token[pos].lower()])
        return token[:pos] + replacement + token[pos + 1:]
    if kind == "delete":
        pos = rng.randrange(len(token))
        return token[:pos] + token[pos + 1:]
    pos = rng.choice(swap_positions)
    return token[:pos] + token[pos + 1] + token[pos] + token[pos + 2:]


def gen_typo(text: str, seed: int, rate: float = 0.1) -> str:
    """Perturb k distinct tokens of text with one character edit each."""
    spans = [(m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]
    if not spans:
        raise ValueError("typo generation needs at least one word")
    rng = random.Random(seed)
    tokens = [text[s:e] for s, e in spans]
    k = max(1, round(rate * len(tokens)))

    eligible = [i for i, tok in enumerate(tokens)
                if not _is_stopword(tok) and _can_edit(tok)]
    if len(eligible) < k:
        # top up from scaffolding words when content words run out
        extras = [i for i, tok in enumerate(tokens)
                  if i not in eligible and _can_edit(tok)]
        eligible = eligible + extras
    k = min(k, len(eligible))
    if k == 0:
        raise ValueError("no editable token in input")
    chosen = sorted(rng.sample(eligible, k))

    out = []
    cursor = 0
    for idx, (start, end) in enumerate(spans):
        out.append(text[cursor:start])
        token = tokens[idx]
        out.append(_edit_token(token, rng) if idx in chosen else token)
        cursor = end
    out.append(text[cursor:])
    mutated = "".join(out)
    if mutated == text:
        raise AssertionError("typo generation produced the identity string")
    return mutated
