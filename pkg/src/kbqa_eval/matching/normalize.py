"""Text normalization shared by candidate extraction and matching.

Lowercase (a no-op for unicased scripts), collapse whitespace, trim edge
punctuation. A string that is nothing but punctuation keeps its trimmed
form instead of vanishing, so degenerate outputs still yield one candidate.
"""

from __future__ import annotations

import string

_EDGE = string.punctuation + "«»‘’“”。，？！"


def normalize(text: str) -> str:
    collapsed = " ".join(text.lower().split())
    trimmed = " ".join(collapsed.strip(_EDGE).split())
    return trimmed if trimmed else collapsed
