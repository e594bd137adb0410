"""Embedding providers for fuzzy matching.

Production runs may plug in a remote encoder; the built-in fallback is a
deterministic hashed character-trigram term-frequency vector. Both produce
unit-normalized rows, so cosine similarity is a plain dot product.
"""

from __future__ import annotations

import hashlib

import numpy as np


class EmbedderUnavailable(RuntimeError):
    """The configured embedding backend cannot serve requests."""


class TrigramEmbedder:
    """512-dim hashed character-trigram TF embedding, unit-normalized."""

    name = "trigram"
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


def similarity_matrix(
    candidates: list[str], references: list[str], embedder
) -> np.ndarray:
    """Pairwise cosine similarities, rounded to 10 decimals, clipped to [0,1].

    Equal strings short-circuit to exactly 1.0 regardless of the embedder.
    """
    cand_vecs = np.asarray(embedder.embed(list(candidates)), dtype=np.float64)
    ref_vecs = np.asarray(embedder.embed(list(references)), dtype=np.float64)
    sims = np.clip(cand_vecs @ ref_vecs.T, 0.0, 1.0)
    sims = np.round(sims, 10)
    for i, cand in enumerate(candidates):
        for j, ref in enumerate(references):
            if cand == ref:
                sims[i, j] = 1.0
    return sims
