"""Deterministic NLP microservice: phrase chunking, embeddings, entity typing.

Every backend is a rule system with no external weights, so responses are
a pure function of the request at a fixed package version.
"""

__version__ = "0.1.0"
