"""Request and response bodies for the HTTP protocol.

Every response model carries a version stamp so clients can pin behavior
to a served package version.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel


class ParseRequest(BaseModel):
    text: str
    lang: str = "en"


class Phrase(BaseModel):
    text: str
    label: Literal["NP", "VP"]
    char_span: tuple[int, int]


class ParseResponse(BaseModel):
    version: str
    lang: str
    phrases: list[Phrase]


class EmbedRequest(BaseModel):
    texts: list[str]
    lang: str = "en"


class EmbedResponse(BaseModel):
    version: str
    dim: int
    vectors: list[list[float]]


class NerRequest(BaseModel):
    text: str


class Entity(BaseModel):
    text: str
    type: Literal["PER", "LOC", "ORG", "MISC"]


class NerResponse(BaseModel):
    version: str
    entities: list[Entity]


class HealthResponse(BaseModel):
    status: Literal["ready", "loading"]
    version: str
