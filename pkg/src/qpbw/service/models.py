"""Request and response models for the computation service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Flavor = Literal["gl", "sl"]
AnyFlavor = Literal["gl", "sl", "qmatrix"]

SuiteName = Literal[
    "qmatrix",
    "short-vs-full",
    "confluence",
    "hopf",
    "jimbo",
    "rootvectors",
    "loperators",
    "poisson",
    "frobenius",
    "all",
]

# builds at larger ranks are quadratic in the alphabet; keep the service bounded
MAX_RANK = 5


class PresentRequest(BaseModel):
    n: int = Field(ge=1, le=MAX_RANK)
    flavor: AnyFlavor = "gl"


class NormalFormRequest(BaseModel):
    n: int = Field(ge=1, le=MAX_RANK)
    flavor: Flavor = "gl"
    expression: str


class NormalFormResponse(BaseModel):
    n: int
    flavor: Flavor
    input: str
    normal_form: str
    integer_form: bool


class VerifyRequest(BaseModel):
    suite: SuiteName
    n: int = Field(ge=1, le=MAX_RANK)
    flavor: Flavor = "gl"
    ell: Optional[int] = Field(default=None, ge=2)
    deterministic: bool = False
    random_triples: int = Field(default=100, ge=1, le=2000)


class ExportRequest(BaseModel):
    n: int = Field(ge=2, le=MAX_RANK)
    what: Literal["derived", "rootvectors", "loperators"] = "derived"


class HealthResponse(BaseModel):
    status: str
    version: str
