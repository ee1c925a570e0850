"""
Machine-readable reports written by ``aspconf --json``.

Every report carries ``schema_version``; the JSON schema of each model is
available from ``Model.model_json_schema()``.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = "1.0"


class Report(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str


class AnswerSetsReport(Report):
    command: str = "solve"
    answer_sets: List[List[str]] = Field(default_factory=list)
    contradictory: bool = False


class QueryReport(Report):
    command: str = "query"
    query: str
    responses: List[str] = Field(default_factory=list)


class ElementResponses(BaseModel):
    element: str
    responses: List[str] = Field(default_factory=list)


class Verification(BaseModel):
    passed: bool
    consistent: bool
    elements: List[ElementResponses] = Field(default_factory=list)

    @classmethod
    def from_report(cls, report):
        return cls(
            passed=report.passed,
            consistent=report.consistent,
            elements=[
                ElementResponses(
                    element=str(q),
                    responses=[str(i) for i in sorted(found, key=lambda i: i.sort_key)],
                )
                for q, found in report.responses
            ],
        )


class CheckReport(Report):
    command: str = "check"
    verification: Verification


class SolutionReport(BaseModel):
    deletions: List[str] = Field(default_factory=list)
    insertions: List[str] = Field(default_factory=list)
    k_pub: str
    verification: Verification
    witness: List[str] = Field(default_factory=list)


class RunMetadata(BaseModel):
    mode: str
    universe: List[str] = Field(default_factory=list)
    answer_sets: int = 0
    candidates: int = 0
    filter_checks: int = 0
    reduction_checks: int = 0
    caps: Dict[str, int] = Field(default_factory=dict)


class PublishReport(Report):
    command: str = "publish"
    solutions: List[SolutionReport] = Field(default_factory=list)
    reason: Optional[str] = None
    metadata: RunMetadata


class TransformReport(Report):
    command: str = "transform"
    mode: str
    ptr: str
    dependency_layers: Optional[List[List[str]]] = None
    abducibles: str
    normal_form_program: str
    normal_form_abducibles: str
    update_program: str
