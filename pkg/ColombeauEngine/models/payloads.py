"""
payloads - pydantic models for everything that crosses the JSON boundary:
CLI inputs (box nets, numbers) and reports (decisions, norms, metrics,
suite and demo results).

Reports are dumped with sorted keys so identical inputs and seed give
byte-identical output.
"""
from __future__ import annotations

import json
import math
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator


ExtendedFloat = Union[float, Literal["inf", "-inf"], None]


def json_float(value: Optional[float]) -> ExtendedFloat:
    """Floats as JSON values; infinities become strings, nan becomes null"""
    if value is None:
        return None
    value = float(value)
    if math.isnan(value):
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


# ----------------------------------------------------------------------
# Numbers
# ----------------------------------------------------------------------

class GridPayload(BaseModel):
    base: float = 2.0
    k_min: int = 4
    k_max: int = 48


class SamplesPayload(BaseModel):
    sign: List[int]
    logmag: List[Optional[float]]


class ExactNumberPayload(BaseModel):
    variant: Literal["exact"] = "exact"
    terms: List[Tuple[str, str]] = Field(default_factory=list)   # (coeff, expo) as fractions
    text: str = "0"


class SampledNumberPayload(BaseModel):
    variant: Literal["sampled"] = "sampled"
    label: str = ""
    grid: GridPayload
    samples: SamplesPayload


GeneralizedNumberPayload = Annotated[
    Union[ExactNumberPayload, SampledNumberPayload],
    Field(discriminator="variant"),
]


# ----------------------------------------------------------------------
# Sets
# ----------------------------------------------------------------------

class BoxNetPayload(BaseModel):
    """List of boxes, each a list of [lo-expr, hi-expr] strings, one pair per coordinate"""
    boxes: List[List[Tuple[str, str]]]
    dimension: Optional[int] = None

    @field_validator("boxes", mode="before")
    @classmethod
    def _accept_bare_interval(cls, value: Any) -> Any:
        # "[[-1, 1]]" is shorthand for one 1-D box
        if (isinstance(value, list) and value and isinstance(value[0], list)
                and len(value[0]) == 2 and not isinstance(value[0][0], (list, tuple))):
            return [[(str(a), str(b))] for a, b in value]
        if isinstance(value, list):
            return [[(str(a), str(b)) for a, b in box] for box in value]
        return value

    @classmethod
    def parse(cls, text: str) -> "BoxNetPayload":
        data = json.loads(text)
        if isinstance(data, dict):
            return cls.model_validate(data)
        return cls(boxes=data)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

class ReportModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2)


class DecisionPayload(ReportModel):
    state: Literal["true", "false", "undecidable"]
    witness: ExtendedFloat = None
    note: Optional[str] = None


class ValuationPayload(ReportModel):
    value: ExtendedFloat
    residual: ExtendedFloat = 0.0
    reliable: bool = True
    negligible: bool = False
    moderate: bool = True
    samples_used: int = 0
    exact: bool = False


class NormPayload(ReportModel):
    order: int
    source: str
    valuation: ValuationPayload
    samples: List[ExtendedFloat]
    mismatch: bool = False
    notes: List[str] = Field(default_factory=list)


class MetricReportPayload(ReportModel):
    d_e: float
    d_2: float
    d_e_interval: Tuple[float, float]
    d_2_interval: Tuple[float, float]
    truncation: int
    tail_bound_e: float
    tail_bound_2: float
    valuations: Dict[str, ExtendedFloat]
    unreliable_orders: List[int] = Field(default_factory=list)
    upper_bound_holds: bool
    lower_bound_holds: bool
    notes: List[str] = Field(default_factory=list)


class PropertyResultPayload(ReportModel):
    name: str
    passed: bool
    cases: int
    failures: int = 0
    skipped: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    detail: Optional[str] = None


class SuiteReportPayload(ReportModel):
    suite: str
    seed: int
    passed: bool
    properties: List[PropertyResultPayload]


class DemoReportPayload(ReportModel):
    name: str
    passed: bool
    assertions: Dict[str, bool]
    data: Dict[str, Any] = Field(default_factory=dict)
    diff: Optional[str] = None


class CommandReport(ReportModel):
    """Generic envelope for the computational commands"""
    command: str
    state: Literal["decided", "undecidable"] = "decided"
    result: Dict[str, Any] = Field(default_factory=dict)
    config: Dict[str, Any] = Field(default_factory=dict)
