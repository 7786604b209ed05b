"""
Payload and report models
"""

from .payloads import (
    BoxNetPayload,
    CommandReport,
    DecisionPayload,
    DemoReportPayload,
    ExactNumberPayload,
    GeneralizedNumberPayload,
    GridPayload,
    MetricReportPayload,
    NormPayload,
    PropertyResultPayload,
    SampledNumberPayload,
    SamplesPayload,
    SuiteReportPayload,
    ValuationPayload,
    json_float,
)
