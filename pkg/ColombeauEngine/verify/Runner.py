"""
Suite registry and runner.

run_suite("norms", seed=7) runs one suite with a fresh DeterministicRNG and
returns a SuiteReportPayload; "all" runs every suite in registry order.
"""
from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING, Callable, Dict, List, Optional

from ..core.Errors import PreconditionError
from ..core.GeneralizedNumber import _settings
from ..core.rng import DeterministicRNG
from ..models.payloads import SuiteReportPayload
from .FunctionSuites import metric_suite, norms_suite, topology_suite
from .NumberSuites import order_suite, ring_suite, ultrametric_suite
from .Properties import PropertyTally, SuiteContext
from .SetSuites import sets_suite, support_suite

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

Suite = Callable[[SuiteContext], List[PropertyTally]]

SUITES: Dict[str, Suite] = {
    "ring": ring_suite,
    "ultrametric": ultrametric_suite,
    "order": order_suite,
    "sets": sets_suite,
    "support": support_suite,
    "norms": norms_suite,
    "topology": topology_suite,
    "metric": metric_suite,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, seed: Optional[int] = None, config: Optional["Settings"] = None,
              cases: Optional[int] = None) -> SuiteReportPayload:
    """Run a named suite; `cases` caps the number of random cases per property"""
    config = _settings(config)
    if name not in SUITE_NAMES:
        raise PreconditionError(f"unknown suite '{name}'; expected one of {', '.join(SUITE_NAMES)}")
    seed = config.seed if seed is None else seed
    names = list(SUITES) if name == "all" else [name]

    properties = []
    for suite_name in names:
        ctx = SuiteContext(config=config, rng=DeterministicRNG(seed).spawn(suite_name), cases=cases)
        started = time.perf_counter()
        tallies = SUITES[suite_name](ctx)
        logger.info("Suite %s: %d properties in %.1fs", suite_name, len(tallies),
                    time.perf_counter() - started)
        properties.extend(t.to_payload() for t in tallies)

    report = SuiteReportPayload(suite=name, seed=seed, passed=all(p.passed for p in properties),
                                properties=properties)
    if not report.passed:
        failed = [p.name for p in properties if not p.passed]
        logger.warning("Suite %s failed properties: %s", name, ", ".join(failed))
    return report
