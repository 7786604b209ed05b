"""
Property tallies for the verification suites.

A property is checked on many generated cases; each case passes, fails or
is skipped (its premise was undecidable or vacuous). The first failing case
is kept as the reported counterexample. A ColombeauError raised while a case
is evaluated counts as a failure of that case.
"""
from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Dict, Iterator, Optional

from ..core.Errors import ColombeauError
from ..core.rng import DeterministicRNG
from ..models.payloads import PropertyResultPayload

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


class SkipCase(Exception):
    """Raised inside a case whose premise does not hold"""


@dataclass
class PropertyTally:
    name: str
    cases: int = 0
    failures: int = 0
    skipped: int = 0
    counterexample: Optional[Dict[str, Any]] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, holds: bool, **case: Any) -> bool:
        self.cases += 1
        if holds:
            return True
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = {k: _jsonable(v) for k, v in case.items()}
            logger.warning("Property %s fails: %s", self.name, self.counterexample)
        return False

    def skip(self, reason: Optional[str] = None) -> None:
        self.skipped += 1
        if reason:
            logger.debug("Property %s: case skipped (%s)", self.name, reason)

    @contextmanager
    def case(self, **context: Any) -> Iterator[None]:
        """Run one case; library errors become failures, SkipCase a skip"""
        try:
            yield
        except SkipCase as exc:
            self.skip(str(exc) or None)
        except ColombeauError as exc:
            self.check(False, error=f"{type(exc).__name__}: {exc}", **context)

    def run(self, count: int, body: Callable[[int], None]) -> "PropertyTally":
        for i in range(count):
            with self.case(case=i):
                body(i)
        return self

    def to_payload(self) -> PropertyResultPayload:
        return PropertyResultPayload(
            name=self.name,
            passed=self.passed,
            cases=self.cases,
            failures=self.failures,
            skipped=self.skipped,
            counterexample=self.counterexample,
            detail=self.detail,
        )


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    to_text = getattr(value, "to_text", None)
    if callable(to_text):
        return to_text()
    return str(value)


@dataclass
class SuiteContext:
    """Settings, the suite's random stream and an optional cap on cases per property"""
    config: "Settings"
    rng: DeterministicRNG
    cases: Optional[int] = None
    tallies: list = field(default_factory=list)

    def count(self, default: int) -> int:
        return default if self.cases is None else max(1, min(default, self.cases))

    def stream(self, label: str) -> DeterministicRNG:
        return self.rng.spawn(label)

    def tally(self, name: str) -> PropertyTally:
        t = PropertyTally(name)
        self.tallies.append(t)
        return t
