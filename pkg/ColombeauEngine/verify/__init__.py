"""
Property suites over numbers, sets, supports, norms, topology and metrics
"""

from .Properties import PropertyTally, SkipCase, SuiteContext
from .Runner import SUITE_NAMES, SUITES, run_suite
