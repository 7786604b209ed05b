"""
Worked scenarios with asserted outcomes
"""

from .Demos import DEMOS, run_demo
