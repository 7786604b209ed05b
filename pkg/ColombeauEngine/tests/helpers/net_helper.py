"""
Helper class to build settings, sets and supported functions for testing
"""

from typing import Optional, Sequence

import mpmath

from ColombeauEngine.config import Settings
from ColombeauEngine.core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint
from ColombeauEngine.gsf.Gsf import CompactlySupportedGsf, Counterexample, Gsf
from ColombeauEngine.gsf.Support import verify_compact_support
from ColombeauEngine.sets.FunctionallyCompact import FunctionallyCompactSet, interval
from ColombeauEngine.sets.InternalSets import AllOfRtilde


class NetHelper:
    """Helper class to build common test objects"""

    @staticmethod
    def config(**overrides) -> Settings:
        """Default settings with a few fields replaced"""
        return Settings().with_overrides(**overrides)

    @staticmethod
    def small_config() -> Settings:
        """Shorter grid and optimizer budget for tests that only need exact arithmetic or sets"""
        return Settings().with_overrides(k_max=28)

    @staticmethod
    def negligible(config: Optional[Settings] = None) -> GeneralizedNumber:
        """[exp(-1/eps)]"""
        return GeneralizedNumber.from_generator(lambda eps: mpmath.exp(-1 / eps), label="exp(-1/eps)",
                                                config=config)

    @staticmethod
    def point(*values) -> GeneralizedPoint:
        return GeneralizedPoint.of(*values)

    @staticmethod
    def unit_interval(config: Optional[Settings] = None) -> FunctionallyCompactSet:
        """[-1, 1]"""
        return interval(-1, 1, config)

    @staticmethod
    def gsf(text: str, n: int = 1) -> Gsf:
        return Gsf.of([text], n, AllOfRtilde(n))

    @staticmethod
    def supported(text: str, K: Optional[FunctionallyCompactSet] = None,
                  config: Optional[Settings] = None) -> CompactlySupportedGsf:
        """Verified element of GD_K; fails the test if verification finds a counterexample"""
        K = K or interval(-1, 1, config)
        result = verify_compact_support(NetHelper.gsf(text, K.dimension), K, config=config)
        assert not isinstance(result, Counterexample), f"{text} not supported in {K.describe()}"
        return result

    @staticmethod
    def supported_family(texts: Sequence[str], K: Optional[FunctionallyCompactSet] = None,
                         config: Optional[Settings] = None) -> list:
        return [NetHelper.supported(t, K, config) for t in texts]
