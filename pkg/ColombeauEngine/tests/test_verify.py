"""
Tests for the property suites and their tallies
"""

import pytest

from ColombeauEngine.core.Errors import PreconditionError
from ColombeauEngine.verify import SUITE_NAMES, PropertyTally, SkipCase, run_suite
from ColombeauEngine.tests.helpers.net_helper import NetHelper


class TestPropertyTally:
    """Tests for counting cases, failures and skips"""

    def test_first_counterexample_kept(self):
        """Test only the first failing case is recorded"""
        tally = PropertyTally("demo.property")
        tally.check(True, x=1)
        tally.check(False, x=2)
        tally.check(False, x=3)
        assert tally.cases == 3
        assert tally.failures == 2
        assert not tally.passed
        assert tally.counterexample == {"x": 2}

    def test_skip_and_errors(self):
        """Test SkipCase skips a case and a library error fails it"""
        tally = PropertyTally("demo.property")

        def body(i):
            if i == 0:
                raise SkipCase("vacuous")
            if i == 1:
                raise PreconditionError("bad input")
            tally.check(True, i=i)

        tally.run(3, body)
        assert tally.skipped == 1
        assert tally.failures == 1
        assert "PreconditionError" in tally.counterexample["error"]
        payload = tally.to_payload()
        assert payload.cases == 2
        assert not payload.passed

    def test_counterexample_text(self):
        """Test numbers in a counterexample are rendered as text"""
        tally = PropertyTally("demo.property")
        tally.check(False, x=NetHelper.point(0, 1))
        assert tally.counterexample == {"x": "(0, 1)"}


class TestSuites:
    """Tests for running named suites"""

    def test_names(self):
        """Test the registry lists every suite and 'all'"""
        assert SUITE_NAMES[-1] == "all"
        assert {"ring", "ultrametric", "order", "sets", "support", "norms", "topology", "metric"} <= set(SUITE_NAMES)

    def test_ring_suite(self):
        """Test the ring laws hold on exact numbers"""
        report = run_suite("ring", seed=3, config=NetHelper.small_config(), cases=10)
        assert report.passed
        assert report.suite == "ring"
        assert report.seed == 3
        names = [p.name for p in report.properties]
        assert "ring.distributivity" in names
        assert "ring.idempotent_partition_of_unity" in names

    def test_ultrametric_suite(self):
        """Test the strong triangle inequality on exact numbers"""
        report = run_suite("ultrametric", config=NetHelper.small_config(), cases=25)
        assert report.passed
        assert report.seed == NetHelper.small_config().seed
        assert report.properties[0].cases == 25

    def test_same_seed_same_report(self):
        """Test a suite is reproducible from its seed"""
        config = NetHelper.small_config()
        first = run_suite("ultrametric", seed=11, config=config, cases=5)
        second = run_suite("ultrametric", seed=11, config=config, cases=5)
        assert first.model_dump() == second.model_dump()

    def test_unknown_suite(self):
        """Test an unknown suite name is refused"""
        with pytest.raises(PreconditionError):
            run_suite("nonsense")
