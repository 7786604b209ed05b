"""
Tests for DeterministicRNG class
"""

from fractions import Fraction

from ColombeauEngine.core.rng import DeterministicRNG


class TestDeterministicRNG:
    """Tests for DeterministicRNG class"""

    def test_create_rng_with_seed(self):
        """Test creating RNG with a seed"""
        rng = DeterministicRNG(42)
        assert rng.seed == 42

    def test_random_returns_float(self):
        """Test that random() returns a float between 0 and 1"""
        value = DeterministicRNG(123).random()
        assert isinstance(value, float)
        assert 0.0 <= value < 1.0

    def test_deterministic_random(self):
        """Test that same seed produces same sequence"""
        rng1, rng2 = DeterministicRNG(42), DeterministicRNG(42)
        assert [rng1.random() for _ in range(10)] == [rng2.random() for _ in range(10)]

    def test_randint_inclusive(self):
        """Test randint covers both ends of the range"""
        rng = DeterministicRNG(456)
        values = {rng.randint(1, 3) for _ in range(200)}
        assert values == {1, 2, 3}

    def test_choice(self):
        """Test choice selects from sequence"""
        seq = ["a", "b", "c"]
        assert DeterministicRNG(111).choice(seq) in seq

    def test_fraction_grid(self):
        """Test fraction returns quarters inside the range"""
        rng = DeterministicRNG(7)
        for _ in range(50):
            value = rng.fraction(-2, 3)
            assert isinstance(value, Fraction)
            assert -2 <= value <= 3
            assert (value * 4).denominator == 1

    def test_nonzero_fraction(self):
        """Test nonzero_fraction never returns 0"""
        rng = DeterministicRNG(8)
        assert all(rng.nonzero_fraction(-1, 1) != 0 for _ in range(100))

    def test_spawn_depends_on_label_only(self):
        """Test spawned streams are reproducible and independent of the parent's position"""
        parent = DeterministicRNG(7)
        first = parent.spawn("suite").random()
        _ = [parent.random() for _ in range(5)]
        assert parent.spawn("suite").random() == first
        assert DeterministicRNG(7).spawn("other").random() != first
