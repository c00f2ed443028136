"""Tests for application configuration."""

import pytest
from pydantic import ValidationError

from nilbal.config import NilbalConfig


class TestNilbalConfig:
    def test_loads_without_any_environment(self):
        config = NilbalConfig(_env_file=None)
        assert config.output_format == "text"

    def test_defaults_are_sensible(self):
        config = NilbalConfig(_env_file=None)

        # Limits
        assert config.max_cosets == 10**6
        assert config.bar_size_limit == 48
        assert config.integral_bar_limit == 24

        # Primes
        assert config.primes == [2, 3, 5]

        # Sweeps
        assert config.h1_bound == 64
        assert config.cycboth_bound == 32
        assert config.aut_enum_limit == 64

        # Execution / logging
        assert config.jobs == 1
        assert config.log_level == "WARNING"
        assert config.log_file is None

    def test_overrides_defaults_from_env(self, monkeypatch):
        monkeypatch.setenv("NILBAL_MAX_COSETS", "5000")
        monkeypatch.setenv("NILBAL_JOBS", "4")
        monkeypatch.setenv("NILBAL_OUTPUT_FORMAT", "json")

        config = NilbalConfig(_env_file=None)

        assert config.max_cosets == 5000
        assert config.jobs == 4
        assert config.output_format == "json"

    def test_primes_from_env_are_sorted_and_deduplicated(self, monkeypatch):
        monkeypatch.setenv("NILBAL_PRIMES", "[7, 2, 7]")
        config = NilbalConfig(_env_file=None)
        assert config.primes == [2, 7]

    def test_composite_prime_is_rejected(self):
        with pytest.raises(ValidationError, match="not prime"):
            NilbalConfig(_env_file=None, primes=[2, 4])

    def test_non_positive_limits_are_rejected(self):
        with pytest.raises(ValidationError):
            NilbalConfig(_env_file=None, max_cosets=0)
        with pytest.raises(ValidationError):
            NilbalConfig(_env_file=None, jobs=0)

    def test_unknown_output_format_is_rejected(self):
        with pytest.raises(ValidationError):
            NilbalConfig(_env_file=None, output_format="yaml")

    def test_reads_env_file(self, tmp_path):
        env = tmp_path / ".env"
        env.write_text("NILBAL_BAR_SIZE_LIMIT=20\nUNRELATED=1\n")
        config = NilbalConfig(_env_file=str(env))
        assert config.bar_size_limit == 20
