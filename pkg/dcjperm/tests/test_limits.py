"""
Tests for the guard configuration read from the environment
"""

import logging

import pytest

from dcjperm.config.limits import (
    BFS_MAX_N,
    ORACLE_TIMEOUT_SECONDS,
    get_bfs_max_n,
    get_enum_max_n,
    get_log_level,
    get_max_regions,
    get_oracle_timeout,
    get_scenario_max_d,
)


class TestLimits:
    """Defaults and environment overrides"""

    def test_defaults(self):
        assert (get_bfs_max_n(), get_enum_max_n(), get_scenario_max_d()) == (5, 6, 5)
        assert get_max_regions() == 1_000_000
        assert get_oracle_timeout() == ORACLE_TIMEOUT_SECONDS

    @pytest.mark.parametrize(
        "variable,getter,value",
        [
            ("DCJPERM_BFS_MAX_N", get_bfs_max_n, 3),
            ("DCJPERM_ENUM_MAX_N", get_enum_max_n, 8),
            ("DCJPERM_SCENARIO_MAX_D", get_scenario_max_d, 2),
            ("DCJPERM_MAX_REGIONS", get_max_regions, 40),
        ],
    )
    def test_override(self, monkeypatch, variable, getter, value):
        monkeypatch.setenv(variable, str(value))
        assert getter() == value

    def test_invalid_value_falls_back(self, monkeypatch, caplog):
        monkeypatch.setenv("DCJPERM_BFS_MAX_N", "lots")
        with caplog.at_level(logging.WARNING):
            assert get_bfs_max_n() == BFS_MAX_N
        assert "DCJPERM_BFS_MAX_N" in caplog.text

    def test_timeout(self, monkeypatch):
        monkeypatch.setenv("DCJPERM_ORACLE_TIMEOUT", "2.5")
        assert get_oracle_timeout() == 2.5
        monkeypatch.setenv("DCJPERM_ORACLE_TIMEOUT", "soon")
        assert get_oracle_timeout() == ORACLE_TIMEOUT_SECONDS

    def test_log_level(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "debug")
        assert get_log_level() == "DEBUG"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
