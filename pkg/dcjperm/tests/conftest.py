"""
Shared fixtures: the genome pairs used across the suite and a clean guard
configuration for every test.
"""

import pytest

from dcjperm.services.genome_service import Genome, validate
from dcjperm.services.perm_service import parse_cycles

GUARD_VARIABLES = [
    "DCJPERM_BFS_MAX_N",
    "DCJPERM_ENUM_MAX_N",
    "DCJPERM_SCENARIO_MAX_D",
    "DCJPERM_MAX_REGIONS",
    "DCJPERM_ORACLE_TIMEOUT",
]


def genome(cycles: str, n: int) -> Genome:
    return validate(parse_cycles(cycles, 2 * n))


@pytest.fixture(autouse=True)
def default_guards(monkeypatch):
    """Every test starts from the built-in guard defaults."""
    for name in GUARD_VARIABLES:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def two_component_pair():
    """Components {1..6} (conjugate) and {7,8} (two telomeres of the second genome); distance 3."""
    return genome("(1,6)(2,3)(4,5)(7,8)", 4), genome("(1,2)(3,4)(5,6)", 4)


@pytest.fixture
def three_cycle_pair():
    """One fixed-point-free component sorted by the cycle (1,3,5); distance 2."""
    return genome("(1,2)(3,4)(5,6)", 3), genome("(1,6)(2,3)(4,5)", 3)


@pytest.fixture
def figure_genome_text():
    return "L 1 3 2 4\nC 5 6\n"
