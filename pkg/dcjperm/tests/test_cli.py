"""
End-to-end tests for the dcjperm command line: outputs, structured documents
and exit codes.
"""

import logging
import time
from argparse import Namespace
from pathlib import Path

import pytest
from pydantic import ValidationError

from dcjperm.main import run
from dcjperm.models.request import CliConfig, Command, OutputFormat
from dcjperm.models.response import DistanceReport, EncodeReport, ErrorReport, OracleStatus
from dcjperm.models.structured import HEADER, load_model
from dcjperm.routes.distance import run_oracles
from dcjperm.services.dcj_service import count_scenarios, distance
from dcjperm.services.genome_io import parse_genome_text
from dcjperm.services.genome_service import encode, random_genome


@pytest.fixture
def write_genome(tmp_path):
    """Writes genome text to a file and returns its path as a string."""

    def write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content)
        return str(path)

    return write


@pytest.fixture
def figure_file(write_genome, figure_genome_text):
    return write_genome("figure.genome", figure_genome_text)


@pytest.fixture
def two_component_files(write_genome):
    return write_genome("a.genome", "C 1 2 3\nC 4\n"), write_genome("b.genome", "L 4\nC 1\nC 2\nC 3\n")


@pytest.fixture
def three_cycle_files(write_genome):
    return write_genome("c.genome", "C 1\nC 2\nC 3\n"), write_genome("d.genome", "C 1 2 3\n")


def outcome(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCodecCommands:
    """encode, decode, enumerate and random"""

    def test_encode(self, capsys, figure_file):
        assert outcome(capsys, ["encode", figure_file])[:2] == (0, "n=6 (2,5)(3,6)(4,7)(9,12)(10,11)\n")

    def test_encode_single_gene(self, capsys, write_genome):
        code, out, _ = outcome(capsys, ["encode", write_genome("one.genome", "L 1\n")])
        assert (code, out) == (0, "n=1 ()\n")

    def test_encode_structured(self, capsys, figure_file):
        code, out, _ = outcome(capsys, ["encode", figure_file, "--format", "structured"])
        assert code == 0
        assert load_model(out, EncodeReport) == EncodeReport(n=6, permutation="(2,5)(3,6)(4,7)(9,12)(10,11)")

    def test_decode(self, capsys, figure_genome_text):
        code, out, _ = outcome(capsys, ["decode", "(2,5)(3,6)(4,7)(9,12)(10,11)"])
        assert (code, out) == (0, figure_genome_text)

    def test_decode_identity_needs_regions(self, capsys):
        assert outcome(capsys, ["decode", "()"])[0] == 2
        assert outcome(capsys, ["decode", "()", "--regions", "2"])[:2] == (0, "L 1\nL 2\n")

    def test_decode_rejects_non_involution(self, capsys):
        assert outcome(capsys, ["decode", "(1,2,3)"])[0] == 2

    def test_enumerate(self, capsys):
        assert outcome(capsys, ["enumerate", "1"])[:2] == (0, "()\n(1,2)\n")
        code, out, _ = outcome(capsys, ["enumerate", "3"])
        assert code == 0
        assert len(out.splitlines()) == 76

    @pytest.mark.parametrize("n,count", [("1", "2"), ("4", "764"), ("9", "997313824")])
    def test_enumerate_count_only(self, capsys, n, count):
        assert outcome(capsys, ["enumerate", n, "--count-only"])[:2] == (0, f"{count}\n")

    def test_enumerate_guard(self, capsys):
        assert outcome(capsys, ["enumerate", "7"])[0] == 5

    def test_enumerate_rejects_non_number(self, capsys):
        assert outcome(capsys, ["enumerate", "many"])[0] == 2

    def test_random_is_reproducible(self, capsys):
        first = outcome(capsys, ["random", "5", "--seed", "7"])
        second = outcome(capsys, ["random", "5", "--seed", "7"])
        assert first == second
        lines = first[1].splitlines()
        assert lines[-1] == "# seed=7"
        genome = random_genome(5, 7)
        assert lines[-2] == f"# {genome}"
        assert encode(parse_genome_text("\n".join(lines[:-2]))) == genome

    def test_random_prints_drawn_seed(self, capsys):
        code, out, _ = outcome(capsys, ["random", "4"])
        assert code == 0
        assert out.splitlines()[-1].startswith("# seed=")


class TestDistanceCommands:
    """distance and sort"""

    def test_distance(self, capsys, two_component_files):
        code, out, _ = outcome(capsys, ["distance", *two_component_files])
        assert code == 0
        assert out == (
            "total 3\n"
            "lt 5\n"
            "nc 1\n"
            "components 2 non-trivial, 0 trivial\n"
            "  1 conjugate distance=2 points=1,2,3,4,5,6\n"
            "  2 non_conjugate distance=1 points=7,8\n"
        )

    def test_distance_with_oracles(self, capsys, two_component_files):
        code, out, _ = outcome(capsys, ["distance", *two_component_files, "--oracle"])
        assert code == 0
        assert out.endswith("bfs 3\nadjacency 3\n")

    def test_distance_structured(self, capsys, two_component_files):
        code, out, _ = outcome(capsys, ["distance", *two_component_files, "--format", "structured"])
        assert code == 0
        assert out.startswith(HEADER)
        g1, g2 = (encode(parse_genome_text(Path(path).read_text())) for path in two_component_files)
        assert load_model(out, DistanceReport) == distance(g1, g2)

    def test_oracle_disagreement(self, capsys, monkeypatch, two_component_files):
        monkeypatch.setattr("dcjperm.routes.distance.adjacency_distance", lambda g1, g2: 99)
        code, _, err = outcome(capsys, ["distance", *two_component_files, "--oracle"])
        assert code == 3
        assert "adjacency graph 99" in err

    def test_size_mismatch(self, capsys, figure_file, two_component_files):
        assert outcome(capsys, ["distance", figure_file, two_component_files[0]])[0] == 4

    def test_region_cap(self, capsys, monkeypatch, figure_file):
        monkeypatch.setenv("DCJPERM_MAX_REGIONS", "3")
        assert outcome(capsys, ["distance", figure_file, figure_file])[0] == 5
        assert outcome(capsys, ["distance", figure_file, figure_file, "--allow-large"])[0] == 0

    def test_sort(self, capsys, three_cycle_files):
        code, out, _ = outcome(capsys, ["sort", *three_cycle_files])
        assert code == 0
        assert out == (
            "2 steps\n"
            "D(1,3) mode=conjugate -> (1,4)(2,3)(5,6)\n"
            "D(1,5) mode=conjugate -> (1,6)(2,3)(4,5)\n"
        )

    def test_sort_identical(self, capsys, figure_file):
        assert outcome(capsys, ["sort", figure_file, figure_file])[:2] == (0, "0 steps\n")


class TestScenarioCommands:
    """scenarios in count and list mode"""

    def test_closed_form(self, capsys, three_cycle_files):
        assert outcome(capsys, ["scenarios", *three_cycle_files])[:2] == (0, "3 (closed form)\n")
        assert outcome(capsys, ["scenarios", *three_cycle_files, "--count-only"])[:2] == (0, "3 (closed form)\n")

    def test_identical(self, capsys, figure_file):
        assert outcome(capsys, ["scenarios", figure_file, figure_file])[:2] == (0, "1\n")

    def test_exhaustive(self, capsys, two_component_files, two_component_pair):
        code, out, _ = outcome(capsys, ["scenarios", *two_component_files])
        assert code == 0
        assert out == f"{count_scenarios(*two_component_pair)} (exhaustive)\n"

    def test_exhaustive_guard(self, capsys, monkeypatch, two_component_files):
        monkeypatch.setenv("DCJPERM_SCENARIO_MAX_D", "1")
        assert outcome(capsys, ["scenarios", *two_component_files])[0] == 5

    def test_enumerate(self, capsys, three_cycle_files):
        code, out, _ = outcome(capsys, ["scenarios", *three_cycle_files, "--enumerate"])
        lines = out.splitlines()
        assert code == 0
        assert len(lines) == 4
        assert lines[-1] == "3 scenarios"
        assert all(line.startswith("D(") for line in lines[:3])

    def test_enumerate_with_limit(self, capsys, three_cycle_files):
        code, out, _ = outcome(capsys, ["scenarios", *three_cycle_files, "--enumerate", "--limit", "2"])
        assert code == 0
        assert out.splitlines()[-1] == "2 scenarios (truncated)"

    def test_enumerate_identical(self, capsys, figure_file):
        assert outcome(capsys, ["scenarios", figure_file, figure_file, "--enumerate"])[:2] == (
            0,
            "(empty)\n1 scenarios\n",
        )

    def test_modes_are_exclusive(self, capsys, three_cycle_files):
        assert outcome(capsys, ["scenarios", *three_cycle_files, "--count-only", "--enumerate"])[0] == 2

    def test_limit_must_be_positive(self, capsys, three_cycle_files):
        assert outcome(capsys, ["scenarios", *three_cycle_files, "--enumerate", "--limit", "0"])[0] == 2


class TestOracleCommands:
    """oracle-distance and ag-stats"""

    def test_oracle_distance(self, capsys, two_component_files):
        assert outcome(capsys, ["oracle-distance", *two_component_files])[:2] == (
            0,
            "bfs 3\nadjacency 3\nclosed_form 3\n",
        )

    def test_oracle_distance_disagreement(self, capsys, monkeypatch, two_component_files):
        monkeypatch.setattr("dcjperm.routes.oracle.adjacency_distance", lambda g1, g2: 0)
        assert outcome(capsys, ["oracle-distance", *two_component_files])[0] == 3

    def test_oracle_distance_guard(self, capsys, figure_file):
        assert outcome(capsys, ["oracle-distance", figure_file, figure_file])[0] == 5

    def test_ag_stats(self, capsys, two_component_files):
        assert outcome(capsys, ["ag-stats", *two_component_files])[:2] == (
            0,
            "cycles 1\nodd_paths 0\neven_paths 1\ndistance 3\n",
        )

    def test_ag_stats_dump(self, capsys, two_component_files):
        code, out, _ = outcome(capsys, ["ag-stats", *two_component_files, "--dump"])
        assert code == 0
        assert out.splitlines()[-1] == "path length=2: B{7} A{7,8} B{8}"


class TestErrors:
    """Exit codes and error documents"""

    def test_parse_error(self, capsys, write_genome):
        code, _, err = outcome(capsys, ["encode", write_genome("bad.genome", "L 1 1\n")])
        assert code == 2
        assert "error: " in err
        assert "line 1, column 5" in err

    def test_parse_error_structured(self, capsys, write_genome):
        path = write_genome("bad.genome", "L 1 1\n")
        code, _, err = outcome(capsys, ["encode", path, "--format", "structured"])
        assert code == 2
        report = load_model(err[err.index(HEADER):], ErrorReport)
        assert (report.exit_code, report.line, report.column) == (2, 1, 5)

    def test_missing_file(self, capsys, tmp_path):
        assert outcome(capsys, ["encode", str(tmp_path / "nope.genome")])[0] == 2

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["distance", "only-one"],
            ["sort", "only-one"],
            ["scenarios", "only-one"],
            ["oracle-distance", "only-one"],
            ["ag-stats"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, _, err = outcome(capsys, argv)
        assert code == 2
        assert "usage:" in err

    def test_missing_genome_names_the_argument(self, capsys):
        _, _, err = outcome(capsys, ["distance", "only-one"])
        assert "GENOME" in err

    def test_version(self, capsys):
        assert run(["--version"]) == 0

    def test_internal_error(self, capsys, monkeypatch, two_component_files):
        def broken(g1, g2):
            raise RuntimeError("boom")

        monkeypatch.setattr("dcjperm.routes.distance.distance", broken)
        code, _, err = outcome(capsys, ["distance", *two_component_files])
        assert code == 1
        assert "error: internal error" in err


class TestCliConfig:
    """Validation of parsed command lines"""

    def test_from_namespace(self):
        namespace = Namespace(command="scenarios", inputs=["a", "b"], format="structured", handler=print,
                              allow_large=False, count_only=True, enumerate=False, limit=None)
        config = CliConfig.from_namespace(namespace)
        assert config.command is Command.SCENARIOS
        assert config.output_format is OutputFormat.STRUCTURED
        assert config.structured
        assert "handler" not in config.flags
        assert config.flag("limit", 10) == 10
        assert config.flag("count_only") is True

    def test_input_count(self):
        with pytest.raises(ValidationError):
            CliConfig(command="distance", inputs=["a"])

    def test_blank_input(self):
        with pytest.raises(ValidationError):
            CliConfig(command="encode", inputs=["  "])

    def test_exclusive_modes(self):
        with pytest.raises(ValidationError):
            CliConfig(command="scenarios", inputs=["a", "b"], flags={"count_only": True, "enumerate": True})


class TestRunOracles:
    """Concurrent oracle runs with timeouts"""

    @pytest.mark.asyncio
    async def test_both_oracles_agree(self, two_component_pair):
        report = await run_oracles(*two_component_pair, closed_form=3)
        assert (report.bfs, report.adjacency) == (3, 3)
        assert report.bfs_status is OracleStatus.OK
        assert report.agrees

    @pytest.mark.asyncio
    async def test_timeout_is_not_a_disagreement(self, monkeypatch, two_component_pair):
        def slow_bfs(g1, g2, allow_large=False):
            time.sleep(0.5)
            return 0

        monkeypatch.setenv("DCJPERM_ORACLE_TIMEOUT", "0.05")
        monkeypatch.setattr("dcjperm.routes.distance.bfs_distance", slow_bfs)
        report = await run_oracles(*two_component_pair, closed_form=3)
        assert report.bfs is None
        assert report.bfs_status is OracleStatus.TIMEOUT
        assert report.adjacency == 3
        assert report.agrees

    def test_command_returns_within_the_timeout(self, capsys, caplog, monkeypatch, two_component_files):
        def stuck_bfs(g1, g2, allow_large=False):
            time.sleep(3)
            return 0

        monkeypatch.setenv("DCJPERM_ORACLE_TIMEOUT", "0.1")
        monkeypatch.setattr("dcjperm.routes.distance.bfs_distance", stuck_bfs)
        started = time.monotonic()
        with caplog.at_level(logging.WARNING):
            code, out, _ = outcome(capsys, ["distance", *two_component_files, "--oracle"])
        assert time.monotonic() - started < 1.5
        assert code == 0
        assert "bfs timeout" in out
        assert "adjacency 3" in out
        assert "bfs oracle timed out" in caplog.text

    @pytest.mark.asyncio
    async def test_oracle_errors_propagate(self, monkeypatch, two_component_pair):
        def failing_adjacency(g1, g2):
            raise RuntimeError("broken graph")

        monkeypatch.setattr("dcjperm.routes.distance.adjacency_distance", failing_adjacency)
        with pytest.raises(RuntimeError, match="broken graph"):
            await run_oracles(*two_component_pair, closed_form=3)

    @pytest.mark.asyncio
    async def test_bfs_skipped_above_guard(self):
        g = random_genome(8, 3)
        report = await run_oracles(g, g, closed_form=0)
        assert report.bfs_status is OracleStatus.SKIPPED
        assert report.adjacency == 0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
