import logging

from dcjperm.exceptions import OutOfTheoremScope
from dcjperm.models.request import CliConfig
from dcjperm.models.response import CountMethod, ScenarioCountReport, ScenarioListReport
from dcjperm.routes.common import CommandOutput, read_pair, text
from dcjperm.services.dcj_service import (
    count_optimal_scenarios,
    count_scenarios,
    distance_total,
    enumerate_scenarios,
    scenario_report,
)

logger = logging.getLogger(__name__)

_METHOD_SUFFIX = {
    CountMethod.TRIVIAL: "",
    CountMethod.CLOSED_FORM: " (closed form)",
    CountMethod.EXHAUSTIVE: " (exhaustive)",
}


def _count(config: CliConfig) -> CommandOutput:
    g1, g2 = read_pair(config)
    d = distance_total(g1, g2)
    if d == 0:
        count, method = 1, CountMethod.TRIVIAL
    else:
        try:
            count, method = count_optimal_scenarios(g1, g2), CountMethod.CLOSED_FORM
        except OutOfTheoremScope as e:
            logger.info(f"⚠️ Closed form does not apply ({e.detail}), counting exhaustively")
            count = count_scenarios(g1, g2, allow_large=config.flag("allow_large", False))
            method = CountMethod.EXHAUSTIVE
    report = ScenarioCountReport(distance=d, count=count, method=method)
    return CommandOutput(report, f"{count}{_METHOD_SUFFIX[method]}\n")


def _enumerate(config: CliConfig) -> CommandOutput:
    g1, g2 = read_pair(config)
    stream = enumerate_scenarios(
        g1, g2, limit=config.flag("limit"), allow_large=config.flag("allow_large", False)
    )
    scenarios = [scenario_report(scenario) for scenario in stream]
    report = ScenarioListReport(distance=stream.distance, truncated=stream.truncated, scenarios=scenarios)

    lines = [" ".join(f"D({step.i},{step.j})" for step in scenario.steps) or "(empty)" for scenario in scenarios]
    summary = f"{len(scenarios)} scenarios"
    if stream.truncated:
        summary += " (truncated)"
    return CommandOutput(report, text(lines + [summary]))


def cmd_scenarios(config: CliConfig) -> CommandOutput:
    """Counts optimal scenarios (the default) or lists them with --enumerate."""
    if config.flag("enumerate", False):
        return _enumerate(config)
    return _count(config)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("scenarios", parents=[common], help="count or list optimal sorting scenarios")
    parser.add_argument("inputs", nargs=2, metavar="GENOME")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--count-only", action="store_true", help="print the number of optimal scenarios (default)")
    mode.add_argument("--enumerate", action="store_true", help="list the optimal scenarios")
    parser.add_argument("--limit", type=int, help="stop listing after this many scenarios")
    parser.set_defaults(handler=cmd_scenarios)
