import asyncio
import logging
import threading
from functools import partial
from typing import Callable, List, Optional, Tuple

from dcjperm.config.limits import get_bfs_max_n, get_oracle_timeout
from dcjperm.exceptions import OracleDisagreement
from dcjperm.models.request import CliConfig
from dcjperm.models.response import DistanceReport, OracleReport, OracleStatus
from dcjperm.routes.common import CommandOutput, read_pair, text
from dcjperm.services.dcj_service import distance, optimal_scenario, scenario_report
from dcjperm.services.genome_service import Genome
from dcjperm.services.oracle_service import adjacency_distance, bfs_distance

logger = logging.getLogger(__name__)

Oracle = Callable[[Genome, Genome], int]


async def _in_daemon_thread(name: str, oracle: Oracle, g1: Genome, g2: Genome) -> int:
    """
    Runs an oracle on a daemon thread. A timed-out oracle keeps its thread,
    but neither the event loop shutdown nor the interpreter exit waits for it.
    """
    loop = asyncio.get_running_loop()
    future = loop.create_future()

    def settle(value: Optional[int], error: Optional[BaseException]) -> None:
        if future.done():
            return
        if error is not None:
            future.set_exception(error)
        else:
            future.set_result(value)

    def work() -> None:
        value, error = None, None
        try:
            value = oracle(g1, g2)
        except Exception as e:
            error = e
        try:
            loop.call_soon_threadsafe(settle, value, error)
        except RuntimeError:
            # loop closed once the command gave up on this oracle
            logger.debug(f"🔍 {name} oracle finished after its command returned")

    threading.Thread(target=work, name=f"oracle-{name}", daemon=True).start()
    return await future


async def _bounded(name: str, oracle: Oracle, g1: Genome, g2: Genome, timeout: float) -> Tuple[Optional[int], OracleStatus]:
    try:
        value = await asyncio.wait_for(_in_daemon_thread(name, oracle, g1, g2), timeout=timeout)
        return value, OracleStatus.OK
    except asyncio.TimeoutError:
        logger.warning(f"⏰ {name} oracle timed out after {timeout}s")
        return None, OracleStatus.TIMEOUT


async def run_oracles(g1: Genome, g2: Genome, closed_form: int, allow_large: bool = False) -> OracleReport:
    """
    Runs the adjacency-graph oracle and, when n is within the BFS guard (or
    --allow-large is set), the BFS oracle concurrently, each with a timeout.
    """
    timeout = get_oracle_timeout()
    with_bfs = allow_large or g1.n <= get_bfs_max_n()
    tasks = [_bounded("adjacency", adjacency_distance, g1, g2, timeout)]
    if with_bfs:
        tasks.append(_bounded("bfs", partial(bfs_distance, allow_large=True), g1, g2, timeout))
    else:
        logger.info(f"🔍 Skipping BFS oracle on {g1.n} regions")
    results = await asyncio.gather(*tasks)

    adjacency, adjacency_status = results[0]
    bfs, bfs_status = results[1] if with_bfs else (None, OracleStatus.SKIPPED)
    return OracleReport(
        closed_form=closed_form,
        bfs=bfs,
        bfs_status=bfs_status,
        adjacency=adjacency,
        adjacency_status=adjacency_status,
    )


def _oracle_lines(oracle: OracleReport) -> List[str]:
    lines = []
    for name, value, status in (
        ("bfs", oracle.bfs, oracle.bfs_status),
        ("adjacency", oracle.adjacency, oracle.adjacency_status),
    ):
        lines.append(f"{name} {value if value is not None else status.value}")
    return lines


def format_distance(report: DistanceReport) -> str:
    lines = [f"total {report.total}", f"lt {report.lt}", f"nc {report.nc}"]
    lines.append(f"components {len(report.components)} non-trivial, {report.trivial_components} trivial")
    for component in report.components:
        points = ",".join(str(point) for point in component.points)
        lines.append(f"  {component.id} {component.kind.value} distance={component.distance} points={points}")
    if report.oracle is not None:
        lines.extend(_oracle_lines(report.oracle))
    return text(lines)


def cmd_distance(config: CliConfig) -> CommandOutput:
    """Closed-form distance with its breakdown; --oracle cross-checks it."""
    g1, g2 = read_pair(config)
    report = distance(g1, g2)
    if config.flag("oracle", False):
        oracle = asyncio.run(run_oracles(g1, g2, report.total, config.flag("allow_large", False)))
        report = report.copy(update={"oracle": oracle})
        if not oracle.agrees:
            raise OracleDisagreement(
                f"closed form {oracle.closed_form}, bfs {oracle.bfs}, adjacency graph {oracle.adjacency}"
            )
        logger.info("✅ Oracles agree with the closed form")
    return CommandOutput(report, format_distance(report))


def cmd_sort(config: CliConfig) -> CommandOutput:
    """Prints an optimal scenario, one step per line."""
    g1, g2 = read_pair(config)
    report = scenario_report(optimal_scenario(g1, g2))
    lines = [f"{report.length} steps"]
    lines += [f"D({step.i},{step.j}) mode={step.mode.value} -> {step.genome}" for step in report.steps]
    return CommandOutput(report, text(lines))


def register(subparsers, common) -> None:
    distance_parser = subparsers.add_parser("distance", parents=[common], help="DCJ distance of two genome files")
    distance_parser.add_argument("inputs", nargs=2, metavar="GENOME")
    distance_parser.add_argument(
        "--oracle", action="store_true", help="also run the BFS and adjacency-graph oracles; exit 3 on disagreement"
    )
    distance_parser.set_defaults(handler=cmd_distance)

    sort_parser = subparsers.add_parser("sort", parents=[common], help="an optimal sorting scenario")
    sort_parser.add_argument("inputs", nargs=2, metavar="GENOME")
    sort_parser.set_defaults(handler=cmd_sort)
