import logging

from dcjperm.exceptions import OracleDisagreement
from dcjperm.models.request import CliConfig
from dcjperm.models.response import AdjacencyGraphReport, OracleReport, OracleStatus
from dcjperm.routes.common import CommandOutput, read_pair, text
from dcjperm.services.dcj_service import distance_total
from dcjperm.services.oracle_service import adjacency_distance, adjacency_graph, adjacency_graph_dump, bfs_distance

logger = logging.getLogger(__name__)


def cmd_oracle_distance(config: CliConfig) -> CommandOutput:
    """BFS and adjacency-graph distances, checked against each other and the closed form."""
    g1, g2 = read_pair(config)
    bfs = bfs_distance(g1, g2, allow_large=config.flag("allow_large", False))
    report = OracleReport(
        closed_form=distance_total(g1, g2),
        bfs=bfs,
        bfs_status=OracleStatus.OK,
        adjacency=adjacency_distance(g1, g2),
        adjacency_status=OracleStatus.OK,
    )
    if not report.agrees:
        logger.error(f"❌ Oracle disagreement on n={g1.n}")
        raise OracleDisagreement(
            f"bfs {report.bfs}, adjacency graph {report.adjacency}, closed form {report.closed_form}"
        )
    lines = [f"bfs {report.bfs}", f"adjacency {report.adjacency}", f"closed_form {report.closed_form}"]
    return CommandOutput(report, text(lines))


def cmd_ag_stats(config: CliConfig) -> CommandOutput:
    g1, g2 = read_pair(config)
    stats = adjacency_graph(g1, g2)
    dump = adjacency_graph_dump(g1, g2) if config.flag("dump", False) else []
    report = AdjacencyGraphReport(stats=stats, distance=stats.distance, dump=dump)
    lines = [
        f"cycles {stats.cycles}",
        f"odd_paths {stats.odd_paths}",
        f"even_paths {stats.even_paths}",
        f"distance {stats.distance}",
    ]
    return CommandOutput(report, text(lines + dump))


def register(subparsers, common) -> None:
    oracle_parser = subparsers.add_parser(
        "oracle-distance", parents=[common], help="distance by BFS and by the adjacency graph"
    )
    oracle_parser.add_argument("inputs", nargs=2, metavar="GENOME")
    oracle_parser.set_defaults(handler=cmd_oracle_distance)

    stats_parser = subparsers.add_parser("ag-stats", parents=[common], help="adjacency graph cycle and path counts")
    stats_parser.add_argument("inputs", nargs=2, metavar="GENOME")
    stats_parser.add_argument("--dump", action="store_true", help="list every component of the graph")
    stats_parser.set_defaults(handler=cmd_ag_stats)
