import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from dcjperm import __version__
from dcjperm.config.limits import get_log_level
from dcjperm.exceptions import EXIT_INTERNAL, EXIT_OK, DcjPermError, ParseError
from dcjperm.models.request import CliConfig, OutputFormat
from dcjperm.models.response import ErrorReport
from dcjperm.models.structured import dump_structured

# Import routes
from dcjperm.routes.common import common_options
from dcjperm.routes.distance import register as register_distance
from dcjperm.routes.genomes import register as register_genomes
from dcjperm.routes.oracle import register as register_oracle
from dcjperm.routes.scenarios import register as register_scenarios

# Load environment variables from .env file
load_dotenv()

# Configure logging; stdout carries only command output
logging.basicConfig(
    level=get_log_level(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

ROUTERS = [register_genomes, register_distance, register_scenarios, register_oracle]


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcjperm",
        description="DCJ distance, sorting scenarios and genome spaces for genomes encoded as permutations",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = common_options()
    for register in ROUTERS:
        register(subparsers, common)
    return parser


# -------------------------
# Error handling
# -------------------------
def _handle_error(exc: DcjPermError, output_format: str) -> int:
    logger.error(f"❌ {type(exc).__name__}: {exc.detail}")
    if output_format == OutputFormat.STRUCTURED.value:
        report = ErrorReport(
            message=exc.detail,
            exit_code=exc.exit_code,
            line=getattr(exc, "line", None),
            column=getattr(exc, "column", None),
        )
        sys.stderr.write(dump_structured(report))
    else:
        sys.stderr.write(f"error: {exc.detail}\n")
    return exc.exit_code


def run(argv: Optional[List[str]] = None) -> int:
    """Runs one command and returns the process exit code."""
    parser = create_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help / --version
        return int(e.code or 0)
    output_format = getattr(namespace, "format", OutputFormat.HUMAN.value)

    try:
        config = CliConfig.from_namespace(namespace)
        output = namespace.handler(config)
    except ValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        return _handle_error(ParseError(f"invalid arguments: {messages}"), output_format)
    except DcjPermError as e:
        return _handle_error(e, output_format)
    except Exception as e:
        logger.exception(f"❌ Unexpected error: {str(e)}")
        sys.stderr.write("error: internal error\n")
        return EXIT_INTERNAL

    if config.structured:
        sys.stdout.write(dump_structured(output.report))
    else:
        sys.stdout.write(output.human)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
