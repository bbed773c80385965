import logging
from argparse import ArgumentParser
from typing import List, NamedTuple, Tuple

from pydantic import BaseModel

from dcjperm.config.limits import get_max_regions
from dcjperm.exceptions import ParseError, TooLarge
from dcjperm.models.request import CliConfig, OutputFormat
from dcjperm.services.genome_io import format_genome_text, read_genome_file
from dcjperm.services.genome_service import Genome, check_same_size, decode, encode

logger = logging.getLogger(__name__)


class CommandOutput(NamedTuple):
    report: BaseModel
    human: str


def common_options() -> ArgumentParser:
    """Options shared by every command."""
    parent = ArgumentParser(add_help=False)
    parent.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.HUMAN.value,
        help="human-readable text or the structured key=value document",
    )
    parent.add_argument(
        "--allow-large",
        action="store_true",
        help="lift the guards on exhaustive computations and input size",
    )
    return parent


def check_regions(n: int, config: CliConfig) -> None:
    limit = get_max_regions()
    if n > limit and not config.flag("allow_large", False):
        raise TooLarge(f"{n} regions exceeds the input cap of {limit}; use --allow-large")


def parse_count(text: str, what: str = "number of regions") -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}") from None
    if value < 0:
        raise ParseError(f"{what} must be non-negative, got {value}")
    return value


def read_genome(path: str, config: CliConfig) -> Genome:
    spec = read_genome_file(path)
    check_regions(spec.n_regions, config)
    return encode(spec)


def read_pair(config: CliConfig) -> Tuple[Genome, Genome]:
    first, second = (read_genome(path, config) for path in config.inputs)
    check_same_size(first, second)
    logger.debug(f"✅ Loaded two genomes on {first.n} regions")
    return first, second


def genome_lines(genome: Genome) -> List[str]:
    return format_genome_text(decode(genome)).splitlines()


def text(lines: List[str]) -> str:
    return "\n".join(lines) + "\n"
