import logging
import random
import re

from dcjperm.config.limits import get_max_regions
from dcjperm.exceptions import ParseError, TooLarge
from dcjperm.models.request import CliConfig
from dcjperm.models.response import EncodeReport, GenomeCountReport, GenomeListReport, GenomeTextReport
from dcjperm.routes.common import CommandOutput, check_regions, genome_lines, parse_count, text
from dcjperm.services.genome_io import format_genome_text, read_genome_file
from dcjperm.services.genome_service import count_genomes, decode, encode, enumerate_genomes, random_genome, validate
from dcjperm.services.perm_service import parse_cycles

logger = logging.getLogger(__name__)


def cmd_encode(config: CliConfig) -> CommandOutput:
    """Prints n and the genomic permutation of a genome file."""
    spec = read_genome_file(config.inputs[0])
    check_regions(spec.n_regions, config)
    genome = encode(spec)
    report = EncodeReport(n=genome.n, permutation=str(genome))
    return CommandOutput(report, f"n={report.n} {report.permutation}\n")


def _degree_for(cycles: str, regions: int) -> int:
    if regions:
        return 2 * regions
    points = [int(number) for number in re.findall(r"\d+", cycles)]
    if not points:
        raise ParseError("cannot infer the number of regions from the identity; pass --regions")
    largest = max(points)
    return largest + largest % 2


def cmd_decode(config: CliConfig) -> CommandOutput:
    """Prints the genome text format of a permutation given in cycle notation."""
    cycles = config.inputs[0]
    degree = _degree_for(cycles, config.flag("regions", 0))
    check_regions(degree // 2, config)
    genome = validate(parse_cycles(cycles, degree))
    spec = decode(genome)
    lines = format_genome_text(spec).splitlines()
    report = GenomeTextReport(n=genome.n, permutation=str(genome), chromosomes=lines)
    return CommandOutput(report, text(lines))


def cmd_enumerate(config: CliConfig) -> CommandOutput:
    """Counts or lists every genome on n regions."""
    n = parse_count(config.inputs[0])
    allow_large = config.flag("allow_large", False)
    if config.flag("count_only", False):
        limit = get_max_regions()
        if n > limit and not allow_large:
            raise TooLarge(f"counting genomes on {n} regions exceeds the input cap of {limit}; use --allow-large")
        count = count_genomes(n)
        logger.info(f"📊 {count} genomes on {n} regions")
        return CommandOutput(GenomeCountReport(n=n, count=count), f"{count}\n")

    genomes = [str(genome) for genome in enumerate_genomes(n, allow_large=allow_large)]
    return CommandOutput(GenomeListReport(n=n, genomes=genomes), text(genomes))


def cmd_random(config: CliConfig) -> CommandOutput:
    """Samples a genome uniformly; the seed is printed so the draw can be repeated."""
    n = parse_count(config.inputs[0])
    check_regions(n, config)
    seed = config.flag("seed")
    if seed is None:
        seed = random.SystemRandom().randrange(2**32)
        logger.info(f"🎲 No --seed given, drew seed {seed}")
    genome = random_genome(n, seed)
    lines = genome_lines(genome)
    report = GenomeTextReport(n=n, permutation=str(genome), chromosomes=lines, seed=seed)
    return CommandOutput(report, text(lines + [f"# {genome}", f"# seed={seed}"]))


def register(subparsers, common) -> None:
    encode_parser = subparsers.add_parser("encode", parents=[common], help="genome file to permutation")
    encode_parser.add_argument("inputs", nargs=1, metavar="GENOME")
    encode_parser.set_defaults(handler=cmd_encode)

    decode_parser = subparsers.add_parser("decode", parents=[common], help="permutation to genome file format")
    decode_parser.add_argument("inputs", nargs=1, metavar="CYCLES")
    decode_parser.add_argument("--regions", type=int, help="number of regions n (default: inferred)")
    decode_parser.set_defaults(handler=cmd_decode)

    enumerate_parser = subparsers.add_parser("enumerate", parents=[common], help="list or count all genomes on n regions")
    enumerate_parser.add_argument("inputs", nargs=1, metavar="N")
    enumerate_parser.add_argument("--count-only", action="store_true", help="print only the number of genomes")
    enumerate_parser.set_defaults(handler=cmd_enumerate)

    random_parser = subparsers.add_parser("random", parents=[common], help="uniformly random genome on n regions")
    random_parser.add_argument("inputs", nargs=1, metavar="N")
    random_parser.add_argument("--seed", type=int, help="seed for a reproducible draw")
    random_parser.set_defaults(handler=cmd_random)
