"""
Genome File Format

One chromosome per line: `L` (linear) or `C` (circular) followed by signed,
non-zero gene ids separated by whitespace. Blank lines and lines starting with
`#` are ignored. Gene ids over the whole file must be exactly 1..n, each once;
n is inferred from the file.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Tuple, Union

from dcjperm.exceptions import ParseError
from dcjperm.models.genome import ChromosomeShape, GenomeSpec
from dcjperm.services.genome_service import make_spec

logger = logging.getLogger(__name__)

SHAPE_LETTERS = {"L": ChromosomeShape.LINEAR, "C": ChromosomeShape.CIRCULAR}
TOKEN = re.compile(r"\S+")


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based starting column."""
    return [(match.group(), match.start() + 1) for match in TOKEN.finditer(line)]


def parse_genome_text(text: str) -> GenomeSpec:
    chromosomes: List[Tuple[ChromosomeShape, List[int]]] = []
    first_seen: Dict[int, Tuple[int, int]] = {}

    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = _tokens(line)
        letter, column = tokens[0]
        shape = SHAPE_LETTERS.get(letter)
        if shape is None:
            raise ParseError(f"chromosome must start with L or C, found {letter!r}", line_number, column)
        if len(tokens) == 1:
            raise ParseError("chromosome has no genes", line_number, column)

        genes: List[int] = []
        for token, column in tokens[1:]:
            try:
                gene = int(token)
            except ValueError:
                raise ParseError(f"expected a signed gene id, found {token!r}", line_number, column) from None
            if gene == 0:
                raise ParseError("gene id 0 is not allowed", line_number, column)
            if abs(gene) in first_seen:
                seen_line, seen_column = first_seen[abs(gene)]
                raise ParseError(
                    f"gene {abs(gene)} already appears at line {seen_line}, column {seen_column}",
                    line_number,
                    column,
                )
            first_seen[abs(gene)] = (line_number, column)
            genes.append(gene)
        chromosomes.append((shape, genes))

    if not chromosomes:
        raise ParseError("no chromosomes found")
    n = len(first_seen)
    for gene, (line_number, column) in sorted(first_seen.items()):
        if gene > n:
            raise ParseError(f"gene ids must be exactly 1..{n}; gene {gene} is out of range", line_number, column)
    return make_spec(n, chromosomes)


def read_genome_file(path: Union[str, Path]) -> GenomeSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not valid UTF-8") from e
    try:
        spec = parse_genome_text(text)
    except ParseError as e:
        located = ParseError(f"{path}: {e.detail}")
        located.line, located.column = e.line, e.column
        raise located from e
    logger.debug(f"✅ Read {len(spec.chromosomes)} chromosomes on {spec.n_regions} regions from {path}")
    return spec


def format_genome_text(spec: GenomeSpec) -> str:
    lines = [
        " ".join([chromosome.shape.letter] + [str(gene) for gene in chromosome.genes])
        for chromosome in spec.chromosomes
    ]
    return "\n".join(lines) + "\n"
